#include "opmean/reference.hpp"

#include <algorithm>
#include <cmath>

#include "opmean/constants.hpp"
#include "opmean/statements.hpp"

namespace opmean::reference {

CounterexamplePair squared_means_pair() {
  return {"Q",
          SymMatrix{{0.0688, -0.1082}, {-0.1082, 0.1998}},
          SymMatrix{{0.7489, 0.1237}, {0.1237, 0.4212}},
          SpectralBand{1.0, 2.0},
          -0.0014,
          2e-3};
}

CounterexamplePair power_means_pair() {
  return {"q2",
          SymMatrix{{1.3096, 0.4414}, {0.4414, 0.6204}},
          SymMatrix{{0.7062, 1.1641}, {1.1641, 2.1050}},
          SpectralBand{0.4, 3.0},
          -0.4111,
          5e-3};
}

bool Reproduction::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReproductionRow& r) { return r.pass; });
}

namespace {

ReproductionRow determinant_row(const CounterexamplePair& pair, double p, const std::string& label) {
  StatementConfig cfg = default_config(pair.statement_id, 2, pair.band);
  cfg.p = p;
  cfg.skip_band_check = true;
  cfg.allow_broken_hypotheses = true;
  const SymMatrix inputs[] = {pair.first, pair.second};
  const Verdict v = check(cfg, inputs);
  ReproductionRow row;
  row.label = label;
  row.computed = v.gap_det;
  row.expected = pair.printed_det;
  row.tolerance = pair.det_tolerance;
  row.pass = v.gap_det < 0.0 && std::abs(v.gap_det - pair.printed_det) <= pair.det_tolerance && !v.holds;
  row.note = v.holds ? "inequality holds (unexpected)" : "inequality fails";
  return row;
}

}  // namespace

Reproduction reproduce() {
  Reproduction r;
  const CounterexamplePair xy = squared_means_pair();
  const CounterexamplePair ab = power_means_pair();

  r.rows.push_back(determinant_row(xy, 1.0, "det(K (X#Y)^2 - (X nabla Y)^2), K = 9/8"));
  r.rows.push_back(determinant_row(ab, 2.0, "det(K (A#B)^2 - A^2 nabla B^2), K = K(3, 0.4)"));

  const SpectralBand unit_two{1.0, 2.0};
  const double yam = yamazaki_coeff(unit_two, 5);
  r.rows.push_back({"K(2,1)", kantorovich(unit_two), 1.125, 0.0, kantorovich(unit_two) == 1.125, ""});
  r.rows.push_back({"K(2,1)^((5-1)/2)", yam, 1.265625, 1e-15, std::abs(yam - 1.265625) <= 1e-15, ""});
  r.rows.push_back({"K(2,1)^2 <= M/m = 2", yam, 2.0, 0.0, yam <= 2.0,
                    yam <= 2.0 ? "1.265625 <= 2" : "comparison fails"});
  const int crossover = yamazaki_crossover(unit_two);
  r.rows.push_back({"smallest n with K(2,1)^((n-1)/2) >= 2", static_cast<double>(crossover), 13.0,
                    0.0, crossover == 13, ""});

  const SymMatrix xy_inputs[] = {xy.first, xy.second};
  const SymMatrix ab_inputs[] = {ab.first, ab.second};
  r.bands.emplace_back("X, Y in [1, 2]", validate_band(xy_inputs, xy.band));
  r.bands.emplace_back("A, B in [0.4, 3]", validate_band(ab_inputs, ab.band));
  return r;
}

}  // namespace opmean::reference
