#include "opmean/search.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace opmean {

namespace {

struct Evaluation {
  bool evaluated = false;
  bool holds = true;
  double gap_min_eig = 0.0;
  double gap_det = 0.0;
  std::vector<SymMatrix> matrices;
};

}  // namespace

FalsifyReport run_falsifier(const StatementConfig& cfg, std::uint64_t budget, std::uint64_t seed,
                            const FalsifyOptions& options) {
  if (budget < 1) throw ConfigError("falsify: budget must be at least 1");
  FalsifyReport report;
  report.budget = budget;
  report.seed = seed;
  report.hypotheses = check_hypotheses(cfg);

  StatementConfig drawn = cfg;
  drawn.allow_broken_hypotheses = true;
  StatementConfig seeded = drawn;
  seeded.skip_band_check = true;

  std::vector<Evaluation> results(budget);
  detail::parallel_for(budget, options.threads, [&](std::uint64_t i) {
    Evaluation& e = results[i];
    const bool is_seeded = i < options.seeded.size();
    if (is_seeded) {
      e.matrices = options.seeded[i];
    } else {
      Rng rng = trial_stream(seed, i);
      e.matrices = draw_instance(drawn, rng);
    }
    const Verdict v = check(is_seeded ? seeded : drawn, e.matrices);
    e.evaluated = true;
    e.holds = v.holds;
    e.gap_min_eig = v.gap_min_eig;
    e.gap_det = v.gap_det;
    if (v.holds) e.matrices.clear();
  });

  std::optional<std::uint64_t> best;
  report.worst_margin = results.front().gap_min_eig;
  for (std::uint64_t i = 0; i < budget; ++i) {
    const Evaluation& e = results[i];
    report.worst_margin = std::min(report.worst_margin, e.gap_min_eig);
    if (e.holds) continue;
    ++report.violations;
    if (!best || e.gap_min_eig < results[*best].gap_min_eig) best = i;
  }
  if (best) {
    const bool is_seeded = *best < options.seeded.size();
    Witness w;
    w.matrices = results[*best].matrices;
    w.config = is_seeded ? seeded : drawn;
    w.gap_min_eig = results[*best].gap_min_eig;
    w.gap_det = results[*best].gap_det;
    w.seed = seed;
    w.trial_index = *best;
    w.seeded = is_seeded;
    w.hypothesis_violating = !report.hypotheses.ok;
    report.witness = std::move(w);
  }
  return report;
}

std::optional<Witness> falsify(const StatementConfig& cfg, std::uint64_t budget, std::uint64_t seed,
                               const FalsifyOptions& options) {
  return run_falsifier(cfg, budget, seed, options).witness;
}

Verdict recheck(const Witness& w) { return check(w.config, w.matrices); }

SymMatrix project_to_band(const SymMatrix& a, const SpectralBand& band) {
  return apply_scalar(a, [&](double t) { return std::clamp(t, band.m, band.M); });
}

Witness refine(const Witness& w, int steps, double radius, std::uint64_t seed) {
  Witness best = w;
  if (!(radius > 0.0) || steps <= 0) return best;
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, radius);
  const SpectralBand band = w.config.band;
  for (int step = 0; step < steps; ++step) {
    std::vector<SymMatrix> candidate;
    candidate.reserve(best.matrices.size());
    for (const SymMatrix& a : best.matrices) {
      SymMatrix c = a;
      for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = i; j < c.dim(); ++j) c.set(i, j, a(i, j) + noise(rng));
      candidate.push_back(project_to_band(c, band));
    }
    Verdict v;
    try {
      v = check(best.config, candidate);
    } catch (const Error&) {
      continue;
    }
    if (v.gap_min_eig < best.gap_min_eig && !v.holds) {
      best.matrices = std::move(candidate);
      best.gap_min_eig = v.gap_min_eig;
      best.gap_det = v.gap_det;
    }
  }
  return best;
}

}  // namespace opmean
