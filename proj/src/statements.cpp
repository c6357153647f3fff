#include "opmean/statements.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace opmean {

namespace {

constexpr std::array<StatementInfo, 22> kCatalog{{
    {"ando", "Phi(A sigma B)", "Phi(A) sigma Phi(B)", Arity::pair, true, false},
    {"ps-1.1", "Phi(A) # Phi(B)", "(M+m)/(2 sqrt(Mm)) Phi(A # B)", Arity::pair, true, false},
    {"t22-a", "f(Phi(A) sigma Phi(B))", "f(M) g(1/m) g(Psi(A) tau Psi(B))", Arity::pair, true, true},
    {"t22-b", "f(Phi(A) sigma Phi(B))", "f(M) g(1/m) g(Psi(A tau B))", Arity::pair, true, true},
    {"t22-c", "f(Phi(A sigma B))", "f(M) g(1/m) g(Psi(A) tau Psi(B))", Arity::pair, true, true},
    {"t22-d", "f(Phi(A sigma B))", "f(M) g(1/m) g(Psi(A tau B))", Arity::pair, true, true},
    {"c23-a", "f^p(Phi(A) sigma Phi(B))", "f^p(M) g^p(1/m) g^p(Psi(A) tau Psi(B))", Arity::pair, true, true},
    {"c23-b", "f^p(Phi(A) sigma Phi(B))", "f^p(M) g^p(1/m) g^p(Psi(A tau B))", Arity::pair, true, true},
    {"c23-c", "f^p(Phi(A sigma B))", "f^p(M) g^p(1/m) g^p(Psi(A) tau Psi(B))", Arity::pair, true, true},
    {"c23-d", "f^p(Phi(A sigma B))", "f^p(M) g^p(1/m) g^p(Psi(A tau B))", Arity::pair, true, true},
    {"c-multi", "f(Phi((1/n) sum A_i))", "f(M) g(1/m) g(G(Psi(A_1), ..., Psi(A_n)))", Arity::multi, true, true},
    {"ragm", "(1/n) sum A_i", "(M/m) G(A_1, ..., A_n)", Arity::multi, true, false},
    {"yamazaki", "(1/n) sum A_i", "K(M,m)^((n-1)/2) G(A_1, ..., A_n)", Arity::multi, true, false},
    {"c27", "(Phi(A) # Phi(B))^p", "M^p m^-q (Psi(A # B))^q", Arity::pair, true, true},
    {"mond2", "Phi(A) sigma Phi(B)", "alpha Phi(A sigma B)", Arity::pair, true, true},
    {"mp-gamma", "f(Phi(A) sigma Phi(B))", "gamma g(Phi(A sigma B))", Arity::pair, true, true},
    {"hoa", "Phi(A) nabla Phi(B)", "K(M,m) Phi(A sigma B)", Arity::pair, true, true},
    {"t210", "f(Phi(A)) tau f(Phi(B))", "K(M,m) f(Phi(A sigma B))", Arity::pair, true, true},
    {"q2", "A^p nabla B^p", "K(M,m) (A # B)^p", Arity::pair, true, false},
    {"Q", "(A nabla B)^2", "K(M,m) (A # B)^2", Arity::pair, false, false},
    {"aahh", "f(A sigma B)", "f(A nabla B)", Arity::pair, true, false},
    {"add-reverse", "f(A nabla B)", "f(A # B + (1/2) A^(1/2) |I - A^(-1/2) B A^(-1/2)| A^(1/2))", Arity::pair, true, false},
}};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool uses_f(std::string_view id) {
  return starts_with(id, "t22") || starts_with(id, "c23") || id == "c-multi" || id == "mp-gamma" ||
         id == "t210" || id == "aahh" || id == "add-reverse";
}

bool uses_g(std::string_view id) {
  return starts_with(id, "t22") || starts_with(id, "c23") || id == "c-multi" || id == "mp-gamma";
}

bool uses_psi(std::string_view id) {
  return starts_with(id, "t22") || starts_with(id, "c23") || id == "c-multi" || id == "c27";
}

bool uses_phi(std::string_view id) {
  return !(id == "ragm" || id == "yamazaki" || id == "q2" || id == "Q" || id == "aahh" ||
           id == "add-reverse");
}

bool sampled_increasing(const ScalarFunction& fn, const SpectralBand& band) {
  if (fn.kind() != ScalarFunction::Kind::custom) return true;
  const double hi = std::max(band.M, 1.0 / band.m);
  return sampled_monotone_increasing([&](double t) { return fn(t); }, 0.0, hi);
}

struct Sides {
  SymMatrix lhs;
  SymMatrix rhs;
  double coefficient = 1.0;
  std::optional<MPConstants> mp;
};

SymMatrix average(std::span<const SymMatrix> as) {
  SymMatrix s = as.front();
  for (std::size_t i = 1; i < as.size(); ++i) s += as[i];
  return s *= 1.0 / static_cast<double>(as.size());
}

Sides build_sides(const StatementConfig& cfg, std::span<const SymMatrix> x) {
  const std::string_view id = cfg.statement_id;
  const SpectralBand& band = cfg.band;
  const auto& phi = cfg.phi;
  const auto& psi = cfg.psi;
  static const MeanDescriptor kGeometric = make_mean(RepresentingFunction::geometric());
  Sides s;

  if (id == "ando") {
    s.lhs = phi.apply(mean(cfg.sigma, x[0], x[1]));
    s.rhs = mean(cfg.sigma, phi.apply(x[0]), phi.apply(x[1]));
  } else if (id == "ps-1.1") {
    s.coefficient = polya_szego_coeff(band);
    s.lhs = geometric_mean(phi.apply(x[0]), phi.apply(x[1]));
    s.rhs = s.coefficient * phi.apply(geometric_mean(x[0], x[1]));
  } else if (starts_with(id, "t22") || starts_with(id, "c23")) {
    const char variant = id.back();
    const SymMatrix c = (variant == 'a' || variant == 'b')
                            ? mean(cfg.sigma, phi.apply(x[0]), phi.apply(x[1]))
                            : phi.apply(mean(cfg.sigma, x[0], x[1]));
    const SymMatrix d = (variant == 'a' || variant == 'c')
                            ? mean(cfg.tau, psi.apply(x[0]), psi.apply(x[1]))
                            : psi.apply(mean(cfg.tau, x[0], x[1]));
    const double p = starts_with(id, "c23") ? cfg.p : 1.0;
    s.coefficient = std::pow(cfg.f(band.M) * cfg.g(1.0 / band.m), p);
    s.lhs = apply_scalar_pow(c, cfg.f, p);
    s.rhs = s.coefficient * apply_scalar_pow(d, cfg.g, p);
  } else if (id == "c-multi") {
    std::vector<SymMatrix> mapped;
    for (const auto& a : x) mapped.push_back(psi.apply(a));
    s.coefficient = cfg.f(band.M) * cfg.g(1.0 / band.m);
    s.lhs = apply_scalar(phi.apply(average(x)), cfg.f);
    s.rhs = s.coefficient * apply_scalar(alm_mean(mapped, cfg.alm), cfg.g);
  } else if (id == "ragm" || id == "yamazaki") {
    s.coefficient = id == "ragm" ? band.M / band.m
                                 : yamazaki_coeff(band, static_cast<int>(x.size()));
    s.lhs = average(x);
    s.rhs = s.coefficient * alm_mean(x, cfg.alm);
  } else if (id == "c27") {
    s.coefficient = std::pow(band.M, cfg.p) * std::pow(band.m, -cfg.q);
    s.lhs = power(geometric_mean(phi.apply(x[0]), phi.apply(x[1])), cfg.p);
    s.rhs = s.coefficient * power(psi.apply(geometric_mean(x[0], x[1])), cfg.q);
  } else if (id == "mond2") {
    MPConstants k;
    k.band = band;
    k.alpha = mp_alpha(cfg.sigma.h, band);
    const Secant chord = secant_coeffs([&](double t) { return cfg.sigma.h(t); },
                                       band.m / band.M, band.M / band.m);
    k.mu_h = chord.slope;
    k.nu_h = chord.intercept;
    s.coefficient = k.alpha;
    s.mp = k;
    s.lhs = mean(cfg.sigma, phi.apply(x[0]), phi.apply(x[1]));
    s.rhs = k.alpha * phi.apply(mean(cfg.sigma, x[0], x[1]));
  } else if (id == "mp-gamma") {
    const MPConstants k = mp_gamma(cfg.f, cfg.g, cfg.sigma.h, band);
    s.coefficient = k.gamma;
    s.mp = k;
    s.lhs = apply_scalar(mean(cfg.sigma, phi.apply(x[0]), phi.apply(x[1])), cfg.f);
    s.rhs = k.gamma * apply_scalar(phi.apply(mean(cfg.sigma, x[0], x[1])), cfg.g);
  } else if (id == "hoa") {
    s.coefficient = kantorovich(band);
    s.lhs = arithmetic_mean(phi.apply(x[0]), phi.apply(x[1]));
    s.rhs = s.coefficient * phi.apply(mean(cfg.sigma, x[0], x[1]));
  } else if (id == "t210") {
    s.coefficient = kantorovich(band);
    s.lhs = mean(cfg.tau, apply_scalar(phi.apply(x[0]), cfg.f), apply_scalar(phi.apply(x[1]), cfg.f));
    s.rhs = s.coefficient * apply_scalar(phi.apply(mean(cfg.sigma, x[0], x[1])), cfg.f);
  } else if (id == "q2") {
    s.coefficient = kantorovich(band);
    s.lhs = arithmetic_mean(power(x[0], cfg.p), power(x[1], cfg.p));
    s.rhs = s.coefficient * power(geometric_mean(x[0], x[1]), cfg.p);
  } else if (id == "Q") {
    s.coefficient = kantorovich(band);
    s.lhs = square(arithmetic_mean(x[0], x[1]));
    s.rhs = s.coefficient * square(geometric_mean(x[0], x[1]));
  } else if (id == "aahh") {
    s.lhs = apply_scalar(mean(cfg.sigma, x[0], x[1]), cfg.f);
    s.rhs = apply_scalar(arithmetic_mean(x[0], x[1]), cfg.f);
  } else if (id == "add-reverse") {
    const SymMatrix root = sqrtm(x[0]);
    const SymMatrix inv_root = inv_sqrtm(x[0]);
    const SymMatrix deviation =
        absm(SymMatrix::identity(x[0].dim()) - congruence(x[1], inv_root));
    const SymMatrix upper = mean(kGeometric, x[0], x[1]) + 0.5 * congruence(deviation, root);
    s.lhs = apply_scalar(arithmetic_mean(x[0], x[1]), cfg.f);
    s.rhs = apply_scalar(upper, cfg.f);
  } else {
    throw ConfigError("no builder for statement '" + std::string(id) + "'");
  }
  return s;
}

void require_dims(const StatementConfig& cfg) {
  const std::string_view id = cfg.statement_id;
  if (uses_phi(id) && cfg.phi.input_dim() != cfg.dim)
    throw ConfigError("Phi input dimension does not match dim");
  if (uses_psi(id)) {
    if (cfg.psi.input_dim() != cfg.dim) throw ConfigError("Psi input dimension does not match dim");
    if (cfg.psi.output_dim() != cfg.phi.output_dim())
      throw ConfigError("Phi and Psi must have the same output dimension");
  }
}

}  // namespace

std::span<const StatementInfo> catalog() { return kCatalog; }

const StatementInfo& find_statement(std::string_view id) {
  if (id == "q2sq") id = "q2";
  for (const auto& info : kCatalog)
    if (info.id == id) return info;
  throw ConfigError("unknown statement id '" + std::string(id) + "'");
}

StatementConfig default_config(std::string_view id, std::size_t dim, SpectralBand band) {
  StatementConfig cfg;
  cfg.statement_id = std::string(find_statement(id).id);
  if (id == "q2sq") cfg.p = 2.0;
  cfg.dim = dim;
  cfg.band = SpectralBand::make(band.m, band.M);
  cfg.phi = MapDescriptor::identity(dim);
  cfg.psi = MapDescriptor::identity(dim);
  return cfg;
}

HypothesisReport check_hypotheses(const StatementConfig& cfg) {
  const StatementInfo& info = find_statement(cfg.statement_id);
  const std::string_view id = info.id;
  require_dims(cfg);
  HypothesisReport r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.failures.push_back(std::move(why));
  };

  if (info.requires_unital) {
    if (uses_phi(id) && !is_unital(cfg.phi)) fail("Phi is not unital");
    if (uses_psi(id) && !is_unital(cfg.psi)) fail("Psi is not unital");
    r.unitality_ok = r.ok;
  }
  if (uses_f(id) && !sampled_increasing(cfg.f, cfg.band))
    fail("f is not monotone increasing and non-negative");
  if (uses_g(id) && !sampled_increasing(cfg.g, cfg.band))
    fail("g is not monotone increasing and non-negative");

  if (starts_with(id, "c23") && !(cfg.p > 0.0)) fail("exponent p must be > 0");
  if (id == "c27" && !(cfg.p >= 0.0 && cfg.q >= 0.0)) fail("exponents p, q must be >= 0");
  if (id == "c-multi" && !cfg.g.operator_monotone()) fail("g is not operator monotone");
  if (id == "mp-gamma") {
    if (!(cfg.g(cfg.band.m) > 0.0)) fail("g vanishes on [m, M]");
    if (!check_concave([&](double t) { return cfg.g(t); }, cfg.band.m, cfg.band.M).concave)
      fail("g is not concave on [m, M]");
  }
  if (id == "hoa" && !is_between_harmonic_arithmetic(cfg.sigma.h))
    fail("sigma is not between the harmonic and arithmetic means");
  if (id == "t210") {
    if (!cfg.f.operator_monotone()) fail("f is not operator monotone");
    if (!(cfg.f(1.0) > 0.0)) fail("f is zero");
    if (!is_between_harmonic_arithmetic(cfg.sigma.h))
      fail("sigma is not between the harmonic and arithmetic means");
    if (!is_between_harmonic_arithmetic(cfg.tau.h))
      fail("tau is not between the harmonic and arithmetic means");
  }
  if (id == "q2" && !(cfg.p >= 0.0 && cfg.p <= 1.0)) fail("exponent p must lie in [0, 1]");
  if ((id == "aahh" || id == "add-reverse") && !cfg.f.operator_monotone())
    fail("f is not operator monotone");
  if (id == "aahh" && !is_symmetric(cfg.sigma.h)) fail("sigma is not a symmetric mean");
  return r;
}

double band_tolerance(const SpectralBand& band) { return 1e-10 * (1.0 + band.M); }

Verdict check(const StatementConfig& cfg, std::span<const SymMatrix> matrices,
              std::optional<double> tol) {
  const StatementInfo& info = find_statement(cfg.statement_id);
  const std::size_t expected = info.arity == Arity::pair ? 2 : 0;
  if (expected && matrices.size() != expected)
    throw ConfigError("statement '" + std::string(info.id) + "' takes exactly 2 matrices");
  if (!expected && matrices.size() < 2)
    throw ConfigError("statement '" + std::string(info.id) + "' takes at least 2 matrices");
  for (const auto& a : matrices)
    if (a.dim() != cfg.dim) throw DimensionError("input matrix dimension does not match dim");

  Verdict v;
  v.hypotheses = check_hypotheses(cfg);
  if (!v.hypotheses.unitality_ok && !cfg.allow_broken_hypotheses) {
    std::string msg = "'" + std::string(info.id) + "' requires unital maps:";
    for (const auto& why : v.hypotheses.failures) msg += " " + why + ";";
    throw HypothesisError(msg);
  }

  if (!cfg.skip_band_check) {
    const BandReport band = validate_band(matrices, cfg.band, band_tolerance(cfg.band));
    if (!band.pass) {
      std::ostringstream os;
      os << "inputs leave the band [" << cfg.band.m << ", " << cfg.band.M << "]:";
      for (const auto& e : band.entries)
        if (!e.pass) os << " matrix " << e.index << " has spectrum [" << e.lambda_min << ", "
                        << e.lambda_max << "];";
      throw BandViolation(os.str());
    }
  }

  Sides sides = build_sides(cfg, matrices);
  const OrderVerdict order = loewner_leq(sides.lhs, sides.rhs, tol);
  v.holds = order.holds;
  v.gap_min_eig = order.gap_min_eig;
  v.gap_det = order.gap_det;
  v.tol = order.tol_used;
  v.lhs = std::move(sides.lhs);
  v.rhs = std::move(sides.rhs);
  v.coefficient = sides.coefficient;
  v.mp = sides.mp;
  return v;
}

Rng trial_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

std::vector<SymMatrix> draw_instance(const StatementConfig& cfg, Rng& rng) {
  const StatementInfo& info = find_statement(cfg.statement_id);
  const std::size_t count =
      info.arity == Arity::pair ? 2 : static_cast<std::size_t>(std::max(2, cfg.n_matrices));
  std::bernoulli_distribution pin(0.5);
  std::vector<SymMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_spd(cfg.dim, cfg.band, pin(rng), rng));
  return out;
}

TrialReport run_trials(const StatementConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                       const TrialOptions& options) {
  if (trials < 1) throw ConfigError("run_trials: need at least one trial");
  TrialReport report;
  report.statement_id = std::string(find_statement(cfg.statement_id).id);
  report.trials = trials;
  report.seed = seed;
  report.hypotheses = check_hypotheses(cfg);

  StatementConfig eval = cfg;
  eval.allow_broken_hypotheses = true;

  struct Outcome {
    double gap_min_eig = 0.0;
    double gap_det = 0.0;
    bool holds = true;
    std::vector<SymMatrix> matrices;
  };
  std::vector<Outcome> outcomes(trials);
  detail::parallel_for(trials, options.threads, [&](std::uint64_t i) {
    Rng rng = trial_stream(seed, i);
    std::vector<SymMatrix> x = draw_instance(eval, rng);
    const Verdict v = check(eval, x);
    Outcome& o = outcomes[i];
    o.gap_min_eig = v.gap_min_eig;
    o.gap_det = v.gap_det;
    o.holds = v.holds;
    if (!v.holds) o.matrices = std::move(x);
  });

  report.worst_margin = outcomes.front().gap_min_eig;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Outcome& o = outcomes[i];
    report.worst_margin = std::min(report.worst_margin, o.gap_min_eig);
    if (!report.hypotheses.ok) {
      ++report.rejected;
      if (!o.holds) ++report.rejected_violations;
      continue;
    }
    if (o.holds) continue;
    ++report.violations;
    if (report.witnesses.size() < options.max_witnesses)
      report.witnesses.push_back({i, o.gap_min_eig, o.gap_det, o.matrices});
  }
  return report;
}

}  // namespace opmean
