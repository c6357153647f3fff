#include "opmean/kubo_ando.hpp"

#include <cmath>
#include <sstream>

namespace opmean {

namespace {

void require_weight(double w, const char* family) {
  if (!(w > 0.0 && w < 1.0))
    throw ConfigError(std::string(family) + ": weight must lie in (0, 1)");
}

std::string with_weight(const char* base, double w) {
  std::ostringstream os;
  os.precision(17);
  os << base << ':' << w;
  return os.str();
}

}  // namespace

RepresentingFunction RepresentingFunction::arithmetic() {
  RepresentingFunction h;
  h.kind_ = Kind::arithmetic;
  return h;
}

RepresentingFunction RepresentingFunction::weighted_arithmetic(double w) {
  require_weight(w, "weighted arithmetic mean");
  RepresentingFunction h;
  h.kind_ = Kind::weighted_arithmetic;
  h.w_ = w;
  return h;
}

RepresentingFunction RepresentingFunction::geometric() { return {}; }

RepresentingFunction RepresentingFunction::weighted_geometric(double eps) {
  require_weight(eps, "weighted geometric mean");
  RepresentingFunction h;
  h.kind_ = Kind::weighted_geometric;
  h.w_ = eps;
  return h;
}

RepresentingFunction RepresentingFunction::harmonic() {
  RepresentingFunction h;
  h.kind_ = Kind::harmonic;
  return h;
}

RepresentingFunction RepresentingFunction::weighted_harmonic(double w) {
  require_weight(w, "weighted harmonic mean");
  RepresentingFunction h;
  h.kind_ = Kind::weighted_harmonic;
  h.w_ = w;
  return h;
}

RepresentingFunction RepresentingFunction::custom(std::string name,
                                                  std::function<double(double)> fn) {
  RepresentingFunction h;
  h.kind_ = Kind::custom;
  h.custom_name_ = std::move(name);
  h.custom_ = std::move(fn);
  return h;
}

double RepresentingFunction::operator()(double t) const {
  if (!(t > 0.0)) {
    std::ostringstream os;
    os << "representing function evaluated at t = " << t << " (requires t > 0)";
    throw ConfigError(os.str());
  }
  switch (kind_) {
    case Kind::arithmetic:
      return 0.5 * (1.0 + t);
    case Kind::weighted_arithmetic:
      return (1.0 - w_) + w_ * t;
    case Kind::geometric:
      return std::sqrt(t);
    case Kind::weighted_geometric:
      return std::pow(t, w_);
    case Kind::harmonic:
      return 2.0 * t / (1.0 + t);
    case Kind::weighted_harmonic:
      return t / ((1.0 - w_) * t + w_);
    case Kind::custom:
      return custom_(t);
  }
  return t;
}

std::string RepresentingFunction::name() const {
  switch (kind_) {
    case Kind::arithmetic:
      return "arithmetic";
    case Kind::weighted_arithmetic:
      return with_weight("arithmetic", w_);
    case Kind::geometric:
      return "geometric";
    case Kind::weighted_geometric:
      return with_weight("geometric", w_);
    case Kind::harmonic:
      return "harmonic";
    case Kind::weighted_harmonic:
      return with_weight("harmonic", w_);
    case Kind::custom:
      return "custom:" + custom_name_;
  }
  return {};
}

MeanDescriptor make_mean(RepresentingFunction h) {
  std::string name = h.name();
  return MeanDescriptor{std::move(name), std::move(h)};
}

MeanDescriptor parse_mean(const std::string& text) {
  const auto colon = text.find(':');
  const std::string base = text.substr(0, colon);
  bool weighted = false;
  double w = 0.5;
  if (colon != std::string::npos) {
    const std::string tail = text.substr(colon + 1);
    std::size_t used = 0;
    try {
      w = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != tail.size()) throw ConfigError("mean '" + text + "': weight is not a number");
    // Weight 1/2 is the unweighted mean; keep names canonical.
    weighted = w != 0.5;
  }
  if (base == "arithmetic")
    return make_mean(weighted ? RepresentingFunction::weighted_arithmetic(w)
                              : RepresentingFunction::arithmetic());
  if (base == "geometric")
    return make_mean(weighted ? RepresentingFunction::weighted_geometric(w)
                              : RepresentingFunction::geometric());
  if (base == "harmonic")
    return make_mean(weighted ? RepresentingFunction::weighted_harmonic(w)
                              : RepresentingFunction::harmonic());
  throw ConfigError("unknown mean '" + text + "' (expected arithmetic, geometric or harmonic[:w])");
}

std::vector<MeanDescriptor> mean_catalog() {
  return {make_mean(RepresentingFunction::arithmetic()),
          make_mean(RepresentingFunction::geometric()),
          make_mean(RepresentingFunction::harmonic())};
}

double representing_value(const MeanDescriptor& sigma, double t) { return sigma.h(t); }

SymMatrix mean(const MeanDescriptor& sigma, const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("mean: dimension mismatch");
  const EigenDecomposition ea = eig_sym(a);
  if (ea.min() <= kInverseFloor) {
    std::ostringstream os;
    os << "mean: first argument is not positive definite (lambda_min = " << ea.min() << ")";
    throw DomainError(os.str());
  }
  const SymMatrix root = reconstruct(ea, [](double t) { return std::sqrt(t); });
  const SymMatrix inv_root = reconstruct(ea, [](double t) { return 1.0 / std::sqrt(t); });
  const SymMatrix inner = congruence(b, inv_root);
  const EigenDecomposition ei = eig_sym(inner);
  if (ei.min() <= kInverseFloor) {
    std::ostringstream os;
    os << "mean: second argument is not positive definite (lambda_min of A^{-1/2}BA^{-1/2} = "
       << ei.min() << ")";
    throw DomainError(os.str());
  }
  const SymMatrix h_inner = reconstruct(ei, [&](double t) { return sigma.h(t); });
  return congruence(h_inner, root);
}

SymMatrix geometric_mean(const SymMatrix& a, const SymMatrix& b) {
  static const MeanDescriptor g = make_mean(RepresentingFunction::geometric());
  return mean(g, a, b);
}

SymMatrix arithmetic_mean(const SymMatrix& a, const SymMatrix& b) { return 0.5 * (a + b); }

RepresentingReport validate_representing(const RepresentingFunction& h, int probe_trials,
                                         std::uint64_t seed) {
  RepresentingReport report;
  std::ostringstream msg;

  const double h1 = h(1.0);
  report.unit_ok = std::abs(h1 - 1.0) <= 1e-12;
  if (!report.unit_ok) msg << "h(1) = " << h1 << " != 1; ";

  report.positive_ok = true;
  constexpr int kGrid = 1201;
  for (int k = 0; k < kGrid; ++k) {
    const double t = std::pow(10.0, -6.0 + 12.0 * k / (kGrid - 1));
    const double v = h(t);
    if (!(v > 0.0) || !std::isfinite(v)) {
      report.positive_ok = false;
      msg << "h(" << t << ") = " << v << " is not positive; ";
      break;
    }
  }

  const MonotoneProbe probe =
      probe_operator_monotone([&](double t) { return h(std::max(t, 1e-300)); }, probe_trials, seed);
  report.monotone_probe_ok = probe.passed;
  report.worst_margin = probe.worst_margin;
  report.witness = probe.witness;
  if (!probe.passed) msg << "operator monotonicity probe failed (worst margin " << probe.worst_margin << ")";

  report.message = msg.str();
  return report;
}

bool is_between_harmonic_arithmetic(const RepresentingFunction& h) {
  constexpr int kGrid = 1000;
  for (int k = 0; k < kGrid; ++k) {
    const double t = std::pow(10.0, -4.0 + 8.0 * k / (kGrid - 1));
    const double v = h(t);
    const double lower = 2.0 * t / (1.0 + t);
    const double upper = 0.5 * (1.0 + t);
    const double tol = 1e-12 * (1.0 + upper);
    if (v < lower - tol || v > upper + tol) return false;
  }
  return true;
}

bool is_symmetric(const RepresentingFunction& h) {
  constexpr int kGrid = 1000;
  for (int k = 0; k < kGrid; ++k) {
    const double t = std::pow(10.0, -4.0 + 8.0 * k / (kGrid - 1));
    const double v = h(t);
    if (std::abs(v - t * h(1.0 / t)) > 1e-12 * (1.0 + v)) return false;
  }
  return true;
}

SymMatrix alm_mean(std::span<const SymMatrix> as, const AlmOptions& options) {
  const std::size_t n = as.size();
  if (n == 0) throw ConfigError("alm_mean: empty list");
  for (const auto& a : as)
    if (a.dim() != as.front().dim()) throw DimensionError("alm_mean: dimension mismatch");
  if (n == 1) {
    if (min_eig(as[0]) <= 0.0) throw NotPositiveDefinite("alm_mean: input is not positive definite");
    return as[0];
  }
  if (n == 2) return geometric_mean(as[0], as[1]);

  std::vector<SymMatrix> current(as.begin(), as.end());
  std::vector<SymMatrix> others;
  others.reserve(n - 1);
  double residual = 0.0;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    std::vector<SymMatrix> next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      others.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) others.push_back(current[j]);
      next.push_back(alm_mean(others, options));
    }
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      residual = std::max(residual, distance(next[i], current[i]) / (1.0 + current[i].frobenius()));
    current = std::move(next);
    if (residual <= options.tol) {
      SymMatrix avg = current[0];
      for (std::size_t i = 1; i < n; ++i) avg += current[i];
      return avg *= 1.0 / static_cast<double>(n);
    }
  }
  std::ostringstream os;
  os << "alm_mean: no convergence after " << options.max_iter << " iterations (residual "
     << residual << ")";
  throw ConvergenceError(os.str(), residual);
}

}  // namespace opmean
