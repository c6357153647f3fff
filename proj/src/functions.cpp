#include "opmean/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace opmean {

namespace {

double parse_number(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(context + ": expected a number, got '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw ConfigError(context + ": expected a number, got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ScalarFunction ScalarFunction::power(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("power: exponent must be >= 0");
  ScalarFunction f;
  f.kind_ = Kind::power;
  f.p_ = p;
  return f;
}

ScalarFunction ScalarFunction::scaled_power(double c, double p) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("scaled-power: coefficient must be > 0");
  ScalarFunction f = power(p);
  f.kind_ = Kind::scaled_power;
  f.c_ = c;
  return f;
}

ScalarFunction ScalarFunction::exp_minus_one() {
  ScalarFunction f;
  f.kind_ = Kind::exp_minus_one;
  return f;
}

ScalarFunction ScalarFunction::custom(std::string name, std::function<double(double)> fn) {
  ScalarFunction f;
  f.kind_ = Kind::custom;
  f.custom_name_ = std::move(name);
  f.custom_ = std::move(fn);
  return f;
}

ScalarFunction ScalarFunction::parse(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& head = parts.front();
  if (head == "identity" && parts.size() == 1) return identity();
  if (head == "exp-minus-one" && parts.size() == 1) return exp_minus_one();
  if (head == "power" && parts.size() == 2) return power(parse_number(parts[1], "power"));
  if (head == "scaled-power" && parts.size() == 3)
    return scaled_power(parse_number(parts[1], "scaled-power"),
                        parse_number(parts[2], "scaled-power"));
  throw ConfigError("unknown scalar function '" + text +
                    "' (expected identity, power:p, scaled-power:c:p or exp-minus-one)");
}

double ScalarFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::identity:
      return t;
    case Kind::power:
      return p_ == 0.0 ? 1.0 : std::pow(t, p_);
    case Kind::scaled_power:
      return c_ * (p_ == 0.0 ? 1.0 : std::pow(t, p_));
    case Kind::exp_minus_one:
      return std::expm1(t);
    case Kind::custom:
      return custom_(t);
  }
  return t;
}

std::string ScalarFunction::name() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::power:
      return "power:" + format_number(p_);
    case Kind::scaled_power:
      return "scaled-power:" + format_number(c_) + ":" + format_number(p_);
    case Kind::exp_minus_one:
      return "exp-minus-one";
    case Kind::custom:
      return "custom:" + custom_name_;
  }
  return {};
}

bool ScalarFunction::operator_monotone() const noexcept {
  switch (kind_) {
    case Kind::identity:
      return true;
    case Kind::power:
    case Kind::scaled_power:
      return p_ >= 0.0 && p_ <= 1.0;
    case Kind::exp_minus_one:
    case Kind::custom:
      return false;
  }
  return false;
}

SymMatrix apply_scalar(const SymMatrix& a, const ScalarFunction& f) {
  return apply_scalar_pow(a, f, 1.0);
}

SymMatrix apply_scalar_pow(const SymMatrix& a, const ScalarFunction& f, double p) {
  const EigenDecomposition e = eig_sym(a);
  const double slack = -1e-13 * (1.0 + std::max(std::abs(e.min()), std::abs(e.max())));
  if (e.min() < slack) {
    std::ostringstream os;
    os << "apply_scalar: eigenvalue " << e.min() << " is outside [0, inf) for " << f.name();
    throw DomainError(os.str());
  }
  return reconstruct(e, [&](double t) {
    const double v = f(std::max(t, 0.0));
    return p == 1.0 ? v : std::pow(v, p);
  });
}

bool sampled_monotone_increasing(const std::function<double(double)>& fn, double a, double b,
                                 int samples) {
  double prev = fn(a);
  if (!(prev >= 0.0)) return false;
  for (int k = 1; k <= samples; ++k) {
    const double t = a + (b - a) * k / samples;
    const double v = fn(t);
    if (!(v >= 0.0) || v < prev - 1e-12 * (1.0 + std::abs(prev))) return false;
    prev = v;
  }
  return true;
}

MonotoneProbe probe_operator_monotone(const std::function<double(double)>& fn, int trials,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MonotoneProbe probe;
  for (int k = 0; k < trials; ++k) {
    const double lo = std::pow(10.0, log_scale(rng));
    const double hi = lo * (1.0 + 10.0 * unit(rng));
    const SpectralBand band{lo, hi};
    const SymMatrix a = random_spd(2, band, true, rng);
    // B = A + rank-one PSD, so A <= B exactly up to round-off.
    std::normal_distribution<double> normal(0.0, 1.0);
    const double x0 = normal(rng), x1 = normal(rng);
    const double w = hi * unit(rng);
    SymMatrix b = a;
    b.set(0, 0, a(0, 0) + w * x0 * x0);
    b.set(0, 1, a(0, 1) + w * x0 * x1);
    b.set(1, 1, a(1, 1) + w * x1 * x1);
    const SymMatrix fa = apply_scalar(a, fn);
    const SymMatrix fb = apply_scalar(b, fn);
    const OrderVerdict v = loewner_leq(fa, fb);
    if (v.gap_min_eig < probe.worst_margin) {
      probe.worst_margin = v.gap_min_eig;
      if (!v.holds) {
        probe.passed = false;
        probe.witness = std::make_pair(a, b);
      }
    }
  }
  return probe;
}

}  // namespace opmean
