#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "opmean/symmat.hpp"

namespace opmean {

/// A scalar function f: [0, inf) -> [0, inf) used as f, g in the statements.
///
/// Text grammar: `identity`, `power:p`, `scaled-power:c:p`, `exp-minus-one`.
/// Custom functions carry only a display name and cannot be parsed back.
class ScalarFunction {
 public:
  enum class Kind { identity, power, scaled_power, exp_minus_one, custom };

  ScalarFunction() = default;  // identity

  static ScalarFunction identity() { return {}; }
  static ScalarFunction power(double p);
  static ScalarFunction scaled_power(double c, double p);
  static ScalarFunction exp_minus_one();
  static ScalarFunction custom(std::string name, std::function<double(double)> fn);

  /// Throws ConfigError for malformed text or invalid parameters.
  static ScalarFunction parse(const std::string& text);

  double operator()(double t) const;

  Kind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return c_; }
  double exponent() const noexcept { return p_; }
  std::string name() const;

  /// Known operator monotone on [0, inf): identity and (scaled) powers with
  /// exponent in [0, 1]. False for exp-minus-one. Custom functions report
  /// false; use probe_operator_monotone for an empirical answer.
  bool operator_monotone() const noexcept;

 private:
  Kind kind_ = Kind::identity;
  double c_ = 1.0;
  double p_ = 1.0;
  std::string custom_name_;
  std::function<double(double)> custom_;
};

/// f(A) via the spectral decomposition. Eigenvalues within round-off of zero
/// are clamped to 0, since every catalog function lives on [0, inf).
SymMatrix apply_scalar(const SymMatrix& a, const ScalarFunction& f);

/// f(A)^p pointwise on the spectrum, i.e. the functional calculus of t -> f(t)^p.
SymMatrix apply_scalar_pow(const SymMatrix& a, const ScalarFunction& f, double p);

/// Sampled check that fn is non-decreasing and non-negative on [a, b].
bool sampled_monotone_increasing(const std::function<double(double)>& fn, double a, double b,
                                 int samples = 1000);

struct MonotoneProbe {
  bool passed = true;
  double worst_margin = 0.0;  // most negative lambda_min(fn(B) - fn(A)) seen
  std::optional<std::pair<SymMatrix, SymMatrix>> witness;  // A <= B, fn(A) !<= fn(B)
};

/// Heuristic operator-monotonicity probe: for `trials` random 2x2 pairs
/// 0 < A <= B, tests fn(A) <= fn(B). A pass is evidence, not proof.
MonotoneProbe probe_operator_monotone(const std::function<double(double)>& fn, int trials = 1000,
                                      std::uint64_t seed = 0x5eed);

}  // namespace opmean
