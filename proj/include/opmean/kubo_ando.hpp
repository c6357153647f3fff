#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opmean/functions.hpp"
#include "opmean/symmat.hpp"

namespace opmean {

/// Representing function h of an operator mean: h(t) I = I sigma (t I).
class RepresentingFunction {
 public:
  enum class Kind {
    arithmetic,
    weighted_arithmetic,
    geometric,
    weighted_geometric,
    harmonic,
    weighted_harmonic,
    custom
  };

  RepresentingFunction() = default;  // geometric

  static RepresentingFunction arithmetic();
  /// (1 - w) + w t
  static RepresentingFunction weighted_arithmetic(double w);
  static RepresentingFunction geometric();
  /// t^eps
  static RepresentingFunction weighted_geometric(double eps);
  /// 2t / (1 + t)
  static RepresentingFunction harmonic();
  /// t / ((1 - w) t + w), the mean ((1-w) A^{-1} + w B^{-1})^{-1}
  static RepresentingFunction weighted_harmonic(double w);
  static RepresentingFunction custom(std::string name, std::function<double(double)> h);

  /// Throws ConfigError for t <= 0.
  double operator()(double t) const;

  Kind kind() const noexcept { return kind_; }
  /// Weight (or exponent); 0.5 for the unweighted kinds.
  double weight() const noexcept { return w_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::geometric;
  double w_ = 0.5;
  std::string custom_name_;
  std::function<double(double)> custom_;
};

struct MeanDescriptor {
  std::string name;
  RepresentingFunction h;
};

/// `arithmetic`, `geometric`, `harmonic`, optionally suffixed `:w` for the
/// weighted member of the family (e.g. `geometric:0.3`).
MeanDescriptor parse_mean(const std::string& text);
MeanDescriptor make_mean(RepresentingFunction h);

/// The three unweighted means.
std::vector<MeanDescriptor> mean_catalog();

double representing_value(const MeanDescriptor& sigma, double t);

/// A^{1/2} h(A^{-1/2} B A^{-1/2}) A^{1/2}. Throws DomainError when A is not
/// positive definite.
SymMatrix mean(const MeanDescriptor& sigma, const SymMatrix& a, const SymMatrix& b);
SymMatrix geometric_mean(const SymMatrix& a, const SymMatrix& b);
SymMatrix arithmetic_mean(const SymMatrix& a, const SymMatrix& b);

struct RepresentingReport {
  bool unit_ok = false;       // |h(1) - 1| <= 1e-12
  bool positive_ok = false;   // h > 0 on a log grid of [1e-6, 1e6]
  bool monotone_probe_ok = false;
  double worst_margin = 0.0;
  std::optional<std::pair<SymMatrix, SymMatrix>> witness;
  std::string message;

  /// Exact checks only; the monotonicity probe is advisory.
  bool accepted() const noexcept { return unit_ok && positive_ok; }
};

RepresentingReport validate_representing(const RepresentingFunction& h, int probe_trials = 1000,
                                         std::uint64_t seed = 0x5eed);

/// 2t/(1+t) <= h(t) <= (1+t)/2 on 1000 log-spaced points of [1e-4, 1e4],
/// tolerance 1e-12.
bool is_between_harmonic_arithmetic(const RepresentingFunction& h);

/// h(t) = t h(1/t) on the same grid, i.e. A sigma B = B sigma A.
bool is_symmetric(const RepresentingFunction& h);

struct AlmOptions {
  double tol = 1e-12;
  int max_iter = 1000;
};

/// Ando-Li-Mathias geometric mean of n >= 1 positive definite matrices.
/// Throws ConvergenceError (carrying the last residual) past max_iter.
SymMatrix alm_mean(std::span<const SymMatrix> as, const AlmOptions& options = {});

}  // namespace opmean
