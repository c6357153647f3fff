#pragma once

#include <cstdint>
#include <functional>

#include "opmean/functions.hpp"
#include "opmean/kubo_ando.hpp"
#include "opmean/symmat.hpp"

namespace opmean {

/// K(M, m) = (M + m)^2 / (4 M m)
double kantorovich(const SpectralBand& band);

/// (M + m) / (2 sqrt(M m)); its square is kantorovich(band).
double polya_szego_coeff(const SpectralBand& band);

/// K(M, m)^{(n-1)/2}, the reverse AM-GM factor for n matrices. Requires n >= 2.
double yamazaki_coeff(const SpectralBand& band, int n);

/// Smallest n >= 2 with yamazaki_coeff(band, n) >= M/m. Throws ConfigError
/// for a degenerate band, where no such n exists unless M/m = 1.
int yamazaki_crossover(const SpectralBand& band);

/// Chord of phi through (a, phi(a)) and (b, phi(b)).
struct Secant {
  double a = 0.0, b = 1.0;
  double fa = 0.0, fb = 1.0;
  double slope = 1.0;      // mu
  double intercept = 0.0;  // nu

  /// Evaluated by interpolation from the endpoint values, which stays
  /// accurate when b - a is tiny.
  double operator()(double t) const { return fa + (fb - fa) * ((t - a) / (b - a)); }
};

/// Throws ConfigError when a >= b.
Secant secant_coeffs(const std::function<double(double)>& phi, double a, double b);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximum of a continuous function on [a, b]: uniform grid of `grid_points`
/// followed by golden-section refinement of the best bracket down to width
/// `width`.
Maximum maximize_1d(const std::function<double(double)>& fn, double a, double b,
                    int grid_points = 10001, double width = 1e-12);

/// max h(t) / (mu_h t + nu_h) over [m/M, M/m], with (mu_h, nu_h) the chord of
/// h on that interval. Requires m < M.
double mp_alpha(const RepresentingFunction& h, const SpectralBand& band);

/// Closed form of mp_alpha for h(t) = t^eps, evaluated at t = m/M, s = M/m:
///   eps^eps (s - t) (s t^eps - t s^eps)^(eps - 1)
///   / ((1 - eps)^(eps - 1) (s^eps - t^eps)^eps)
/// Requires 0 < t < s and 0 < eps < 1.
double weighted_kantorovich(double t, double s, double eps);

struct MPConstants {
  double mu_h = 0.0, nu_h = 0.0, alpha = 1.0;
  double mu_g = 0.0, nu_g = 0.0, gamma = 1.0;
  SpectralBand band;
};

/// All constants of the Mond-Pecaric reverse: alpha from h on [m/M, M/m],
/// the chord (mu_g, nu_g) of g on [m, M], and
///   gamma = max f(t) / (mu_g t / alpha + nu_g)  over [m, M].
/// Throws ConfigError if the denominator is not positive on [m, M] or m = M.
MPConstants mp_gamma(const ScalarFunction& f, const ScalarFunction& g,
                     const RepresentingFunction& h, const SpectralBand& band);

struct ConcavityReport {
  bool concave = true;
  double worst = 0.0;  // most negative fn((x+y)/2) - (fn(x)+fn(y))/2
};

/// Midpoint concavity on `samples` random pairs in [a, b]; advisory only.
ConcavityReport check_concave(const std::function<double(double)>& fn, double a, double b,
                              int samples = 1000, std::uint64_t seed = 0xc0ca);

}  // namespace opmean
