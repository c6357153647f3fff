#include "opmean/constants.hpp"

#include <cmath>
#include <sstream>

namespace opmean {

namespace {

void require_band(const SpectralBand& band) { (void)SpectralBand::make(band.m, band.M); }

void require_proper(const SpectralBand& band, const char* who) {
  require_band(band);
  if (band.degenerate()) throw ConfigError(std::string(who) + ": requires m < M");
}

}  // namespace

double kantorovich(const SpectralBand& band) {
  require_band(band);
  const double s = band.M + band.m;
  return s * s / (4.0 * band.M * band.m);
}

double polya_szego_coeff(const SpectralBand& band) {
  require_band(band);
  return (band.M + band.m) / (2.0 * std::sqrt(band.M * band.m));
}

double yamazaki_coeff(const SpectralBand& band, int n) {
  if (n < 2) throw ConfigError("yamazaki_coeff: requires n >= 2");
  return std::pow(kantorovich(band), 0.5 * (n - 1));
}

int yamazaki_crossover(const SpectralBand& band) {
  require_proper(band, "yamazaki_crossover");
  const double target = band.M / band.m;
  // ((n - 1) / 2) ln K >= ln(M/m)
  int n = 2 + static_cast<int>(std::floor(2.0 * std::log(target) / std::log(kantorovich(band))));
  while (n > 2 && yamazaki_coeff(band, n - 1) >= target) --n;
  while (yamazaki_coeff(band, n) < target) ++n;
  return n;
}

Secant secant_coeffs(const std::function<double(double)>& phi, double a, double b) {
  if (!(a < b)) {
    std::ostringstream os;
    os << "secant_coeffs: degenerate interval [" << a << ", " << b << "]";
    throw ConfigError(os.str());
  }
  Secant s;
  s.a = a;
  s.b = b;
  s.fa = phi(a);
  s.fb = phi(b);
  s.slope = (s.fb - s.fa) / (b - a);
  s.intercept = (b * s.fa - a * s.fb) / (b - a);
  return s;
}

Maximum maximize_1d(const std::function<double(double)>& fn, double a, double b, int grid_points,
                    double width) {
  if (!(a <= b)) throw ConfigError("maximize_1d: empty interval");
  if (grid_points < 3) grid_points = 3;
  if (a == b) return {a, fn(a)};

  const double step = (b - a) / (grid_points - 1);
  int best = 0;
  double best_value = fn(a);
  for (int k = 1; k < grid_points; ++k) {
    const double t = k == grid_points - 1 ? b : a + step * k;
    const double v = fn(t);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  Maximum result{best == grid_points - 1 ? b : a + step * best, best_value};

  double lo = std::max(a, a + step * (best - 1));
  double hi = std::min(b, a + step * (best + 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = fn(c), fd = fn(d);
  while (hi - lo > width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = fn(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = fn(d);
    }
    // The bracket stops shrinking once it reaches the spacing of doubles.
    if (c <= lo || d >= hi) break;
  }
  for (double t : {c, d, 0.5 * (lo + hi)}) {
    const double v = fn(t);
    if (v > result.value) result = {t, v};
  }
  return result;
}

double mp_alpha(const RepresentingFunction& h, const SpectralBand& band) {
  require_proper(band, "mp_alpha");
  const double lo = band.m / band.M;
  const double hi = band.M / band.m;
  const Secant chord = secant_coeffs([&](double t) { return h(t); }, lo, hi);
  for (double t : {lo, hi})
    if (!(chord(t) > 0.0)) throw ConfigError("mp_alpha: chord of h is not positive on the interval");
  return maximize_1d([&](double t) { return h(t) / chord(t); }, lo, hi).value;
}

double weighted_kantorovich(double t, double s, double eps) {
  if (!(t > 0.0 && t < s)) throw ConfigError("weighted_kantorovich: requires 0 < t < s");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("weighted_kantorovich: requires 0 < eps < 1");
  const double te = std::pow(t, eps);
  const double se = std::pow(s, eps);
  const double num = std::pow(eps, eps) * (s - t) * std::pow(s * te - t * se, eps - 1.0);
  const double den = std::pow(1.0 - eps, eps - 1.0) * std::pow(se - te, eps);
  return num / den;
}

MPConstants mp_gamma(const ScalarFunction& f, const ScalarFunction& g,
                     const RepresentingFunction& h, const SpectralBand& band) {
  require_proper(band, "mp_gamma");
  MPConstants k;
  k.band = band;
  const Secant h_chord = secant_coeffs([&](double t) { return h(t); }, band.m / band.M,
                                       band.M / band.m);
  k.mu_h = h_chord.slope;
  k.nu_h = h_chord.intercept;
  k.alpha = mp_alpha(h, band);

  const Secant g_chord = secant_coeffs([&](double t) { return g(t); }, band.m, band.M);
  k.mu_g = g_chord.slope;
  k.nu_g = g_chord.intercept;

  const double ma = k.mu_g / k.alpha;
  auto denominator = [&](double t) { return ma * t + k.nu_g; };
  // Affine, so positivity at both ends is positivity on [m, M].
  for (double t : {band.m, band.M}) {
    if (!(denominator(t) > 0.0)) {
      std::ostringstream os;
      os << "mp_gamma: denominator mu_g t / alpha + nu_g = " << denominator(t) << " at t = " << t
         << " is not positive";
      throw ConfigError(os.str());
    }
  }
  k.gamma = maximize_1d([&](double t) { return f(t) / denominator(t); }, band.m, band.M).value;
  if (!(k.gamma > 0.0) || !std::isfinite(k.gamma))
    throw ConfigError("mp_gamma: gamma is not finite and positive");
  return k;
}

ConcavityReport check_concave(const std::function<double(double)>& fn, double a, double b,
                              int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(a, b);
  ConcavityReport r;
  for (int k = 0; k < samples; ++k) {
    const double x = u(rng), y = u(rng);
    const double fx = fn(x), fy = fn(y), fm = fn(0.5 * (x + y));
    const double margin = fm - 0.5 * (fx + fy);
    const double tol = 1e-12 * (1.0 + std::abs(fx) + std::abs(fy));
    r.worst = std::min(r.worst, margin);
    if (margin < -tol) r.concave = false;
  }
  return r;
}

}  // namespace opmean
