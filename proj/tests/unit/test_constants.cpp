#include <cmath>

#include "doctest.h"
#include "opmean/constants.hpp"
#include "opmean/kubo_ando.hpp"
#include "support.hpp"

using namespace opmean;

namespace {

// max over [t, s] of x^eps / chord(x), chord through (t, t^eps), (s, s^eps).
double oracle_weighted_ratio(double t, double s, double eps) {
  const double ft = std::pow(t, eps), fs = std::pow(s, eps);
  return testing::oracle_max(
      [&](double x) { return std::pow(x, eps) / (ft + (fs - ft) * (x - t) / (s - t)); }, t, s);
}

}  // namespace

TEST_SUITE("constants") {

TEST_CASE("Kantorovich constant") {
  CHECK(kantorovich(SpectralBand{1.0, 2.0}) == 1.125);
  CHECK(kantorovich(SpectralBand{3.0, 3.0}) == 1.0);
  CHECK(kantorovich(SpectralBand{0.4, 3.0}) == doctest::Approx(3.4 * 3.4 / 4.8).epsilon(1e-14));
  CHECK(kantorovich(SpectralBand{0.4, 3.0}) == doctest::Approx(2.408333).epsilon(1e-6));
}

TEST_CASE("Polya-Szego coefficient") {
  CHECK(polya_szego_coeff(SpectralBand{1.0, 1.0}) == 1.0);
  CHECK(polya_szego_coeff(SpectralBand{1.0, 2.0}) == doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))));
  Rng rng(51);
  std::uniform_real_distribution<double> m(0.01, 10.0), ratio(1.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const double lo = m(rng);
    const SpectralBand band{lo, lo * ratio(rng)};
    const double ps = polya_szego_coeff(band);
    CHECK(ps >= 1.0);
    CHECK(std::abs(ps * ps - kantorovich(band)) <= 1e-12 * kantorovich(band));
  }
}

TEST_CASE("Yamazaki coefficient and crossover") {
  const SpectralBand band{1.0, 2.0};
  CHECK(yamazaki_coeff(band, 5) == doctest::Approx(1.265625).epsilon(1e-15));
  CHECK(yamazaki_coeff(band, 2) == doctest::Approx(std::sqrt(9.0 / 8.0)));
  CHECK(yamazaki_crossover(band) == 13);
  CHECK(yamazaki_coeff(band, 12) < 2.0);
  CHECK(yamazaki_coeff(band, 13) >= 2.0);
  // smallest integer n with (n - 1)/2 ln(9/8) >= ln 2
  const int n = static_cast<int>(std::ceil(1.0 + 2.0 * std::log(2.0) / std::log(9.0 / 8.0)));
  CHECK(n == 13);
  CHECK_THROWS_AS(yamazaki_coeff(band, 1), ConfigError);
  CHECK_THROWS_AS(yamazaki_crossover(SpectralBand{2.0, 2.0}), ConfigError);
}

TEST_CASE("secant coefficients") {
  const Secant id = secant_coeffs([](double t) { return t; }, 1.0, 2.0);
  CHECK(id.slope == doctest::Approx(1.0));
  CHECK(id.intercept == doctest::Approx(0.0));
  const Secant par = secant_coeffs([](double t) { return t * t; }, 0.0, 1.0);
  CHECK(par.slope == doctest::Approx(1.0));
  CHECK(par.intercept == doctest::Approx(0.0));

  Rng rng(52);
  std::uniform_real_distribution<double> u(0.1, 5.0), p(0.1, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double a = u(rng), b = a + u(rng), e = p(rng);
    const auto phi = [&](double t) { return std::pow(t, e); };
    const Secant s = secant_coeffs(phi, a, b);
    CHECK(std::abs(s(a) - phi(a)) <= 1e-14 * (1.0 + phi(a)));
    CHECK(std::abs(s(b) - phi(b)) <= 1e-13 * (1.0 + phi(b)));
    CHECK(std::abs(s.slope * a + s.intercept - phi(a)) <= 1e-12 * (1.0 + phi(a)));
  }
  CHECK_THROWS_AS(secant_coeffs([](double t) { return t; }, 2.0, 2.0), ConfigError);
}

TEST_CASE("Mond-Pecaric alpha") {
  Rng rng(53);
  CHECK(mp_alpha(RepresentingFunction::arithmetic(), SpectralBand{1.0, 7.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mp_alpha(RepresentingFunction::geometric(), SpectralBand{1.0, 2.0}) -
                 polya_szego_coeff(SpectralBand{1.0, 2.0})) <= 1e-10);
  CHECK(std::abs(mp_alpha(RepresentingFunction::geometric(), SpectralBand{1.0, 1.0 + 1e-9}) - 1.0) <= 1e-6);
  CHECK_THROWS_AS(mp_alpha(RepresentingFunction::geometric(), SpectralBand{1.0, 1.0}), ConfigError);

  std::uniform_real_distribution<double> m(0.1, 3.0), ratio(1.01, 20.0), c(0.01, 100.0);
  const RepresentingFunction hs[] = {RepresentingFunction::geometric(), RepresentingFunction::harmonic(),
                                     RepresentingFunction::weighted_geometric(0.3),
                                     RepresentingFunction::weighted_harmonic(0.7)};
  for (const auto& h : hs) {
    for (int k = 0; k < 20; ++k) {
      const double lo = m(rng);
      const SpectralBand band{lo, lo * ratio(rng)};
      const double alpha = mp_alpha(h, band);
      CHECK(alpha >= 1.0 - 1e-12);

      const double a = band.m / band.M, b = band.M / band.m;
      const Secant chord = secant_coeffs([&](double t) { return h(t); }, a, b);
      for (int j = 0; j <= 1000; ++j) {
        const double t = a + (b - a) * j / 1000.0;
        CHECK(alpha >= h(t) / chord(t) - 1e-12);
      }
      CHECK(std::abs(alpha - testing::oracle_max([&](double t) { return h(t) / chord(t); }, a, b)) <= 1e-10);

      const double scale = c(rng);
      CHECK(std::abs(mp_alpha(h, SpectralBand{scale * band.m, scale * band.M}) - alpha) <= 1e-10);
    }
  }
}

TEST_CASE("weighted Kantorovich closed form") {
  CHECK(weighted_kantorovich(0.5, 2.0, 0.5) == doctest::Approx(1.060660).epsilon(1e-6));
  CHECK(std::abs(weighted_kantorovich(1.0, 1.0 + 1e-7, 0.5) - 1.0) < 1e-8);
  CHECK_THROWS_AS(weighted_kantorovich(2.0, 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(weighted_kantorovich(0.5, 2.0, 1.0), ConfigError);

  int points = 0;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 5; ++k) {
        const double t = 0.05 + 0.9 * i / 9.0;
        const double s = t * (1.1 + 9.0 * j / 9.0);
        const double eps = 0.1 + 0.8 * k / 4.0;
        worst = std::max(worst, std::abs(weighted_kantorovich(t, s, eps) - oracle_weighted_ratio(t, s, eps)));
        ++points;
      }
    }
  }
  CHECK(points == 500);
  CHECK(worst <= 1e-8);

  Rng rng(54);
  std::uniform_real_distribution<double> m(0.1, 3.0), ratio(1.05, 30.0), e(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const double lo = m(rng), eps = e(rng);
    const SpectralBand band{lo, lo * ratio(rng)};
    CHECK(std::abs(mp_alpha(RepresentingFunction::weighted_geometric(eps), band) -
                   weighted_kantorovich(band.m / band.M, band.M / band.m, eps)) <= 1e-8);
  }
}

TEST_CASE("Mond-Pecaric gamma") {
  const SpectralBand band{1.0, 2.0};
  const MPConstants arith = mp_gamma(ScalarFunction::identity(), ScalarFunction::identity(),
                                     RepresentingFunction::arithmetic(), band);
  CHECK(arith.alpha == doctest::Approx(1.0));
  CHECK(arith.mu_g == doctest::Approx(1.0));
  CHECK(arith.nu_g == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(arith.gamma == doctest::Approx(1.0));

  const MPConstants geo = mp_gamma(ScalarFunction::identity(), ScalarFunction::identity(),
                                   RepresentingFunction::geometric(), band);
  CHECK(std::abs(geo.gamma - geo.alpha) <= 1e-10);
  CHECK(geo.gamma == doctest::Approx(1.060660).epsilon(1e-6));

  const MPConstants sq = mp_gamma(ScalarFunction::power(2.0), ScalarFunction::identity(),
                                  RepresentingFunction::arithmetic(), band);
  CHECK(std::abs(sq.gamma - 2.0) <= 1e-10);

  Rng rng(55);
  std::uniform_real_distribution<double> m(0.2, 3.0), ratio(1.1, 10.0);
  for (int k = 0; k < 50; ++k) {
    const double lo = m(rng);
    const SpectralBand b{lo, lo * ratio(rng)};
    const MPConstants c = mp_gamma(ScalarFunction::exp_minus_one(), ScalarFunction::power(0.5),
                                   RepresentingFunction::harmonic(), b);
    CHECK(std::isfinite(c.gamma));
    CHECK(c.gamma > 0.0);
    CHECK(c.mu_g * b.m / c.alpha + c.nu_g > 0.0);
    CHECK(c.mu_g * b.M / c.alpha + c.nu_g > 0.0);
    const double oracle = testing::oracle_max(
        [&](double t) { return std::expm1(t) / (c.mu_g * t / c.alpha + c.nu_g); }, b.m, b.M);
    CHECK(std::abs(c.gamma - oracle) <= 1e-10 * (1.0 + oracle));
  }
  CHECK_THROWS_AS(mp_gamma(ScalarFunction::identity(), ScalarFunction::identity(),
                           RepresentingFunction::geometric(), SpectralBand{1.0, 1.0}),
                  ConfigError);
}

TEST_CASE("one dimensional maximization") {
  const Maximum peak = maximize_1d([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0, 1.0);
  CHECK(peak.argmax == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(peak.value <= 0.0);
  CHECK(peak.value >= -1e-15);
  const Maximum edge = maximize_1d([](double t) { return t; }, 0.0, 2.0);
  CHECK(edge.value == 2.0);
}

TEST_CASE("concavity check") {
  CHECK(check_concave([](double t) { return std::sqrt(t); }, 0.5, 4.0).concave);
  CHECK(check_concave([](double t) { return t; }, 0.5, 4.0).concave);
  CHECK_FALSE(check_concave([](double t) { return t * t; }, 0.5, 4.0).concave);
}

}  // TEST_SUITE
