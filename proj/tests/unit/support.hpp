#pragma once

// Independent oracles for the unit tests. Nothing here goes through the
// eigensolver under test.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "opmean/symmat.hpp"

namespace testing {

using opmean::Matrix;
using opmean::Rng;
using opmean::SymMatrix;

inline SymMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, g(rng));
  return a;
}

// G G^T + shift I: positive definite without any spectral machinery.
inline SymMatrix random_gram(std::size_t n, Rng& rng, double shift = 0.1) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = g(rng);
  SymMatrix out = SymMatrix::from(f * f.transpose());
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, out(i, i) + shift);
  return out;
}

inline Matrix random_invertible(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix t = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) += 0.5 * g(rng);
  return t;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

// Roots of the characteristic polynomial of a 2x2 symmetric matrix.
inline std::array<double, 2> eig2(const SymMatrix& a) {
  const double tr = a(0, 0) + a(1, 1);
  const double dt = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - dt));
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

// min <x, C x> over `samples` random unit vectors: an upper bound on
// lambda_min(C).
inline double quadform_min(const SymMatrix& c, int samples, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t n = c.dim();
  std::vector<double> x(n);
  double best = INFINITY;
  for (int s = 0; s < samples; ++s) {
    double norm = 0.0;
    for (auto& v : x) {
      v = g(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += x[i] * c(i, j) * x[j];
    best = std::min(best, q / (norm * norm));
  }
  return best;
}

// Dense-grid maximum followed by an independent ternary search on the best
// cell. Assumes the function is unimodal near its maximum.
template <class F>
double oracle_max(F&& fn, double a, double b, int grid = 4000) {
  int best = 0;
  double best_v = -INFINITY;
  for (int k = 0; k <= grid; ++k) {
    const double v = fn(a + (b - a) * k / grid);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  double lo = a + (b - a) * std::max(0, best - 1) / grid;
  double hi = a + (b - a) * std::min(grid, best + 1) / grid;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (fn(m1) < fn(m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(best_v, fn(0.5 * (lo + hi)));
}

inline bool approx_equal(const SymMatrix& a, const SymMatrix& b, double tol) {
  return opmean::distance(a, b) <= tol;
}

}  // namespace testing
