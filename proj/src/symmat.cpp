#include "opmean/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace opmean {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("Matrix +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("Matrix -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("Matrix *: inner dimensions differ");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw DimensionError("SymMatrix: dimension must be at least 1");
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(from(Matrix(rows))) {}

SymMatrix SymMatrix::from(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("SymMatrix: matrix is not square");
  if (m.rows() == 0) throw DimensionError("SymMatrix: dimension must be at least 1");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < s.n_; ++i)
    for (std::size_t j = i; j < s.n_; ++j) {
      const double v = (i == j) ? m(i, i) : 0.5 * (m(i, j) + m(j, i));
      if (!std::isfinite(v)) throw DomainError("SymMatrix: non-finite entry");
      s.set(i, j, v);
    }
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

SymMatrix SymMatrix::scalar(std::size_t n, double value) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.data_[i * n + i] = value;
  return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.data_[i * s.n_ + i] = d[i];
  return s;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  data_[i * n_ + j] = v;
  data_[j * n_ + i] = v;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (n_ != other.n_) throw DimensionError("SymMatrix +: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (n_ != other.n_) throw DimensionError("SymMatrix -: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double distance(const SymMatrix& a, const SymMatrix& b) { return (a - b).frobenius(); }

SymMatrix square(const SymMatrix& a) {
  const std::size_t n = a.dim();
  SymMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * a(k, j);
      r.set(i, j, s);
    }
  return r;
}

SpectralBand SpectralBand::make(double m, double M) {
  if (!(std::isfinite(m) && std::isfinite(M)) || !(m > 0.0) || !(m <= M)) {
    std::ostringstream os;
    os << "invalid spectral band [" << m << ", " << M << "]: need 0 < m <= M";
    throw ConfigError(os.str());
  }
  return SpectralBand{m, M};
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_sym(const SymMatrix& input) {
  const std::size_t n = input.dim();
  std::vector<double> a(input.data().begin(), input.data().end());
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-13 * (1.0 + input.frobenius());

  int sweep = 0;
  double off = off_diagonal_norm(a, n);
  while (off > threshold) {
    if (++sweep > kMaxSweeps) {
      std::ostringstream os;
      os << "eig_sym: no convergence after " << kMaxSweeps
         << " sweeps (off-diagonal residual " << off << ")";
      throw ConvergenceError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : (theta >= 0.0 ? 1.0 : -1.0) /
                                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_diagonal_norm(a, n);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  EigenDecomposition e;
  e.eigenvalues.resize(n);
  e.eigenvectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    e.eigenvalues[c] = a[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) e.eigenvectors(r, c) = v(r, order[c]);
  }
  return e;
}

std::vector<double> eigenvalues(const SymMatrix& a) { return eig_sym(a).eigenvalues; }

SymMatrix reconstruct(const EigenDecomposition& e, const std::function<double(double)>& f) {
  const std::size_t n = e.eigenvalues.size();
  std::vector<double> fl(n);
  for (std::size_t k = 0; k < n; ++k) {
    fl[k] = f(e.eigenvalues[k]);
    if (!std::isfinite(fl[k])) {
      std::ostringstream os;
      os << "apply_scalar: function is not finite at eigenvalue " << e.eigenvalues[k];
      throw DomainError(os.str());
    }
  }
  const Matrix& q = e.eigenvectors;
  SymMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * fl[k] * q(j, k);
      r.set(i, j, s);
    }
  return r;
}

SymMatrix apply_scalar(const SymMatrix& a, const std::function<double(double)>& f,
                       std::optional<double> domain_floor) {
  const EigenDecomposition e = eig_sym(a);
  if (domain_floor && e.min() <= *domain_floor) {
    std::ostringstream os;
    os << "apply_scalar: eigenvalue " << e.min() << " is outside the function domain (must exceed "
       << *domain_floor << ")";
    throw DomainError(os.str());
  }
  return reconstruct(e, f);
}

SymMatrix power(const SymMatrix& a, double p) {
  if (p < 0.0) {
    return apply_scalar(a, [p](double t) { return std::pow(t, p); }, kInverseFloor);
  }
  if (p == 0.0) return SymMatrix::identity(a.dim());
  if (p == 1.0) return a;
  const EigenDecomposition e = eig_sym(a);
  const double slack = -1e-13 * (1.0 + std::max(std::abs(e.min()), std::abs(e.max())));
  if (e.min() < slack) {
    std::ostringstream os;
    os << "power: eigenvalue " << e.min() << " is negative";
    throw DomainError(os.str());
  }
  return reconstruct(e, [p](double t) { return std::pow(std::max(t, 0.0), p); });
}

SymMatrix sqrtm(const SymMatrix& a) { return power(a, 0.5); }
SymMatrix inv_sqrtm(const SymMatrix& a) { return power(a, -0.5); }
SymMatrix inverse(const SymMatrix& a) { return power(a, -1.0); }

SymMatrix absm(const SymMatrix& a) {
  return apply_scalar(a, [](double t) { return std::abs(t); });
}

SymMatrix congruence(const SymMatrix& a, const Matrix& t) {
  if (t.rows() != a.dim()) throw DimensionError("congruence: T must have dim(A) rows");
  if (t.cols() == 0) throw DimensionError("congruence: T has no columns");
  const Matrix at = a.to_matrix() * t;
  const std::size_t k = t.cols();
  SymMatrix r(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < a.dim(); ++l) s += t(l, i) * at(l, j);
      r.set(i, j, s);
    }
  return r;
}

SymMatrix congruence(const SymMatrix& a, const SymMatrix& t) {
  return congruence(a, t.to_matrix());
}

double op_norm(const SymMatrix& a) {
  const auto ev = eigenvalues(a);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double det(const SymMatrix& a) {
  const auto ev = eigenvalues(a);
  return std::accumulate(ev.begin(), ev.end(), 1.0, std::multiplies<>());
}

double min_eig(const SymMatrix& a) { return eigenvalues(a).front(); }

double default_order_tol(const SymMatrix& a, const SymMatrix& b) {
  return 1e-9 * (1.0 + std::max(op_norm(a), op_norm(b)));
}

OrderVerdict loewner_leq(const SymMatrix& a, const SymMatrix& b, std::optional<double> tol) {
  if (a.dim() != b.dim()) throw DimensionError("loewner_leq: dimension mismatch");
  OrderVerdict v;
  v.tol_used = tol ? *tol : default_order_tol(a, b);
  if (v.tol_used < 0.0) throw ConfigError("loewner_leq: tolerance must be non-negative");
  const auto ev = eigenvalues(b - a);
  v.gap_min_eig = ev.front();
  v.gap_det = std::accumulate(ev.begin(), ev.end(), 1.0, std::multiplies<>());
  v.holds = v.gap_min_eig >= -v.tol_used;
  return v;
}

SpectralBand spectral_band_of(std::span<const SymMatrix> as) {
  if (as.empty()) throw ConfigError("spectral_band_of: empty list");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto ev = eigenvalues(as[i]);
    if (ev.front() <= 0.0) {
      std::ostringstream os;
      os << "spectral_band_of: matrix " << i << " is not positive definite (lambda_min = "
         << ev.front() << ")";
      throw NotPositiveDefinite(os.str());
    }
    lo = std::min(lo, ev.front());
    hi = std::max(hi, ev.back());
  }
  return SpectralBand{lo, hi};
}

BandReport validate_band(std::span<const SymMatrix> as, const SpectralBand& band, double tol) {
  BandReport report;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto ev = eigenvalues(as[i]);
    BandEntry entry;
    entry.index = i;
    entry.lambda_min = ev.front();
    entry.lambda_max = ev.back();
    for (double l : ev)
      if (l < band.m - tol || l > band.M + tol) entry.offending.push_back(l);
    entry.pass = entry.offending.empty();
    report.pass = report.pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Random generation

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Matrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) = normal(rng);
    bool degenerate = false;
    for (std::size_t c = 0; c < n && !degenerate; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += q(r, p) * q(r, c);
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, p);
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm += q(r, c) * q(r, c);
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
    }
    if (!degenerate) return q;
  }
}

SymMatrix random_spd(std::size_t dim, const SpectralBand& band, bool pinned, Rng& rng) {
  if (dim == 0) throw DimensionError("random_spd: dimension must be at least 1");
  std::uniform_real_distribution<double> uniform(band.m, band.M);
  std::vector<double> lambda(dim);
  for (double& l : lambda) l = band.degenerate() ? band.m : uniform(rng);
  if (pinned && dim >= 2) {
    auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
    if (lo == hi) hi = lo == lambda.begin() ? lambda.begin() + 1 : lambda.begin();
    *lo = band.m;
    *hi = band.M;
  }
  if (dim == 1) return SymMatrix::diagonal(lambda);

  const Matrix q = random_orthogonal(dim, rng);
  return reconstruct(EigenDecomposition{lambda, q}, [](double t) { return t; });
}

}  // namespace opmean
