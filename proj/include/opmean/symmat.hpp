#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "opmean/error.hpp"

namespace opmean {

/// Engine behind every random draw. Seeded explicitly; never from the clock.
using Rng = std::mt19937_64;

/// Dense row-major real matrix. Used for non-square factors (isometries,
/// congruence transforms) and as scratch space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  double frobenius() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense real symmetric matrix. Symmetry is exact: construction from a
/// general matrix averages the two triangles, and element writes go through
/// set(), which updates both.
class SymMatrix {
 public:
  /// The 1x1 zero matrix.
  SymMatrix() : SymMatrix(1) {}
  explicit SymMatrix(std::size_t n);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Symmetrizes `m`. Throws DimensionError for non-square or empty input and
  /// DomainError for non-finite entries.
  static SymMatrix from(const Matrix& m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix diagonal(std::initializer_list<double> d);
  static SymMatrix scalar(std::size_t n, double value);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v);

  std::span<const double> data() const noexcept { return data_; }
  Matrix to_matrix() const;

  double trace() const;
  double frobenius() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Frobenius norm of a - b.
double distance(const SymMatrix& a, const SymMatrix& b);

/// A * A, symmetric by construction.
SymMatrix square(const SymMatrix& a);

/// Closed interval [m, M] assumed to contain every spectrum in play.
struct SpectralBand {
  double m = 1.0;
  double M = 1.0;

  /// Throws ConfigError unless 0 < m <= M and both are finite.
  static SpectralBand make(double m, double M);

  bool degenerate() const noexcept { return m == M; }
  friend bool operator==(const SpectralBand&, const SpectralBand&) = default;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // columns, orthonormal

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// Cyclic Jacobi eigensolver. Stops when the off-diagonal Frobenius norm is
/// below 1e-13 * (1 + ||A||_F); throws ConvergenceError after 100 sweeps.
EigenDecomposition eig_sym(const SymMatrix& a);

std::vector<double> eigenvalues(const SymMatrix& a);

/// Q f(L) Q^T. `domain_floor`, when set, is the smallest admissible
/// eigenvalue; anything at or below it raises DomainError.
SymMatrix apply_scalar(const SymMatrix& a, const std::function<double(double)>& f,
                       std::optional<double> domain_floor = std::nullopt);
SymMatrix reconstruct(const EigenDecomposition& e, const std::function<double(double)>& f);

/// Eigenvalues at or below this are treated as zero by inverse powers.
inline constexpr double kInverseFloor = 1e-13;

/// A^p for p >= 0 on positive semidefinite input. Round-off negatives down to
/// -1e-13 * (1 + ||A||) are clamped to zero.
SymMatrix power(const SymMatrix& a, double p);
SymMatrix sqrtm(const SymMatrix& a);
SymMatrix inv_sqrtm(const SymMatrix& a);
SymMatrix inverse(const SymMatrix& a);
/// (A^2)^{1/2}
SymMatrix absm(const SymMatrix& a);

/// T^T A T; T must have a.dim() rows. Result has T.cols() rows.
SymMatrix congruence(const SymMatrix& a, const Matrix& t);
SymMatrix congruence(const SymMatrix& a, const SymMatrix& t);

double op_norm(const SymMatrix& a);
double det(const SymMatrix& a);
double min_eig(const SymMatrix& a);

struct OrderVerdict {
  bool holds = false;
  double gap_min_eig = 0.0;  // lambda_min(B - A)
  double gap_det = 0.0;      // det(B - A)
  double tol_used = 0.0;
};

/// 1e-9 * (1 + max(||A||, ||B||))
double default_order_tol(const SymMatrix& a, const SymMatrix& b);

/// Tests A <= B in the Loewner order: holds iff lambda_min(B - A) >= -tol.
OrderVerdict loewner_leq(const SymMatrix& a, const SymMatrix& b,
                         std::optional<double> tol = std::nullopt);

/// Smallest lambda_min and largest lambda_max over all inputs. Throws
/// NotPositiveDefinite if any lambda_min <= 0.
SpectralBand spectral_band_of(std::span<const SymMatrix> as);

struct BandEntry {
  std::size_t index = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool pass = false;
  std::vector<double> offending;
};

struct BandReport {
  bool pass = true;
  std::vector<BandEntry> entries;
};

BandReport validate_band(std::span<const SymMatrix> as, const SpectralBand& band,
                         double tol = 1e-10);

/// Haar-like orthogonal matrix: modified Gram-Schmidt on a Gaussian matrix.
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// Q diag(lambda) Q^T with lambda uniform on [m, M]. When `pinned` and
/// dim >= 2 the smallest draw is replaced by m and the largest by M.
SymMatrix random_spd(std::size_t dim, const SpectralBand& band, bool pinned, Rng& rng);

}  // namespace opmean
