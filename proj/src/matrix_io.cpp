#include "opmean/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace opmean {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double to_real(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != tok.size() || !std::isfinite(v))
    throw ConfigError("matrix file: '" + tok + "' is not a finite number");
  return v;
}

std::size_t to_size(const std::string& tok) {
  const double v = to_real(tok);
  if (v < 1.0 || v != std::floor(v)) throw ConfigError("matrix file: bad dimension '" + tok + "'");
  return static_cast<std::size_t>(v);
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line))
    if (!tokens_of(line).empty()) return true;
  return false;
}

Matrix read_body(std::istream& in, std::size_t rows, std::size_t cols) {
  std::vector<double> values;
  values.reserve(rows * cols);
  std::string line;
  while (values.size() < rows * cols && next_content_line(in, line))
    for (const auto& tok : tokens_of(line)) values.push_back(to_real(tok));
  if (values.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix file: expected " << rows * cols << " entries, found " << values.size();
    throw ConfigError(os.str());
  }
  if (next_content_line(in, line)) throw ConfigError("matrix file: trailing data after the matrix");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = values[i * cols + j];
  return m;
}

}  // namespace

Matrix read_general_matrix(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ConfigError("matrix file: empty input");
  const auto header = tokens_of(line);
  if (header.size() == 1) {
    const std::size_t n = to_size(header[0]);
    return read_body(in, n, n);
  }
  if (header.size() == 2) return read_body(in, to_size(header[0]), to_size(header[1]));
  throw ConfigError("matrix file: header must be `n` or `rows cols`");
}

SymMatrix read_matrix(std::istream& in, const WarningSink& warn) {
  std::string line;
  if (!next_content_line(in, line)) throw ConfigError("matrix file: empty input");
  const auto header = tokens_of(line);
  if (header.size() != 1) throw ConfigError("matrix file: first line must be the dimension n");
  const std::size_t n = to_size(header[0]);
  const Matrix m = read_body(in, n, n);
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > 1e-9 && warn) {
    std::ostringstream os;
    os << "matrix is not symmetric (max |A_ij - A_ji| = " << asym << "); averaging";
    warn(os.str());
  }
  return SymMatrix::from(m);
}

SymMatrix load_matrix(const std::string& path, const WarningSink& warn) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  try {
    return read_matrix(in, warn);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
  out << a.dim() << '\n';
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) out << ' ';
      out << format_real(a(i, j));
    }
    out << '\n';
  }
}

std::string format_matrix(const SymMatrix& a) {
  std::ostringstream os;
  write_matrix(os, a);
  return os.str();
}

}  // namespace opmean
