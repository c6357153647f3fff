#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "opmean/symmat.hpp"

namespace opmean {

/// Called with a human-readable message when an input matrix is noticeably
/// asymmetric (max |A_ij - A_ji| > 1e-9) and gets averaged.
using WarningSink = std::function<void(const std::string&)>;

/// Matrix text format: first line `n`, then n lines of n whitespace-separated
/// decimals. The result is symmetrized by averaging. Throws ConfigError on
/// malformed input.
SymMatrix read_matrix(std::istream& in, const WarningSink& warn = {});
SymMatrix load_matrix(const std::string& path, const WarningSink& warn = {});

/// Like read_matrix, but the header may also be `rows cols` and no symmetry
/// is imposed.
Matrix read_general_matrix(std::istream& in);

/// Writes in the matrix text format with 17 significant digits, so reading
/// the output back reproduces every entry exactly.
void write_matrix(std::ostream& out, const SymMatrix& a);
std::string format_matrix(const SymMatrix& a);

/// Shortest-exact decimal rendering used by reports (17 significant digits).
std::string format_real(double v);

}  // namespace opmean
