#pragma once

#include <string>
#include <vector>

#include "opmean/symmat.hpp"

namespace opmean::reference {

/// A published counterexample: two matrices exactly as printed (4 decimals),
/// the band they were claimed to lie in and the printed determinant of the
/// gap RHS - LHS.
struct CounterexamplePair {
  std::string statement_id;
  SymMatrix first;
  SymMatrix second;
  SpectralBand band;
  double printed_det;
  double det_tolerance;  // absorbs the rounding of the printed inputs
};

/// (X nabla Y)^2 <= K (X # Y)^2 with K = K(2, 1) = 9/8.
CounterexamplePair squared_means_pair();

/// A^2 nabla B^2 <= K(3, 0.4) (A # B)^2.
CounterexamplePair power_means_pair();

struct ReproductionRow {
  std::string label;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct Reproduction {
  std::vector<ReproductionRow> rows;
  /// Band validation of the printed matrices against their claimed bands.
  /// These are reported, not asserted.
  std::vector<std::pair<std::string, BandReport>> bands;
  bool all_pass() const;
};

/// Recomputes both counterexample determinants, the Yamazaki comparison at
/// (m, M, n) = (1, 2, 5) and the crossover n, and validates the bands.
Reproduction reproduce();

}  // namespace opmean::reference
