#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opmean/statements.hpp"

namespace opmean {

/// A concrete instance on which a statement fails.
struct Witness {
  std::vector<SymMatrix> matrices;
  StatementConfig config;
  double gap_min_eig = 0.0;
  double gap_det = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  /// Instance was supplied by the caller rather than drawn; it is checked with
  /// skip_band_check set.
  bool seeded = false;
  /// The configuration breaks one of the statement's hypotheses.
  bool hypothesis_violating = false;
};

struct FalsifyOptions {
  /// Evaluated first, as trials 0, 1, ...; they count against the budget.
  std::vector<std::vector<SymMatrix>> seeded;
  unsigned threads = 1;
};

struct FalsifyReport {
  std::optional<Witness> witness;  // most negative gap_min_eig among violations
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;
  HypothesisReport hypotheses;
};

/// Random counterexample search. Draws band-respecting instances via
/// draw_instance and trial_stream(seed, index); deterministic given seed.
FalsifyReport run_falsifier(const StatementConfig& cfg, std::uint64_t budget, std::uint64_t seed,
                            const FalsifyOptions& options = {});

std::optional<Witness> falsify(const StatementConfig& cfg, std::uint64_t budget, std::uint64_t seed,
                               const FalsifyOptions& options = {});

/// Greedy local search: perturbs every entry by N(0, radius^2), re-symmetrizes,
/// clamps the spectrum into the band and keeps the candidate only if it lowers
/// gap_min_eig. Never returns a worse witness than `w`.
Witness refine(const Witness& w, int steps, double radius, std::uint64_t seed);

/// Re-runs check on the witness configuration.
Verdict recheck(const Witness& w);

/// Spectrum of `a` clamped into [band.m, band.M].
SymMatrix project_to_band(const SymMatrix& a, const SpectralBand& band);

}  // namespace opmean
