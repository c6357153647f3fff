#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opmean/constants.hpp"
#include "opmean/functions.hpp"
#include "opmean/kubo_ando.hpp"
#include "opmean/linmaps.hpp"
#include "opmean/symmat.hpp"

namespace opmean {

enum class Arity {
  pair,   // A, B
  multi,  // A_1, ..., A_n
};

struct StatementInfo {
  std::string_view id;
  std::string_view lhs;
  std::string_view rhs;
  Arity arity;
  /// False for inequalities that are known to fail in general (Q).
  bool theorem;
  /// Phi and Psi must be unital.
  bool requires_unital;
};

/// Every statement, each checked as LHS <= RHS in the Loewner order.
std::span<const StatementInfo> catalog();

/// Throws ConfigError for an unknown id. `q2sq` is accepted as an alias of
/// `q2` (its config sets p = 2, see default_config).
const StatementInfo& find_statement(std::string_view id);

/// A fully bound instance of one statement. Fields the statement does not use
/// are ignored but kept, so reports record the whole configuration.
struct StatementConfig {
  std::string statement_id = "ando";
  ScalarFunction f;
  ScalarFunction g;
  MeanDescriptor sigma = make_mean(RepresentingFunction::geometric());
  MeanDescriptor tau = make_mean(RepresentingFunction::geometric());
  MapDescriptor phi;
  MapDescriptor psi;
  SpectralBand band{1.0, 2.0};
  double p = 1.0;
  double q = 1.0;
  int n_matrices = 3;
  std::size_t dim = 2;
  bool skip_band_check = false;
  /// Evaluate even when hypotheses fail (used by the falsifier).
  bool allow_broken_hypotheses = false;
  AlmOptions alm;
};

/// Identity maps and functions, geometric means, p = q = 1. The alias `q2sq`
/// resolves to `q2` with p = 2.
StatementConfig default_config(std::string_view id, std::size_t dim,
                               SpectralBand band = SpectralBand{1.0, 2.0});

struct HypothesisReport {
  bool ok = true;
  /// Phi and Psi are unital wherever the statement requires it.
  bool unitality_ok = true;
  std::vector<std::string> failures;
};

/// Checks the statement's hypotheses under `cfg` (unitality, operator
/// monotonicity, concavity, mean ordering, exponent ranges). Throws
/// ConfigError for structural mismatches such as map dimensions.
HypothesisReport check_hypotheses(const StatementConfig& cfg);

struct Verdict {
  bool holds = false;
  double gap_min_eig = 0.0;
  double gap_det = 0.0;
  SymMatrix lhs;
  SymMatrix rhs;
  /// The scalar multiplying the RHS (1 when the statement has none).
  double coefficient = 1.0;
  std::optional<MPConstants> mp;
  double tol = 0.0;
  HypothesisReport hypotheses;
};

/// 1e-10 * (1 + M): slack on band membership of sampled or supplied inputs.
double band_tolerance(const SpectralBand& band);

/// Materialises both sides, then compares them with loewner_leq. Throws
/// BandViolation when matrices leave cfg.band (unless skip_band_check) and
/// HypothesisError when a required map is not unital (unless
/// allow_broken_hypotheses). Other hypothesis failures are only recorded in
/// Verdict::hypotheses.
Verdict check(const StatementConfig& cfg, std::span<const SymMatrix> matrices,
              std::optional<double> tol = std::nullopt);

/// Independent per-trial stream derived from (master seed, trial index).
Rng trial_stream(std::uint64_t seed, std::uint64_t index);

/// Two matrices for pair statements, cfg.n_matrices for multi statements;
/// each drawn by random_spd in cfg.band, pinned with probability 1/2.
std::vector<SymMatrix> draw_instance(const StatementConfig& cfg, Rng& rng);

struct TrialViolation {
  std::uint64_t trial_index = 0;
  double gap_min_eig = 0.0;
  double gap_det = 0.0;
  std::vector<SymMatrix> matrices;
};

struct TrialReport {
  std::string statement_id;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  /// Trials discarded because the configuration breaks a hypothesis.
  std::uint64_t rejected = 0;
  /// Violations among rejected trials; informative only.
  std::uint64_t rejected_violations = 0;
  /// Smallest gap_min_eig observed over all trials.
  double worst_margin = 0.0;
  HypothesisReport hypotheses;
  std::vector<TrialViolation> witnesses;  // first few, in trial order
};

struct TrialOptions {
  unsigned threads = 1;
  std::size_t max_witnesses = 5;
};

/// Deterministic in (cfg, trials, seed) regardless of thread count.
TrialReport run_trials(const StatementConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                       const TrialOptions& options = {});

}  // namespace opmean
