#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opmean/constants.hpp"
#include "opmean/error.hpp"
#include "opmean/matrix_io.hpp"
#include "opmean/reference.hpp"
#include "opmean/report.hpp"
#include "opmean/search.hpp"
#include "opmean/statements.hpp"

namespace {

using namespace opmean;

enum class Format { text, json };

struct Common {
  std::string band;
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  std::optional<std::string> sigma, tau, phi, psi, f, g;
  std::optional<double> p, q;
  std::optional<int> n_matrices;
  bool skip_band_check = false;
  bool seed_paper = false;
  std::vector<std::string> matrices;
  std::string report;
  std::string format = "text";
  unsigned threads = 1;
  bool timing = false;
};

struct Outcome {
  int exit_code = 0;
  std::string statement_id;
  Json config;
  Json result;
  std::string text;
};

SpectralBand parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--band expects m:M, got '" + text + "'");
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    const double m = std::stod(lo, &u1);
    const double M = std::stod(hi, &u2);
    if (u1 != lo.size() || u2 != hi.size()) throw std::invalid_argument(text);
    return SpectralBand::make(m, M);
  } catch (const std::logic_error&) {
    throw ConfigError("--band expects m:M, got '" + text + "'");
  }
}

std::optional<reference::CounterexamplePair> published_pair(const std::string& id) {
  const StatementInfo& info = find_statement(id);
  if (info.id == "Q") return reference::squared_means_pair();
  if (info.id == "q2") return reference::power_means_pair();
  return std::nullopt;
}

StatementConfig build_config(const std::string& id, const Common& c) {
  std::optional<SpectralBand> band;
  if (!c.band.empty()) band = parse_band(c.band);
  if (c.seed_paper) {
    const auto pair = published_pair(id);
    if (!pair) throw ConfigError("--seed-paper: no embedded instance for '" + id + "'");
    if (c.dim != 2) throw ConfigError("--seed-paper: embedded matrices are 2x2");
    if (!band) band = pair->band;
  }
  StatementConfig cfg = default_config(id, c.dim, band.value_or(SpectralBand{1.0, 2.0}));
  if (c.sigma) cfg.sigma = parse_mean(*c.sigma);
  if (c.tau) cfg.tau = parse_mean(*c.tau);
  if (c.f) cfg.f = ScalarFunction::parse(*c.f);
  if (c.g) cfg.g = ScalarFunction::parse(*c.g);
  if (c.phi) cfg.phi = MapDescriptor::parse(*c.phi, c.dim);
  if (c.psi) cfg.psi = MapDescriptor::parse(*c.psi, c.dim);
  if (c.p) cfg.p = *c.p;
  if (c.q) cfg.q = *c.q;
  if (c.n_matrices) cfg.n_matrices = *c.n_matrices;
  cfg.skip_band_check = c.skip_band_check;
  return cfg;
}

std::vector<SymMatrix> load_all(const std::vector<std::string>& paths) {
  std::vector<SymMatrix> out;
  for (const auto& path : paths)
    out.push_back(load_matrix(path, [&](const std::string& w) {
      std::cerr << "warning: " << path << ": " << w << '\n';
    }));
  return out;
}

std::vector<SymMatrix> published_matrices(const std::string& id) {
  const auto pair = published_pair(id);
  return {pair->first, pair->second};
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string hypotheses_text(const HypothesisReport& h) {
  if (h.ok) return "hypotheses   satisfied\n";
  std::string s = "hypotheses   FAIL\n";
  for (const auto& f : h.failures) s += "  - " + f + '\n';
  return s;
}

Outcome cmd_check(const std::string& id, const Common& c) {
  StatementConfig cfg = build_config(id, c);
  std::vector<SymMatrix> inputs;
  if (!c.matrices.empty()) {
    inputs = load_all(c.matrices);
  } else if (c.seed_paper) {
    inputs = published_matrices(id);
  } else {
    Rng rng = trial_stream(c.seed, 0);
    inputs = draw_instance(cfg, rng);
  }
  const Verdict v = check(cfg, inputs);
  const StatementInfo& info = find_statement(id);

  std::ostringstream t;
  t << "statement    " << id << ": " << info.lhs << " <= " << info.rhs << '\n'
    << "verdict      " << (v.holds ? "holds" : "FAILS") << '\n'
    << "gap_min_eig  " << num(v.gap_min_eig) << '\n'
    << "gap_det      " << num(v.gap_det) << '\n'
    << "coefficient  " << num(v.coefficient) << '\n'
    << "tolerance    " << num(v.tol) << '\n'
    << hypotheses_text(v.hypotheses);

  Json result = to_json(v);
  result["inputs"] = Json::array();
  for (const auto& m : inputs) result["inputs"].push_back(to_json(m));
  return {v.holds ? 0 : 1, cfg.statement_id, to_json(cfg), std::move(result), t.str()};
}

Outcome cmd_trials(const std::string& id, std::uint64_t trials, const Common& c) {
  const StatementConfig cfg = build_config(id, c);
  TrialOptions options;
  options.threads = c.threads;
  const TrialReport r = run_trials(cfg, trials, c.seed, options);
  const bool clean = r.hypotheses.ok && r.violations == 0;

  std::ostringstream t;
  t << "statement    " << id << '\n'
    << "trials       " << r.trials << " (seed " << r.seed << ")\n"
    << "violations   " << r.violations << '\n'
    << "rejected     " << r.rejected;
  if (r.rejected > 0) t << " (" << r.rejected_violations << " would-be violations)";
  t << '\n' << "worst_margin " << num(r.worst_margin) << '\n' << hypotheses_text(r.hypotheses);
  for (const auto& w : r.witnesses)
    t << "witness      trial " << w.trial_index << ", gap_min_eig " << num(w.gap_min_eig) << '\n';
  return {clean ? 0 : 1, cfg.statement_id, to_json(cfg), to_json(r), t.str()};
}

Outcome cmd_falsify(const std::string& id, std::uint64_t budget, bool expect_violation, int refine_steps,
                    double refine_radius, const Common& c) {
  StatementConfig cfg = build_config(id, c);
  cfg.allow_broken_hypotheses = true;
  FalsifyOptions options;
  options.threads = c.threads;
  if (c.seed_paper) options.seeded.push_back(published_matrices(id));
  if (!c.matrices.empty()) options.seeded.push_back(load_all(c.matrices));
  FalsifyReport r = run_falsifier(cfg, budget, c.seed, options);
  if (r.witness && refine_steps > 0) r.witness = refine(*r.witness, refine_steps, refine_radius, c.seed);

  std::ostringstream t;
  t << "statement    " << id << '\n'
    << "budget       " << r.budget << " (seed " << r.seed << ")\n"
    << "violations   " << r.violations << '\n'
    << "worst_margin " << num(r.worst_margin) << '\n'
    << hypotheses_text(r.hypotheses);
  if (r.witness) {
    const Witness& w = *r.witness;
    t << "witness      trial " << w.trial_index << (w.seeded ? " (seeded)" : "")
      << (w.hypothesis_violating ? " (hypotheses broken)" : "") << '\n'
      << "gap_min_eig  " << num(w.gap_min_eig) << '\n'
      << "gap_det      " << num(w.gap_det) << '\n';
    for (std::size_t i = 0; i < w.matrices.size(); ++i)
      t << "matrix " << i << '\n' << format_matrix(w.matrices[i]);
  } else {
    t << "witness      none\n";
  }
  const bool found = r.witness.has_value();
  return {found == expect_violation ? 0 : 1, cfg.statement_id, to_json(cfg), to_json(r), t.str()};
}

Outcome cmd_constants(const std::string& band_text, int n, double eps) {
  const SpectralBand band = parse_band(band_text.empty() ? "1:2" : band_text);
  const bool flat = band.degenerate();
  const double k = kantorovich(band);
  const double ps = polya_szego_coeff(band);
  const double yam = yamazaki_coeff(band, n);
  const double wk = flat ? 1.0 : weighted_kantorovich(band.m / band.M, band.M / band.m, eps);
  const double ratio = band.M / band.m;

  std::ostringstream t;
  t << "band                 [" << num(band.m) << ", " << num(band.M) << "]\n"
    << "kantorovich          " << num(k) << '\n'
    << "polya_szego          " << num(ps) << '\n'
    << std::left << std::setw(21) << "yamazaki(n=" + std::to_string(n) + ")" << num(yam) << (yam <= ratio ? " <= " : " > ") << "M/m = "
    << num(ratio) << '\n'
    << "weighted_kantorovich " << num(wk) << " (eps " << num(eps) << ")\n";
  Json result = {{"kantorovich", k},
                 {"polya_szego", ps},
                 {"yamazaki", yam},
                 {"yamazaki_n", n},
                 {"yamazaki_le_ratio", yam <= ratio},
                 {"weighted_kantorovich", wk},
                 {"eps", eps}};
  if (!flat) {
    result["yamazaki_crossover"] = yamazaki_crossover(band);
    t << "yamazaki crossover   n = " << yamazaki_crossover(band) << '\n';
  }
  Json config = {{"band", {band.m, band.M}}, {"n", n}, {"eps", eps}};
  return {0, "", std::move(config), std::move(result), t.str()};
}

Outcome cmd_reproduce() {
  const reference::Reproduction r = reference::reproduce();
  std::ostringstream t;
  for (const auto& row : r.rows) {
    t << (row.pass ? "[PASS] " : "[FAIL] ") << row.label << ": " << num(row.computed)
      << " (expected " << num(row.expected);
    if (row.tolerance > 0.0) t << " +/- " << num(row.tolerance);
    t << ')';
    if (!row.note.empty()) t << "  " << row.note;
    t << '\n';
  }
  for (const auto& [label, report] : r.bands) {
    t << "band check " << label << ": " << (report.pass ? "inside" : "OUTSIDE") << '\n';
    for (const auto& e : report.entries)
      t << "  matrix " << e.index << ": spectrum [" << num(e.lambda_min) << ", " << num(e.lambda_max)
        << "]" << (e.pass ? "" : " outside") << '\n';
  }
  return {r.all_pass() ? 0 : 1, "", Json::object(), to_json(r), t.str()};
}

void emit(const Outcome& o, const std::vector<std::string>& command, const std::string& format,
          const std::string& report_path, std::optional<double> wall_ms) {
  RunReport report;
  report.command = command;
  report.statement_id = o.statement_id;
  report.config = o.config;
  report.result = o.result;
  report.wall_time_ms = wall_ms;
  const std::string json = dump(to_json(report));
  if (format == "json")
    std::cout << json;
  else
    std::cout << o.text;
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write report '" + report_path + "'");
    out << json;
  }
}

void add_common(CLI::App* sub, Common& c, bool with_matrices) {
  sub->add_option("--band", c.band, "spectral band m:M (default 1:2)");
  sub->add_option("--dim", c.dim, "matrix dimension")->check(CLI::Range(1, 16));
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--sigma", c.sigma, "mean sigma: arithmetic|geometric|harmonic[:w]");
  sub->add_option("--tau", c.tau, "mean tau");
  sub->add_option("--phi", c.phi, "map Phi: identity|trace|scale:k|pinch:k|compress:k|compress:<file>|mix:w");
  sub->add_option("--psi", c.psi, "map Psi");
  sub->add_option("--f", c.f, "function f: identity|power:p|scaled-power:c:p|exp-minus-one");
  sub->add_option("--g", c.g, "function g");
  sub->add_option("--p", c.p, "exponent p");
  sub->add_option("--q", c.q, "exponent q");
  sub->add_option("--n-matrices", c.n_matrices, "number of matrices for multi-matrix statements")
      ->check(CLI::Range(2, 8));
  sub->add_flag("--skip-band-check", c.skip_band_check, "accept inputs outside the band");
  sub->add_flag("--seed-paper", c.seed_paper, "use the embedded counterexample matrices (Q, q2)");
  if (with_matrices) sub->add_option("--matrices", c.matrices, "input matrix files");
  sub->add_option("--report", c.report, "write a JSON report to this path");
  sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_flag("--timing", c.timing, "record wall time in the report");
}

int run(int argc, char** argv) {
  CLI::App app{"Operator mean inequalities: checks, random trials and counterexample search"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  std::string id;
  std::uint64_t trials = 1000;
  bool expect_violation = false;
  int refine_steps = 0;
  double refine_radius = 1e-3;

  auto* check_cmd = app.add_subcommand("check", "check one instance of a statement");
  check_cmd->add_option("statement", id, "statement id")->required();
  add_common(check_cmd, common, true);

  auto* trials_cmd = app.add_subcommand("trials", "seeded random trials of a statement");
  trials_cmd->add_option("statement", id, "statement id")->required();
  trials_cmd->add_option("--trials", trials, "number of trials");
  add_common(trials_cmd, common, false);

  auto* falsify_cmd = app.add_subcommand("falsify", "random counterexample search");
  falsify_cmd->add_option("statement", id, "statement id")->required();
  falsify_cmd->add_option("--budget,--trials", trials, "number of instances to try");
  falsify_cmd->add_flag("--expect-violation", expect_violation, "exit 0 only if a witness is found");
  falsify_cmd->add_option("--refine", refine_steps, "local refinement steps for the witness");
  falsify_cmd->add_option("--radius", refine_radius, "refinement perturbation size");
  add_common(falsify_cmd, common, true);

  std::string band_text;
  int n = 5;
  double eps = 0.5;
  auto* constants_cmd = app.add_subcommand("constants", "reverse-inequality constants of a band");
  constants_cmd->add_option("--band", band_text, "spectral band m:M (default 1:2)");
  constants_cmd->add_option("--n", n, "number of matrices for the Yamazaki factor")->check(CLI::Range(2, 1000));
  constants_cmd->add_option("--eps", eps, "weight of the weighted geometric mean")
      ->check(CLI::Range(0.0, 1.0));
  constants_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));
  constants_cmd->add_option("--report", common.report);

  std::string mean_name;
  std::vector<std::string> files;
  auto* mean_cmd = app.add_subcommand("mean", "mean of matrices read from files");
  mean_cmd->add_option("mean", mean_name, "arithmetic|geometric|harmonic[:w] or alm")->required();
  mean_cmd->add_option("files", files, "matrix files")->required();

  auto* reproduce_cmd = app.add_subcommand("reproduce", "recompute the published counterexamples");
  reproduce_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));
  reproduce_cmd->add_option("--report", common.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::string> command(argv + 1, argv + argc);
  try {
    if (mean_cmd->parsed()) {
      const std::vector<SymMatrix> ms = load_all(files);
      if (mean_name == "alm") {
        write_matrix(std::cout, alm_mean(ms));
      } else {
        if (ms.size() != 2) throw ConfigError("mean: binary means take exactly two files");
        write_matrix(std::cout, mean(parse_mean(mean_name), ms[0], ms[1]));
      }
      return 0;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    if (check_cmd->parsed())
      outcome = cmd_check(id, common);
    else if (trials_cmd->parsed())
      outcome = cmd_trials(id, trials, common);
    else if (falsify_cmd->parsed())
      outcome = cmd_falsify(id, trials, expect_violation, refine_steps, refine_radius, common);
    else if (constants_cmd->parsed())
      outcome = cmd_constants(band_text, n, eps);
    else
      outcome = cmd_reproduce();
    std::optional<double> wall;
    if (common.timing)
      wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(outcome, command, common.format, common.report, wall);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
