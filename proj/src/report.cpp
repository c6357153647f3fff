#include "opmean/report.hpp"

#include "opmean/matrix_io.hpp"

namespace opmean {

namespace {

double real_from(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = std::string::npos;
    }
    if (used != s.size()) throw ConfigError("report: bad number '" + s + "'");
    return v;
  }
  return j.get<double>();
}

Json rows_of(std::size_t rows, std::size_t cols, auto&& at) {
  Json out = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(format_real(at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json matrices_json(const std::vector<SymMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

std::vector<SymMatrix> matrices_from(const Json& j) {
  std::vector<SymMatrix> out;
  for (const auto& m : j) out.push_back(symmat_from_json(m));
  return out;
}

}  // namespace

Json to_json(const SymMatrix& a) {
  return rows_of(a.dim(), a.dim(), [&](std::size_t i, std::size_t j) { return a(i, j); });
}

Json to_json(const Matrix& a) {
  return rows_of(a.rows(), a.cols(), [&](std::size_t i, std::size_t j) { return a(i, j); });
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ConfigError("report: matrix must be a nested array");
  Matrix m(j.size(), j.front().size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != m.cols()) throw ConfigError("report: ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = real_from(j[r][c]);
  }
  return m;
}

SymMatrix symmat_from_json(const Json& j) { return SymMatrix::from(matrix_from_json(j)); }

Json to_json(const MapDescriptor& phi) {
  using Kind = MapDescriptor::Kind;
  switch (phi.kind()) {
    case Kind::identity:
      return {{"kind", "identity"}, {"dim", phi.input_dim()}};
    case Kind::compression:
      return {{"kind", "compression"}, {"V", to_json(phi.isometry())}};
    case Kind::pinching:
      return {{"kind", "pinching"}, {"dim", phi.input_dim()}, {"blocks", phi.blocks()}};
    case Kind::normalized_trace:
      return {{"kind", "trace"}, {"dim", phi.input_dim()}};
    case Kind::convex_combination: {
      Json terms = Json::array();
      for (const auto& [w, map] : phi.terms()) terms.push_back({{"weight", w}, {"map", to_json(map)}});
      return {{"kind", "convex"}, {"terms", std::move(terms)}};
    }
    case Kind::scale:
      return {{"kind", "scale"}, {"dim", phi.input_dim()}, {"k", phi.factor()}};
    case Kind::unitalized:
      return {{"kind", "unitalized"}, {"inner", to_json(phi.inner())}};
  }
  return {};
}

MapDescriptor map_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return MapDescriptor::identity(j.at("dim").get<std::size_t>());
  if (kind == "compression") return MapDescriptor::compression(matrix_from_json(j.at("V")));
  if (kind == "pinching")
    return MapDescriptor::pinching(j.at("dim").get<std::size_t>(),
                                   j.at("blocks").get<std::vector<std::vector<std::size_t>>>());
  if (kind == "trace") return MapDescriptor::normalized_trace(j.at("dim").get<std::size_t>());
  if (kind == "convex") {
    std::vector<std::pair<double, MapDescriptor>> terms;
    for (const auto& t : j.at("terms"))
      terms.emplace_back(t.at("weight").get<double>(), map_from_json(t.at("map")));
    return MapDescriptor::convex_combination(std::move(terms));
  }
  if (kind == "scale")
    return MapDescriptor::scale(j.at("dim").get<std::size_t>(), j.at("k").get<double>());
  if (kind == "unitalized") return unitalize(map_from_json(j.at("inner")));
  throw ConfigError("report: unknown map kind '" + kind + "'");
}

Json to_json(const StatementConfig& cfg) {
  return {{"statement_id", cfg.statement_id},
          {"f", cfg.f.name()},
          {"g", cfg.g.name()},
          {"sigma", cfg.sigma.name},
          {"tau", cfg.tau.name},
          {"phi", to_json(cfg.phi)},
          {"psi", to_json(cfg.psi)},
          {"band", {cfg.band.m, cfg.band.M}},
          {"p", cfg.p},
          {"q", cfg.q},
          {"n_matrices", cfg.n_matrices},
          {"dim", cfg.dim},
          {"skip_band_check", cfg.skip_band_check},
          {"allow_broken_hypotheses", cfg.allow_broken_hypotheses},
          {"alm", {{"tol", cfg.alm.tol}, {"max_iter", cfg.alm.max_iter}}}};
}

StatementConfig config_from_json(const Json& j) {
  StatementConfig cfg;
  cfg.statement_id = j.at("statement_id").get<std::string>();
  cfg.f = ScalarFunction::parse(j.at("f").get<std::string>());
  cfg.g = ScalarFunction::parse(j.at("g").get<std::string>());
  cfg.sigma = parse_mean(j.at("sigma").get<std::string>());
  cfg.tau = parse_mean(j.at("tau").get<std::string>());
  cfg.phi = map_from_json(j.at("phi"));
  cfg.psi = map_from_json(j.at("psi"));
  const auto& band = j.at("band");
  cfg.band = SpectralBand::make(band.at(0).get<double>(), band.at(1).get<double>());
  cfg.p = j.at("p").get<double>();
  cfg.q = j.at("q").get<double>();
  cfg.n_matrices = j.at("n_matrices").get<int>();
  cfg.dim = j.at("dim").get<std::size_t>();
  cfg.skip_band_check = j.at("skip_band_check").get<bool>();
  cfg.allow_broken_hypotheses = j.at("allow_broken_hypotheses").get<bool>();
  cfg.alm.tol = j.at("alm").at("tol").get<double>();
  cfg.alm.max_iter = j.at("alm").at("max_iter").get<int>();
  return cfg;
}

Json to_json(const MPConstants& k) {
  return {{"mu_h", k.mu_h},   {"nu_h", k.nu_h},   {"alpha", k.alpha},
          {"mu_g", k.mu_g},   {"nu_g", k.nu_g},   {"gamma", k.gamma},
          {"band", {k.band.m, k.band.M}}};
}

Json to_json(const HypothesisReport& h) {
  return {{"ok", h.ok}, {"unitality_ok", h.unitality_ok}, {"failures", h.failures}};
}

Json to_json(const Verdict& v) {
  Json j = {{"holds", v.holds},
            {"gap_min_eig", v.gap_min_eig},
            {"gap_det", v.gap_det},
            {"lhs", to_json(v.lhs)},
            {"rhs", to_json(v.rhs)},
            {"coefficient", v.coefficient},
            {"tol", v.tol},
            {"hypotheses", to_json(v.hypotheses)}};
  if (v.mp) j["constants"] = to_json(*v.mp);
  return j;
}

Json to_json(const TrialReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"trial_index", w.trial_index},
                         {"gap_min_eig", w.gap_min_eig},
                         {"gap_det", w.gap_det},
                         {"matrices", matrices_json(w.matrices)}});
  return {{"statement_id", r.statement_id},
          {"trials", r.trials},
          {"seed", r.seed},
          {"violations", r.violations},
          {"rejected", r.rejected},
          {"rejected_violations", r.rejected_violations},
          {"worst_margin", r.worst_margin},
          {"hypotheses", to_json(r.hypotheses)},
          {"witnesses", std::move(witnesses)}};
}

Json to_json(const Witness& w) {
  return {{"matrices", matrices_json(w.matrices)},
          {"config", to_json(w.config)},
          {"gap_min_eig", w.gap_min_eig},
          {"gap_det", w.gap_det},
          {"seed", w.seed},
          {"trial_index", w.trial_index},
          {"seeded", w.seeded},
          {"hypothesis_violating", w.hypothesis_violating}};
}

Witness witness_from_json(const Json& j) {
  Witness w;
  w.matrices = matrices_from(j.at("matrices"));
  w.config = config_from_json(j.at("config"));
  w.gap_min_eig = j.at("gap_min_eig").get<double>();
  w.gap_det = j.at("gap_det").get<double>();
  w.seed = j.at("seed").get<std::uint64_t>();
  w.trial_index = j.at("trial_index").get<std::uint64_t>();
  w.seeded = j.at("seeded").get<bool>();
  w.hypothesis_violating = j.at("hypothesis_violating").get<bool>();
  return w;
}

Json to_json(const FalsifyReport& r) {
  return {{"budget", r.budget},
          {"seed", r.seed},
          {"violations", r.violations},
          {"worst_margin", r.worst_margin},
          {"hypotheses", to_json(r.hypotheses)},
          {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
}

Json to_json(const reference::Reproduction& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"label", row.label},
                    {"computed", row.computed},
                    {"expected", row.expected},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass},
                    {"note", row.note}});
  Json bands = Json::array();
  for (const auto& [label, report] : r.bands) {
    Json entries = Json::array();
    for (const auto& e : report.entries)
      entries.push_back({{"index", e.index},
                         {"lambda_min", e.lambda_min},
                         {"lambda_max", e.lambda_max},
                         {"pass", e.pass},
                         {"offending", e.offending}});
    bands.push_back({{"label", label}, {"pass", report.pass}, {"entries", std::move(entries)}});
  }
  return {{"rows", std::move(rows)}, {"bands", std::move(bands)}, {"all_pass", r.all_pass()}};
}

Json to_json(const RunReport& r) {
  Json j = {{"command", r.command},
            {"statement_id", r.statement_id},
            {"config", r.config},
            {"result", r.result},
            {"version", r.version}};
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j;
}

RunReport run_report_from_json(const Json& j) {
  RunReport r;
  r.command = j.at("command").get<std::vector<std::string>>();
  r.statement_id = j.at("statement_id").get<std::string>();
  r.config = j.at("config");
  r.result = j.at("result");
  r.version = j.at("version").get<std::string>();
  if (j.contains("wall_time_ms")) r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace opmean
