#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opmean/reference.hpp"
#include "opmean/search.hpp"
#include "opmean/statements.hpp"

namespace opmean {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "opmean 0.1.0";

// Matrices are nested arrays of decimal strings with 17 significant digits,
// which parse back to the identical doubles.
Json to_json(const SymMatrix& a);
SymMatrix symmat_from_json(const Json& j);
Json to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

Json to_json(const MapDescriptor& phi);
MapDescriptor map_from_json(const Json& j);

/// Custom scalar/representing functions serialize by name only and are
/// rejected by config_from_json.
Json to_json(const StatementConfig& cfg);
StatementConfig config_from_json(const Json& j);

Json to_json(const MPConstants& k);
Json to_json(const HypothesisReport& h);
Json to_json(const Verdict& v);
Json to_json(const TrialReport& r);
Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json to_json(const FalsifyReport& r);
Json to_json(const reference::Reproduction& r);

/// Envelope written by the command-line tool.
struct RunReport {
  std::vector<std::string> command;
  std::string statement_id;
  Json config;
  Json result;
  std::string version = kVersion;
  /// Only recorded on request, so that reports stay byte-identical.
  std::optional<double> wall_time_ms;
};

Json to_json(const RunReport& r);
RunReport run_report_from_json(const Json& j);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace opmean
