#pragma once

// Run configuration and report assembly behind the command-line tool. Reports
// are JSON; everything except the `timestamp` field is a pure function of the
// configuration, independent of the thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "entropic/annexe.hpp"
#include "entropic/domain.hpp"
#include "entropic/event_index.hpp"
#include "entropic/models.hpp"

namespace entropic {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitEnumeration = 3,
  kExitRun = 4,
  kExitIo = 5,
};

struct RunConfig {
  std::string model = "xor";  // builtin model, ignored when program_path is set
  std::string program_path;
  std::string oracle;  // required with program_path
  int n = 8;
  int alpha = 2;
  EventFilter filter = EventFilter::Essential;
  bool trace_profile = false;
  bool volume_profile = false;
  std::string input;  // word for the trace profile
  std::string json_path;
  std::string csv_path;         // trace profile rows
  std::string volume_csv_path;  // volume profile rows
  std::size_t cap = kDefaultEnumerationCap;
  int threads = 0;  // 0: all available
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

/// Applies one `key=value` setting; keys mirror the long flag names.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
/// Reads `key=value` lines; blank lines and lines starting with `#` are skipped.
void apply_config_file(RunConfig& config, const std::string& path);
/// ENTROPIC_CAP, when set, overrides the enumeration cap.
void apply_environment(RunConfig& config);
/// Throws ConfigError on an inconsistent configuration. Runs before enumeration.
void validate_config(const RunConfig& config);

struct ResolvedModel {
  Program program;
  OracleKind oracle;
  std::string name;
};
ResolvedModel resolve_model(const RunConfig& config);

struct AnalyzeResult {
  Json report;
  bool ok = true;
  std::string trace_csv;
  std::string volume_csv;
};

AnalyzeResult analyze(const RunConfig& config);

Json config_json(const RunConfig& config);
Json check_json(const BoundCheck& check);
Json bound_chain_json(const BoundChainReport& report);

/// Same report with the timestamp removed, for comparisons.
Json strip_timestamp(Json report);
std::string utc_timestamp();

}  // namespace entropic
