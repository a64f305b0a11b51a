#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hlink {

inline constexpr const char* kReportSchema = "hlink-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::optional<std::uint32_t> prime;        // overrides the config
  std::optional<std::size_t> simplex_budget;  // overrides the config
  bool timing = false;                        // adds wall-clock seconds (non-deterministic)
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

/// Exit codes: 0 computed verdict, 2 validation, 3 budget, 4 inconsistency.
RunResult run(const nlohmann::json& config, const RunOptions& options = {});
RunResult run_file(const std::filesystem::path& path, const RunOptions& options = {});

/// Canonical report text (pretty JSON plus newline).
std::string report_text(const nlohmann::json& report);

/// FNV-1a 64 of the canonical (sorted-key, compact) config text.
std::string config_hash(const nlohmann::json& config);

struct SuiteRow {
  std::string file;
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
  std::string reason;
};

struct SuiteResult {
  std::vector<SuiteRow> rows;
  std::vector<nlohmann::json> reports;  // aligned with rows; null for unreadable files
  int exit_code = 0;                    // nonzero iff some row fails

  std::string table() const;
  nlohmann::json to_json() const;
};

/// Runs every *.json config in `directory` (non-recursive), ordered by file
/// name; scenarios run on up to `threads` workers.
SuiteResult run_suite(const std::filesystem::path& directory, const RunOptions& options = {},
                      unsigned threads = 1);

}  // namespace hlink
