#ifndef GINV_CLI_REPORT_HPP
#define GINV_CLI_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ginv/oracle.hpp"

namespace ginv::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         // hypothesis or verification failure
  kNoGroupInverse = 2,
  kInputError = 3,      // I/O or malformed input
};

struct SweepRow {
  std::string formula;
  unsigned count = 0;
  unsigned passed = 0;
  double max_error = 0.0;
  std::vector<std::uint64_t> failed_seeds;
};

/// Everything a command prints. Serialises to JSON and parses back unchanged.
struct RunReport {
  std::vector<std::string> command;
  std::string inputs_digest;
  std::string outcome;  // ok, hypothesis_failure, verification_failure, no_group_inverse, error
  int exit_code = kOk;
  std::string message;
  std::optional<ConditionReport> conditions;
  std::map<std::string, Matrix> matrices;
  std::optional<unsigned> index;
  std::optional<std::string> kind;
  std::vector<std::string> absent;
  std::optional<ComparisonVerdict> verdict;
  std::optional<Diagnostics> diagnostics;
  std::vector<SweepRow> sweep;
  double wall_time_ms = 0.0;
};

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace ginv::cli

#endif  // GINV_CLI_REPORT_HPP
