#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lielab {

enum class Status { Pass, Fail, Finding, Infeasible };

std::string to_string(Status s);
Status parse_status(const std::string& s);

/// One verdict of one check. Serialized as a single JSON line with sorted keys.
struct VerdictRecord {
  std::string claim;                          // e.g. "casimir.central"
  std::string anchor;                         // one of known_anchors()
  std::map<std::string, std::string> params;  // enough to re-run the check
  Status status = Status::Fail;
  nlohmann::json witness = nlohmann::json::object();
  std::optional<double> wall_ms;              // only when timing was requested

  bool operator==(const VerdictRecord&) const = default;
};

/// Stable names of the claims records may refer to.
const std::vector<std::string>& known_anchors();

std::string to_json_line(const VerdictRecord& r);
/// Throws ParseError on malformed input or an unknown anchor or status.
VerdictRecord parse_record(const std::string& line);

/// Orders by claim, then by the serialized parameters; stable otherwise.
void sort_records(std::vector<VerdictRecord>& records);

std::string to_jsonl(const std::vector<VerdictRecord>& records);

/// Reads every *.jsonl file of a directory in file-name order. Throws IoError on a missing directory
/// and ParseError on a corrupt line (the message names file and line).
std::vector<VerdictRecord> load_records(const std::filesystem::path& dir);

struct ClaimSummary {
  std::string claim;
  std::string anchor;
  std::size_t pass = 0, fail = 0, finding = 0, infeasible = 0;
};

inline constexpr const char* kSummaryFormat = "lielab-summary v1";

std::vector<ClaimSummary> summarize(const std::vector<VerdictRecord>& records);
std::string format_summary(const std::vector<ClaimSummary>& summary);

}  // namespace lielab
