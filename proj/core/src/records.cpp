#include "lielab/records.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lielab/errors.hpp"

namespace lielab {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Finding: return "finding";
    default: return "infeasible";
  }
}

Status parse_status(const std::string& s) {
  for (auto st : {Status::Pass, Status::Fail, Status::Finding, Status::Infeasible})
    if (to_string(st) == s) return st;
  throw ParseError("unknown status '" + s + "'");
}

const std::vector<std::string>& known_anchors() {
  static const std::vector<std::string> anchors = {
      "chevalley-basis", "dimension-count", "restricted-structure", "casimir-centrality", "g-element",
      "a-family",        "basis-family",    "spanning",             "simple-dimension",   "chi-representation",
  };
  return anchors;
}

std::string to_json_line(const VerdictRecord& r) {
  nlohmann::json j;
  j["claim"] = r.claim;
  j["anchor"] = r.anchor;
  j["params"] = r.params;
  j["status"] = to_string(r.status);
  j["witness"] = r.witness;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j.dump();
}

VerdictRecord parse_record(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    VerdictRecord r;
    r.claim = j.at("claim").get<std::string>();
    r.anchor = j.at("anchor").get<std::string>();
    const auto& a = known_anchors();
    if (std::find(a.begin(), a.end(), r.anchor) == a.end()) throw ParseError("unknown anchor '" + r.anchor + "'");
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.witness = j.at("witness");
    if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
}

void sort_records(std::vector<VerdictRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const VerdictRecord& a, const VerdictRecord& b) {
    if (a.claim != b.claim) return a.claim < b.claim;
    return nlohmann::json(a.params).dump() < nlohmann::json(b.params).dump();
  });
}

std::string to_jsonl(const std::vector<VerdictRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json_line(r) + "\n";
  return out;
}

std::vector<VerdictRecord> load_records(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<VerdictRecord> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (line.empty()) continue;
      try {
        out.push_back(parse_record(line));
      } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ":" + std::to_string(n) + ": " + e.what());
      }
    }
  }
  return out;
}

std::vector<ClaimSummary> summarize(const std::vector<VerdictRecord>& records) {
  std::map<std::string, ClaimSummary> by;
  for (const auto& r : records) {
    auto& s = by[r.claim];
    s.claim = r.claim;
    s.anchor = r.anchor;
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Fail: ++s.fail; break;
      case Status::Finding: ++s.finding; break;
      case Status::Infeasible: ++s.infeasible; break;
    }
  }
  std::vector<ClaimSummary> out;
  for (auto& [k, v] : by) out.push_back(std::move(v));
  return out;
}

std::string format_summary(const std::vector<ClaimSummary>& summary) {
  std::ostringstream os;
  os << kSummaryFormat << "\n";
  std::size_t fails = 0;
  for (const auto& s : summary) {
    os << (s.fail ? "FAIL " : "     ") << s.claim << " [" << s.anchor << "] pass=" << s.pass << " fail=" << s.fail
       << " finding=" << s.finding << " infeasible=" << s.infeasible << "\n";
    fails += s.fail;
  }
  os << "claims=" << summary.size() << " failed_records=" << fails << "\n";
  return os.str();
}

}  // namespace lielab
