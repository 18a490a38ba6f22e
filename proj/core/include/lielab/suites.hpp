#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lielab/records.hpp"
#include "lielab/roots.hpp"

namespace lielab {

struct SuiteParams {
  Family family = Family::A;
  int rank = 1;
  std::uint32_t p = 7;
  std::string chi;            // empty: the suite's default patterns
  std::uint64_t seed = 0;
  std::uint64_t budget = 512;  // max products and max module dimension
  bool timing = false;
};

/// Modules pinned for family resolution stay at or below this dimension whatever the budget.
inline constexpr std::uint64_t kPinnedModuleLimit = 512;

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite) and returns its records sorted by claim. Infeasible work
/// becomes an infeasible record. Bad parameters throw DomainError or ParseError.
std::vector<VerdictRecord> run_suite(const std::string& suite, const SuiteParams& params);

}  // namespace lielab
