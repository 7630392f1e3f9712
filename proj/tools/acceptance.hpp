#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stein::cli {

struct AcceptanceOptions {
  std::uint64_t seed = 7;
  bool fast = false;     // n / 100 and 6-sigma gates
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every acceptance criterion in order, printing one PASS/FAIL line each to `log`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace stein::cli
