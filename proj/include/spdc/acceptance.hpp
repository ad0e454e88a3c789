#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spdc {

// One end-to-end validation check against the published reference values.
struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceConfig {
  std::string data_dir;  // empty = default data directory
  std::uint64_t seed = 20260826;
};

// Runs the full validation suite.  Each check is independent: exceptions
// are caught and reported as failures, so all results are always returned.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {});

}  // namespace spdc
