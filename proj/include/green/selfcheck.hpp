#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace green {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfcheckOptions {
  std::uint64_t seed = 12345;
  // fault-injection hook: scales every bilinear kernel value on the
  // recursion path of the equivalence check by (1 + eps); nonzero values
  // must make that check fail
  double kernel_perturbation = 0.0;
};

// runs the acceptance suite; one result per criterion, ids 1..11. A non-empty
// `only` restricts the run to the listed ids (order preserved, unknown ids
// ignored); the report always keeps original ids.
std::vector<CriterionResult> run_selfcheck(const SelfcheckOptions& opts = {},
                                           const std::vector<int>& only = {});

}  // namespace green
