#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vrvw {

struct IdentityResult {
  std::string name;
  double max_err = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Runs the pointwise-algebra identity battery on `trials` seeded random
/// samples.  `inject_bug` is a testing hook that deliberately breaks the named
/// identity ("dot_bracket_sign") so failure reporting can be exercised.
std::vector<IdentityResult> run_algebra_checks(int trials, std::uint64_t seed,
                                               const std::string& inject_bug = "");

}  // namespace vrvw
