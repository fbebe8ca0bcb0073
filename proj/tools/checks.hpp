#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace heis::tools {

// One randomized property check.  `worst` is the largest normalized error
// seen; the check passes when it does not exceed `tolerance`.
struct Check {
  std::string name;
  std::size_t trials = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass() const { return worst <= tolerance; }
};

// triangle inequality, left invariance, dilation, rotation
std::vector<Check> metric_checks(std::size_t trials, std::uint64_t seed);

// wedge and projection identities, decomposition, oscillation, Lipschitz, determinant
std::vector<Check> identity_checks(std::size_t trials, std::uint64_t seed);

// continuity at 5/2, s - kappa(s), improvement interval on a grid of (2, 4]
std::vector<Check> bound_checks(std::size_t grid);

bool all_pass(const std::vector<Check>& checks);

}  // namespace heis::tools
