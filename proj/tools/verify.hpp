#pragma once

#include <string>
#include <vector>

#include "fthresh/testideal.hpp"

namespace fthresh::cli {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Runs the invariant suite for f with bound B: candidate shape, strict
/// descent, closure under λ ↦ frac(pλ), the integer shift rule, the ν
/// sandwich for e = 1..4, Jacobian containment and the naive Frobenius-root
/// oracle at λ = c/p^e (e <= 2).
std::vector<CheckResult> verify_invariants(const Polynomial& f, std::uint64_t bound);

}  // namespace fthresh::cli
