#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fmw {

struct VerifyOptions {
  int max_modes = 6;
  int trials = 20;
  std::uint64_t seed = 7;
};

/// Outcome of one invariant suite: `worst` is the largest observed deviation
/// (or smallest margin, for lower bounds) against `tolerance`.
struct CheckResult {
  std::string name;
  bool passed = true;
  double worst = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string detail;
};

/// Cross-checks the covariance-matrix pipeline against the Fock oracle on
/// seeded random ensembles with 2..max_modes modes.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace fmw
