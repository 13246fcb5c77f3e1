#pragma once

// Cross-checks of the simulator against the closed-form oracle, grouped into
// invariant families. Used by `eavesim verify` and the acceptance suite.

#include "eavesim/attack_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eavesim {

struct VerifyOptions {
  int samples = 10000;             // random vectors for the recursion check
  int max_eves = 8;                // largest n drawn at random
  int brute_force_max_eves = 5;    // largest n simulated against the recursion
  int brute_force_draws = 40;      // simulated draws per n
  CircuitFault fault = CircuitFault::none;
};

struct FamilyResult {
  std::string name;
  bool passed = true;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
  std::string worst_point;  // parameter point of the largest deviation
  double seconds = 0.0;
};

struct VerificationSummary {
  std::vector<FamilyResult> families;

  bool passed() const;
  const FamilyResult* find(const std::string& name) const;
};

VerificationSummary run_verification(const VerifyOptions& options, std::uint64_t seed);

}  // namespace eavesim
