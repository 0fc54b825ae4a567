#pragma once

// The invariant suite behind `conflab checks`.

#include <cstdint>
#include <string>
#include <vector>

namespace conflab {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // measured quantity
  double limit = 0.0;  // bound it is compared against
  std::string detail;
};

/// Projection, adjoint, cancellation, two-path, isometry, ball-separation,
/// smoothness and witness checks at small sizes (a few seconds in total).
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed);

}  // namespace conflab
