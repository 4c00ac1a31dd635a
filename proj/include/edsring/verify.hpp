#pragma once

#include <string>
#include <vector>

#include "edsring/construction.hpp"

namespace edsring {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first violation, or a count of what was checked
};

// Invariants that hold on any valid configuration, plus pinned values when
// the curve is the reference one. Sized to finish in well under a minute.
std::vector<CheckResult> run_invariant_suite(const Curve& curve, const ConstructionBudget& budget);

// Fixed-width table, one row per check.
std::string format_table(const std::vector<CheckResult>& results);

}  // namespace edsring
