#pragma once

#include <string>
#include <vector>

namespace orthobound::verify {

// One checked inequality, normalized so that pass means lhs >= rhs (strict
// for the monotonicity cases). Proximity checks are expressed with
// lhs = allowed tolerance and rhs = measured gap.
struct Case {
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool pass = false;
  bool strict = false;
};

struct Report {
  std::string suite;
  std::vector<Case> cases;
  bool all_pass = false;
};

// Suites runnable individually or, via "all", as the full value sheet.
// An n-range filter (inclusive) restricts the dimension grids of the
// suites that have one; lo = 0 keeps each suite's default grid.
Report run_suite(const std::string& name, int n_lo = 0, int n_hi = 0);

const std::vector<std::string>& suite_names();

}  // namespace orthobound::verify
