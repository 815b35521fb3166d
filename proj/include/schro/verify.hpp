#pragma once

#include <string>
#include <vector>

namespace schro {

struct VerifyOptions {
  bool fast = false;    // restrict to the quick N=1 analytic subset
  int dim_filter = 0;   // 0 = all dimensions
  unsigned seed = 0;    // seeds the randomized draws
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool ran = false;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

/// Runs the acceptance criteria and returns one result per criterion.
/// Criteria outside the fast subset / dimension filter report ran = false.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt);

/// Prints one line per criterion; returns the process exit code (0 when
/// every executed criterion passed, 1 otherwise).
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace schro
