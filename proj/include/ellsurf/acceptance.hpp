#pragma once

// The reproduction suite: eleven exact checks of the results on the family
// y^2 = x (x - f^2)(x - g^2), shared by the CLI (verify-paper) and the
// acceptance test binary.

#include <functional>
#include <string>
#include <vector>

namespace ellsurf {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string tolerance = "exact";
  std::string detail;               // what was checked, or the first mismatch
  std::vector<std::string> notes;   // logged observations that are not asserted
};

/// Titles of the criteria, index 0 is criterion 1.
const std::vector<std::string>& acceptance_titles();

/// Runs one criterion (1..11). Exceptions are caught and reported as FAIL.
CriterionResult run_criterion(int id);

/// All criteria in order. `progress` is called after each one.
std::vector<CriterionResult> run_acceptance_suite(
    const std::function<void(const CriterionResult&)>& progress = {});

/// "PASS  [ 3] fiber table of the classic triple  (exact)  detail".
std::string format_result_line(const CriterionResult& r);

}  // namespace ellsurf
