// Runs every acceptance criterion in order; one PASS/FAIL line each.

#include <iostream>

#include "ellsurf/acceptance.hpp"

int main() {
  int failed = 0;
  ellsurf::run_acceptance_suite([&](const ellsurf::CriterionResult& r) {
    std::cout << ellsurf::format_result_line(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
