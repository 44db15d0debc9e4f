// Acceptance gate: runs every limit-recovery and invariant criterion at its
// stated tolerance and prints one PASS/FAIL line per criterion. Exit status is
// the number of failed criteria, so the binary doubles as a ctest entry and a
// quick command-line health check.

#include <cstdio>
#include <iostream>

#include "smqt/limits.hpp"

int main() {
  std::cout << "acceptance: limit recovery and invariant suite\n";
  const std::vector<smqt::LimitResult> results =
      smqt::run_limit_suite(&std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  if (failed == 0)
    std::cout << "acceptance: all " << results.size() << " criteria passed\n";
  else
    std::cout << "acceptance: " << failed << " of " << results.size()
              << " criteria FAILED\n";
  return failed;
}
