#pragma once

// Limit-recovery suite: nine checks that the transport stack reproduces
// known closed-form or reference behavior at pinned tolerances. Shared by
// the acceptance test binary and the `smqt limits` CLI subcommand.

#include <iosfwd>
#include <string>
#include <vector>

namespace smqt {

struct LimitResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every check; progress (if given) receives one "[PASS]/[FAIL] name:
// detail" line per check as it completes.
std::vector<LimitResult> run_limit_suite(std::ostream* progress = nullptr);

}  // namespace smqt
