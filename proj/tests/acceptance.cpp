// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>

#include "hkp_cli/suite.hpp"

int main() {
  bool all = true;
  hkp::cli::run_suite([&](const hkp::cli::CriterionResult& c) {
    std::printf("criterion %2d: %s  %s: %s  (%.1fs)\n", c.id, c.pass ? "PASS" : "FAIL", c.title.c_str(),
                c.detail.c_str(), c.seconds);
    std::fflush(stdout);
    all = all && c.pass;
  });
  return all ? 0 : 1;
}
