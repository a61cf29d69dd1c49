// One PASS/FAIL line per acceptance criterion.
#include <cstdio>

#include "symcap/acceptance.hpp"
#include "symcap/sampling.hpp"

int main() {
  const symcap::SuiteResult r = symcap::run_acceptance(symcap::sampling_seed());
  bool ok = true;
  for (const symcap::SuiteCase& c : r.cases) {
    const bool pass = c.pass && c.seconds < 10.0;
    ok = ok && pass;
    std::printf("%s criterion %2d: %s (%.2fs) -- %s\n", pass ? "PASS" : "FAIL", c.criterion, c.name.c_str(), c.seconds,
                c.actual.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", r.passed(), r.cases.size());
  return ok ? 0 : 1;
}
