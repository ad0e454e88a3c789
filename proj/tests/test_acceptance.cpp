// End-to-end validation suite: prints one line per criterion and exits
// nonzero if any fails.

#include <cstdio>

#include "spdc/acceptance.hpp"

int main() {
  const auto results = spdc::run_acceptance({});
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
