// Acceptance gate: every criterion printed as one pass/fail line with its
// runtime.  Exit 0 only if every criterion holds.

#include <cstdio>

#include "spencer/selftest/criteria.hpp"

int main() {
  const auto res = spencer::selftest::run_selftest();
  for (const auto& c : res.criteria) {
    if (c.limit_seconds > 0)
      std::printf("[%s] %-5s %s (%.2fs / limit %.0fs)\n", c.pass ? "PASS" : "FAIL",
                  c.id.c_str(), c.description.c_str(), c.elapsed_seconds, c.limit_seconds);
    else
      std::printf("[%s] %-5s %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                  c.description.c_str(), c.elapsed_seconds);
    if (!c.details.empty()) std::printf("         %s\n", c.details.c_str());
  }
  std::printf("%s\n", res.all_passed ? "ACCEPTANCE: all criteria passed"
                                     : "ACCEPTANCE: FAILURES PRESENT");
  return res.all_passed ? 0 : 1;
}
