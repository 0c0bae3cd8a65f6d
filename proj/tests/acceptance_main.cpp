// Acceptance battery runner: one line per criterion, nonzero exit on any
// failure, wall-clock budget enforced.

#include <chrono>
#include <cstdio>

#include "finsler/acceptance.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = finsler::run_acceptance();
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%s  criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
  }

  const bool in_budget = total < 60.0;
  std::printf("%s  wall clock %.2f s (budget 60 s)\n", in_budget ? "PASS" : "FAIL", total);
  std::printf("%s\n", all_pass && in_budget ? "acceptance: all criteria passed"
                                            : "acceptance: FAILURES present");
  return all_pass && in_budget ? 0 : 1;
}
