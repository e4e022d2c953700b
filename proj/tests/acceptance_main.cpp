// Acceptance suite: runs every criterion at its stated scale and tolerance
// and prints one pass/fail line per criterion. Exit code = number of
// failures.

#include <cstdio>
#include <functional>
#include <vector>

#include "bflights/verify.hpp"

int main() {
  using namespace bflights;
  VerifyOptions opt;  // preset seeds, full desk scale, hardware workers
  const std::vector<std::function<CriterionResult(const VerifyOptions&)>> criteria = {
      verify_line2d,  verify_plane3d,     verify_koch,   verify_saw,
      verify_prop22,  verify_level_hit,   verify_determinism, verify_oracles,
  };
  int failures = 0;
  double total = 0.0;
  for (const auto& run : criteria) {
    const CriterionResult r = run(opt);
    std::printf("[%s] criterion %d (%s): %s  [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    failures += r.pass ? 0 : 1;
    total += r.seconds;
  }
  std::printf("%d/8 criteria passed in %.1fs\n", 8 - failures, total);
  return failures;
}
