#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "tailorder/verify.hpp"

// Runs the verification suite and prints one line per criterion.
// Usage: tailorder_acceptance [seed] [quick]
int main(int argc, char** argv) {
  std::uint64_t seed = 2;
  auto suite = tailorder::verify::Suite::full;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2 && std::strcmp(argv[2], "quick") == 0)
    suite = tailorder::verify::Suite::quick;

  const auto results = tailorder::verify::run_all(suite, seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s %2d %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      if (!c.pass)
        std::printf("      - %s: observed=%.10g target=%.10g tol=%.3g  FAIL\n",
                    c.label.c_str(), c.observed, c.target, c.tol);
    }
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n",
              static_cast<int>(results.size()) - failures, results.size(),
              static_cast<unsigned long long>(seed));
  return failures;
}
