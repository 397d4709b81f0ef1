// Acceptance gate: runs every top-level criterion and prints one line each.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "capiso/suites.hpp"

int main(int argc, char** argv) {
  capiso::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (std::strcmp(argv[i], "--resolution") == 0 && i + 1 < argc) {
      opts.resolution = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--mc-samples") == 0 && i + 1 < argc) {
      opts.mc_samples = std::atol(argv[++i]);
    } else {
      std::fprintf(stderr,
                   "usage: %s [--seed N] [--resolution N] [--mc-samples N]\n",
                   argv[0]);
      return 2;
    }
  }
  int failures = 0;
  capiso::run_acceptance(opts, [&](const capiso::CriterionResult& r) {
    std::printf("[C%02d] %-45s %s\n       %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  });
  std::printf("%d/13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
