// One line per reproduction criterion; exits non-zero if any fails.

#include <cstdio>
#include <cstdlib>

#include "frlab/verify.hpp"

int main() {
  std::size_t cap = frlab::kDefaultMagicCap;
  if (const char* env = std::getenv("FRLAB_MAGIC_CAP")) cap = std::strtoull(env, nullptr, 10);
  int failed = 0;
  for (const auto& r : frlab::verify::run_all(cap)) {
    std::printf("%s  #%-2d %-42s %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
