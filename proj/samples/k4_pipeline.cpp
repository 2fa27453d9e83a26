// End-to-end walk through the K4 code: labelings, bounds, encode, repair,
// reconstruct. Returns nonzero if any step disagrees with the expected values.

#include <cstdio>
#include <string>
#include <vector>

#include "frlab/frlab.hpp"

int main() {
  using namespace frlab;
  const auto system = to_set_system(complete_graph(4));
  const auto code = from_set_system(system);
  int failures = 0;
  auto expect = [&](bool ok, const char* what) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what);
    failures += ok ? 0 : 1;
  };

  const BlockLabeling sigma1({3, 1, 6, 5, 2, 4});
  const BlockLabeling sigma2({3, 1, 5, 6, 2, 4});
  expect(popularity(system, sigma1) == PopularityVector{10, 10, 10, 12}, "sigma1 popularity 10 10 10 12");
  expect(popularity(system, sigma2) == PopularityVector{9, 11, 11, 11}, "sigma2 popularity 9 11 11 11");
  expect(variance(system, sigma1) == Rational(3) && variance(system, sigma2) == Rational(3), "both variances 3");

  const auto m = file_size_exact(code, 2).value;
  expect(m == 5, "M(2) = 5");
  expect(static_cast<std::int64_t>(m) == bound_recursive(4, 2, 3, 2), "M(2) meets the recursive bound");

  const DressCode dress(code, m, 2);
  const std::vector<Symbol> file = {'h', 'e', 'l', 'l', 'o'};
  auto contents = place(dress, mds_encode(dress, file));
  for (std::size_t failed = 0; failed < code.n(); ++failed) {
    auto damaged = contents;
    damaged[failed].clear();
    const auto rep = repair_node(dress, damaged, failed);
    damaged[failed] = rep.recovered;
    expect(rep.transfers.size() == code.alpha() && damaged == contents,
           ("node " + std::to_string(failed) + " repaired with 3 transfers").c_str());
  }
  expect(reconstruct(dress, contents, {2, 3}) == file, "file rebuilt from nodes 2 and 3");

  const auto w = workload_sim(code, sigma1, 100000, PopularityModel::linear(), 1);
  std::printf("loads under sigma1:");
  for (auto x : w.loads) std::printf(" %llu", static_cast<unsigned long long>(x));
  std::printf("\n");
  return failures == 0 ? 0 : 1;
}
