#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <catch_amalgamated.hpp>

#include "frlab/dress.hpp"
#include "frlab/labeling.hpp"
#include "frlab/verify.hpp"

using namespace frlab;

namespace {

FrCode code_of(const Graph& g) { return from_set_system(to_set_system(g)); }

std::vector<Symbol> random_file(std::size_t m, std::mt19937_64& rng) {
  std::vector<Symbol> f(m);
  for (auto& x : f) x = static_cast<Symbol>(rng() & 0xFF);
  return f;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace

TEST_CASE("GF(256) arithmetic") {
  using namespace gf256;
  CHECK(mul(2, 0x80) == 0x1D);
  CHECK(mul(0, 0x37) == 0);
  CHECK(mul(1, 0x37) == 0x37);
  CHECK_THROWS_AS(inv(0), std::domain_error);

  // 2 generates the multiplicative group
  std::set<int> powers;
  Element x = 1;
  for (int i = 0; i < 255; ++i, x = mul(x, 2)) powers.insert(x);
  CHECK(powers.size() == 255);
  CHECK(x == 1);

  for (int a = 1; a < 256; ++a) REQUIRE(mul(static_cast<Element>(a), inv(static_cast<Element>(a))) == 1);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const auto a = static_cast<Element>(rng()), b = static_cast<Element>(rng()), c = static_cast<Element>(rng());
    REQUIRE(mul(a, b) == mul(b, a));
    REQUIRE(mul(a, mul(b, c)) == mul(mul(a, b), c));
    REQUIRE(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    REQUIRE(add(a, a) == 0);
    if (b) REQUIRE(mul(div(a, b), b) == a);
  }
}

TEST_CASE("Cauchy generator is systematic and MDS") {
  const auto g = cauchy_generator(6, 3);
  REQUIRE(g.size() == 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g[i][j] == (i == j ? 1 : 0));

  for (std::size_t theta = 1; theta <= 12; ++theta)
    for (std::size_t m = 1; m <= theta; ++m) {
      const auto gen = cauchy_generator(theta, m);
      for (const auto& rows : subsets(theta, m)) {
        std::vector<std::vector<Symbol>> sub;
        for (auto r : rows) sub.push_back(gen[r]);
        REQUIRE(gf_rank(sub) == m);
      }
    }
  CHECK_THROWS_AS(cauchy_generator(3, 4), ValidationError);
  CHECK_THROWS_AS(cauchy_generator(3, 0), ValidationError);
  CHECK_THROWS_AS(cauchy_generator(256, 2), ValidationError);
  CHECK(gf_rank({{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("MDS encode and decode") {
  std::mt19937_64 rng(4);
  const DressCode full(code_of(complete_graph(4)), 6);
  const auto f = random_file(6, rng);
  CHECK(mds_encode(full, f) == f);
  CHECK(mds_encode(full, std::vector<Symbol>(6, 0)) == std::vector<Symbol>(6, 0));

  const DressCode code(code_of(turan_graph(6, 3)), 7);
  const auto file = random_file(7, rng);
  const auto word = mds_encode(code, file);
  for (const auto& pos : subsets(code.theta(), 7)) {
    std::vector<std::pair<std::size_t, Symbol>> known;
    for (auto p : pos) known.emplace_back(p, word[p]);
    REQUIRE(mds_decode(code, known) == file);
  }
  CHECK_THROWS_AS(mds_encode(code, random_file(6, rng)), ValidationError);
  CHECK_THROWS_AS(mds_decode(code, {{0, 1}}), ValidationError);
}

TEST_CASE("file size limit") {
  CHECK_NOTHROW(DressCode(code_of(complete_graph(4)), 5, 2));
  CHECK_THROWS_AS(DressCode(code_of(complete_graph(4)), 6, 2), ValidationError);
}

TEST_CASE("placement") {
  const DressCode code(code_of(complete_graph(4)), 5, 2);
  std::mt19937_64 rng(8);
  const auto contents = place(code, mds_encode(code, random_file(5, rng)));
  REQUIRE(contents.size() == 4);
  std::vector<int> count(6, 0);
  for (const auto& node : contents) {
    CHECK(node.size() == 3);
    for (const auto& s : node) ++count[s.index];
  }
  CHECK(count == std::vector<int>(6, 2));
}

TEST_CASE("repair by transfer") {
  std::mt19937_64 rng(12);
  SECTION("K4 node 0") {
    const DressCode code(code_of(complete_graph(4)), 5, 2);
    const auto contents = place(code, mds_encode(code, random_file(5, rng)));
    const auto r = repair_node(code, contents, 0);
    CHECK(r.recovered == contents[0]);
    REQUIRE(r.transfers.size() == 3);
    std::vector<std::size_t> helpers;
    for (const auto& t : r.transfers) helpers.push_back(t.helper);
    CHECK(helpers == std::vector<std::size_t>{1, 2, 3});
  }
  SECTION("C5 uses the two cycle neighbours") {
    const DressCode code(code_of(cycle_graph(5)), 3);
    const auto contents = place(code, mds_encode(code, random_file(3, rng)));
    for (std::size_t v = 0; v < 5; ++v) {
      const auto r = repair_node(code, contents, v);
      CHECK(r.recovered == contents[v]);
      std::set<std::size_t> helpers;
      for (const auto& t : r.transfers) helpers.insert(t.helper);
      CHECK(helpers == std::set<std::size_t>{(v + 1) % 5, (v + 4) % 5});
    }
  }
  SECTION("every node of the built-in codes") {
    for (const auto& g : {complete_graph(5), turan_graph(6, 3), turan_graph(6, 2), copies(complete_graph(3), 2)}) {
      const DressCode code(code_of(g), 2);
      const auto contents = place(code, mds_encode(code, random_file(2, rng)));
      for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const auto r = repair_node(code, contents, v);
        REQUIRE(r.recovered == contents[v]);
        std::set<std::size_t> helpers;
        for (const auto& t : r.transfers) helpers.insert(t.helper);
        REQUIRE(helpers.size() == r.transfers.size());
      }
    }
  }
  SECTION("rho = 1 has nothing to transfer") {
    const DressCode code(FrCode(2, 1, 1, 2, {{0}, {1}}), 1);
    const auto contents = place(code, mds_encode(code, {7}));
    CHECK_THROWS_AS(repair_node(code, contents, 0), ValidationError);
  }
}

TEST_CASE("reconstruction") {
  std::mt19937_64 rng(31);
  const auto k4 = code_of(complete_graph(4));
  SECTION("m = M(2) from any two nodes") {
    const DressCode code(k4, 5, 2);
    const auto file = random_file(5, rng);
    const auto contents = place(code, mds_encode(code, file));
    for (const auto& pair : subsets(4, 2)) REQUIRE(reconstruct(code, contents, pair) == file);
  }
  SECTION("m too large for two nodes") {
    const DressCode code(k4, 6);
    const auto file = random_file(6, rng);
    const auto contents = place(code, mds_encode(code, file));
    try {
      reconstruct(code, contents, {0, 1});
      FAIL("expected ReconstructionError");
    } catch (const ReconstructionError& e) {
      CHECK(e.available() == 5);
      CHECK(e.required() == 6);
      CHECK(e.deficit() == 1);
    }
    CHECK(reconstruct(code, contents, {0, 1, 2, 3}) == file);
    CHECK_THROWS_AS(reconstruct(code, contents, {0, 1}), InfeasibleError);
  }
}

TEST_CASE("full pipeline on generated codes") {
  std::mt19937_64 rng(99);
  const std::vector<Graph> graphs = {complete_graph(4), complete_graph(5), cycle_graph(5), cycle_graph(7),
                                     turan_graph(6, 3), turan_graph(6, 2), copies(complete_graph(3), 2)};
  for (const auto& g : graphs) {
    const auto fr = code_of(g);
    for (std::size_t k = 1; k < fr.n(); ++k) {
      const auto m = file_size_exact(fr, k).value;
      const DressCode code(fr, m, k);
      const auto file = random_file(m, rng);
      auto contents = place(code, mds_encode(code, file));
      for (const auto& nodes : subsets(fr.n(), k)) REQUIRE(reconstruct(code, contents, nodes) == file);
      const auto r = repair_node(code, contents, k % fr.n());
      REQUIRE(r.recovered == contents[k % fr.n()]);
    }
  }
}

TEST_CASE("workload simulation") {
  const auto k4 = code_of(complete_graph(4));
  const auto sigma = verify::worked::k4_sigma1();
  const auto a = workload_sim(k4, sigma, 20000, PopularityModel::linear(), 5);
  const auto b = workload_sim(k4, sigma, 20000, PopularityModel::linear(), 5);
  CHECK(a.loads == b.loads);
  CHECK(a.imbalance == b.imbalance);
  CHECK(a.rng == std::string(kWorkloadRng));
  CHECK(std::accumulate(a.loads.begin(), a.loads.end(), std::uint64_t{0}) == 2 * 20000);
  CHECK(workload_sim(k4, sigma, 20000, PopularityModel::linear(), 6).loads != a.loads);

  SECTION("node 3 is the most popular under sigma1") {
    const auto w = workload_sim(k4, sigma, 200000, PopularityModel::linear(), 1);
    CHECK(*std::max_element(w.loads.begin(), w.loads.end()) == w.loads[3]);
    // expected share 12/42 of 2 * requests
    CHECK(static_cast<double>(w.loads[3]) == Catch::Approx(400000.0 * 12 / 42).epsilon(0.01));
  }
  SECTION("zipf favours small labels") {
    const auto w = workload_sim(k4, sigma, 200000, PopularityModel::zipf(1.0), 1);
    const auto z = zipf_popularity(to_set_system(k4), sigma, 1.0);
    const double total = std::accumulate(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(static_cast<double>(w.loads[j]) == Catch::Approx(400000.0 * z[j] / total).epsilon(0.01));
  }
  SECTION("lower variance labeling is more balanced") {
    const auto k8 = code_of(complete_graph(8));
    const auto w1 = workload_sim(k8, verify::worked::k8_sigma1(), 1000000, PopularityModel::linear(), 3);
    const auto w2 = workload_sim(k8, verify::worked::k8_sigma2(), 1000000, PopularityModel::linear(), 3);
    CHECK(w2.imbalance < w1.imbalance);
  }
  CHECK_THROWS_AS(PopularityModel::zipf(0.0), ValidationError);
  CHECK_THROWS_AS(workload_sim(k4, BlockLabeling::identity(5), 10, PopularityModel::linear(), 1), ValidationError);
}
