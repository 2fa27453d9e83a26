#include <numeric>
#include <random>

#include <catch_amalgamated.hpp>

#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/oracle.hpp"
#include "frlab/verify.hpp"

using namespace frlab;
using frlab::verify::worked::k4_sigma1;
using frlab::verify::worked::k4_sigma2;
using frlab::verify::worked::k8_sigma1;
using frlab::verify::worked::k8_sigma2;

namespace {

const SetSystem& k4() {
  static const SetSystem s = to_set_system(complete_graph(4));
  return s;
}

BlockLabeling random_labeling(std::size_t size, std::mt19937_64& rng) {
  std::vector<std::int64_t> labels(size);
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return BlockLabeling(labels);
}

}  // namespace

TEST_CASE("labelings must be bijections onto 1..size") {
  CHECK_THROWS_AS(BlockLabeling({1, 1, 2}), ValidationError);
  CHECK_THROWS_AS(BlockLabeling({0, 1, 2}), ValidationError);
  CHECK_THROWS_AS(BlockLabeling({1, 2, 4}), ValidationError);
  CHECK(BlockLabeling::identity(3).labels() == std::vector<std::int64_t>{1, 2, 3});
  CHECK_THROWS_AS(popularity(k4(), BlockLabeling::identity(5)), ValidationError);
}

TEST_CASE("popularity") {
  CHECK(popularity(k4(), k4_sigma1()) == PopularityVector{10, 10, 10, 12});
  CHECK(popularity(k4(), k4_sigma2()) == PopularityVector{9, 11, 11, 11});
  CHECK(popularity(to_set_system(complete_graph(3)), BlockLabeling({1, 2, 3})) == PopularityVector{3, 4, 5});
  CHECK(popularity(to_set_system(complete_graph(8)), k8_sigma1()) ==
        PopularityVector{101, 101, 101, 101, 101, 101, 102, 104});
  CHECK(popularity(to_set_system(complete_graph(8)), k8_sigma2()) ==
        PopularityVector{101, 101, 101, 101, 101, 102, 102, 103});
}

TEST_CASE("variance is exact") {
  CHECK(variance(k4(), k4_sigma1()) == Rational(3));
  CHECK(variance(k4(), k4_sigma2()) == Rational(3));
  const auto k8 = to_set_system(complete_graph(8));
  CHECK(variance(k8, k8_sigma1()) == Rational(8));
  CHECK(variance(k8, k8_sigma2()) == Rational(4));
  // C3 with (1,2,3): p = (3,4,5), mean 4
  CHECK(variance(to_set_system(complete_graph(3)), BlockLabeling({1, 2, 3})) == Rational(2));
  // C4: p = (5,3,5,7) around 5
  CHECK(variance(to_set_system(cycle_graph(4)), BlockLabeling({1, 4, 2, 3})) == Rational(8));
  CHECK_THROWS_AS(variance(SetSystem(3, {{0, 1}, {1, 2}}), BlockLabeling({1, 2})), ValidationError);
}

TEST_CASE("minsum and maxsum") {
  CHECK(minsum(k4(), k4_sigma1()) == 10);
  CHECK(maxsum(k4(), k4_sigma1()) == 12);
  CHECK(minsum(k4(), k4_sigma2()) == 9);
  CHECK(maxsum(k4(), k4_sigma2()) == 11);
  CHECK(minsum(to_set_system(complete_graph(8)), k8_sigma1()) == 101);
  CHECK(minsum(to_set_system(complete_graph(8)), k8_sigma2()) == 101);
}

TEST_CASE("quadratic form of the variance") {
  CHECK(variance_offset(6, 2, 3) == Rational(-259));
  CHECK(quadratic_variance(k4(), k4_sigma1()) == Rational(3));
  CHECK(quadratic_variance(to_set_system(complete_graph(3)), BlockLabeling({1, 2, 3})) == Rational(2));

  std::mt19937_64 rng(17);
  const std::vector<SetSystem> systems = {
      k4(),
      to_set_system(cycle_graph(5)),
      to_set_system(turan_graph(6, 3)),
      dual(k4()),
      SetSystem(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
      to_set_system(copies(complete_graph(4), 2)),
  };
  for (const auto& s : systems)
    for (int i = 0; i < 200; ++i) {
      const auto sigma = random_labeling(s.num_blocks(), rng);
      REQUIRE(variance(s, sigma) == quadratic_variance(s, sigma));
    }
}

TEST_CASE("popularity totals and minsum/maxsum bracket the mean") {
  std::mt19937_64 rng(3);
  for (const auto& g : {complete_graph(6), turan_graph(8, 4), cycle_graph(9)}) {
    const auto s = to_set_system(g);
    const auto theta = static_cast<std::int64_t>(s.num_blocks());
    for (int i = 0; i < 50; ++i) {
      const auto sigma = random_labeling(s.num_blocks(), rng);
      const auto p = popularity(s, sigma);
      const auto total = std::accumulate(p.begin(), p.end(), std::int64_t{0});
      REQUIRE(total == 2 * theta * (theta + 1) / 2);
      const auto n = static_cast<std::int64_t>(p.size());
      CHECK(minsum(s, sigma) * n <= total);
      CHECK(maxsum(s, sigma) * n >= total);
    }
  }
}

TEST_CASE("variance is invariant under automorphisms") {
  // Relabel K4 vertices by (0 1 2 3) -> (1 2 3 0) and carry sigma along.
  const Graph g = complete_graph(4);
  const std::vector<std::size_t> perm = {1, 2, 3, 0};
  const auto sigma = k4_sigma1();
  std::vector<std::int64_t> moved(sigma.size());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    auto a = perm[g.edges()[i].u], b = perm[g.edges()[i].v];
    if (a > b) std::swap(a, b);
    for (std::size_t j = 0; j < g.num_edges(); ++j)
      if (g.edges()[j].u == a && g.edges()[j].v == b) moved[j] = sigma[i];
  }
  CHECK(variance(k4(), BlockLabeling(moved)) == variance(k4(), sigma));
}

TEST_CASE("zero variance exactly for supermagic labelings") {
  const Graph k6 = complete_graph(6);
  const auto magic = supermagic_search(k6);
  REQUIRE(magic);
  CHECK(variance(k6, BlockLabeling(magic->labels())) == Rational(0));
  CHECK(oracle::min_variance(to_set_system(cycle_graph(4))) > Rational(0));
}

TEST_CASE("K4 minimum variance by enumeration") { CHECK(oracle::min_variance(k4()) == Rational(3)); }

TEST_CASE("zipf popularity") {
  const auto z = zipf_popularity(k4(), k4_sigma1(), 1.0);
  // node 0 holds labels 3, 1, 6
  CHECK(z[0] == Catch::Approx(1.0 / 3 + 1.0 + 1.0 / 6).margin(kZipfTolerance));
  CHECK(z[3] == Catch::Approx(1.0 / 6 + 1.0 / 2 + 1.0 / 4).margin(kZipfTolerance));

  for (double x : zipf_popularity(k4(), k4_sigma1(), 1e-12)) CHECK(x == Catch::Approx(3.0).margin(1e-9));
  CHECK(zipf_imbalance(k4(), k4_sigma1(), 1e-12) == Catch::Approx(0.0).margin(1e-9));

  double mean = 0;
  for (double x : z) mean += x / 4;
  double expected = 0;
  for (double x : z) expected += (x - mean) * (x - mean);
  CHECK(zipf_imbalance(k4(), k4_sigma1(), 1.0) == Catch::Approx(expected).margin(kZipfTolerance));

  CHECK_THROWS_AS(zipf_popularity(k4(), k4_sigma1(), 0.0), ValidationError);
  CHECK_THROWS_AS(zipf_popularity(k4(), k4_sigma1(), -1.0), ValidationError);
}
