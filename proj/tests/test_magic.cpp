#include <numeric>
#include <random>

#include <catch_amalgamated.hpp>

#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/oracle.hpp"

using namespace frlab;

namespace {

EdgeLabeling shuffled(std::size_t size, std::mt19937_64& rng) {
  std::vector<std::int64_t> labels(size);
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return EdgeLabeling(labels);
}

}  // namespace

TEST_CASE("edge labelings are consecutive bijections") {
  CHECK(EdgeLabeling({5, 3, 4}).lo() == 3);
  CHECK(EdgeLabeling({5, 3, 4}).hi() == 5);
  CHECK_THROWS_AS(EdgeLabeling({1, 3, 4}), ValidationError);
  CHECK_THROWS_AS(EdgeLabeling({1, 1, 2}), ValidationError);
}

TEST_CASE("check_supermagic") {
  auto k2 = check_supermagic(complete_graph(2), EdgeLabeling({1}));
  CHECK(k2.is_magic);
  CHECK(k2.index == std::optional<std::int64_t>(1));

  auto c4 = check_supermagic(cycle_graph(4), EdgeLabeling({1, 2, 3, 4}));
  CHECK_FALSE(c4.is_magic);
  REQUIRE(c4.witness);
  CHECK(c4.witness->first == 0);
  CHECK_FALSE(oracle::supermagic_exists(cycle_graph(4)));

  CHECK_THROWS_AS(check_supermagic(cycle_graph(4), EdgeLabeling({1, 2, 3})), ValidationError);
  CHECK_THROWS_AS(check_supermagic(Graph(2, {{0, 1}}, {2}), EdgeLabeling({1})), ValidationError);
}

TEST_CASE("supermagic is zero variance on regular graphs") {
  std::mt19937_64 rng(5);
  for (const auto& g : {complete_graph(6), turan_graph(6, 3), turan_graph(6, 2), cycle_graph(5)}) {
    for (int i = 0; i < 200; ++i) {
      const auto sigma = shuffled(g.num_edges(), rng);
      const bool magic = check_supermagic(g, sigma).is_magic;
      REQUIRE(magic == (variance(g, BlockLabeling(sigma.labels())) == Rational(0)));
    }
    if (auto found = supermagic_search(g)) CHECK(variance(g, BlockLabeling(found->labels())) == Rational(0));
  }
}

TEST_CASE("supermagic search") {
  SECTION("K6") {
    auto s = supermagic_search(complete_graph(6));
    REQUIRE(s);
    CHECK(s->labels() == std::vector<std::int64_t>{1, 2, 8, 14, 15, 9, 11, 7, 12, 13, 10, 6, 5, 3, 4});
    CHECK(check_supermagic(complete_graph(6), *s).index == std::optional<std::int64_t>(40));
  }
  SECTION("T(6,3)") {
    auto s = supermagic_search(turan_graph(6, 3));
    REQUIRE(s);
    CHECK(check_supermagic(turan_graph(6, 3), *s).index == std::optional<std::int64_t>(26));
  }
  SECTION("none for K5, C4, K3") {
    CHECK_FALSE(supermagic_search(complete_graph(5)));
    CHECK_FALSE(oracle::supermagic_exists(complete_graph(5)));
    CHECK_FALSE(supermagic_search(cycle_graph(4)));
    CHECK_FALSE(supermagic_search(complete_graph(3)));
  }
  SECTION("offset shifts the label range") {
    auto s = supermagic_search(turan_graph(6, 3), 12);
    REQUIRE(s);
    CHECK(s->lo() == 13);
    CHECK(s->hi() == 24);
    CHECK(check_supermagic(turan_graph(6, 3), *s).index == std::optional<std::int64_t>(4 * (13 + 24) / 2));
  }
  SECTION("cap") {
    CHECK_THROWS_AS(supermagic_search(complete_graph(7)), InfeasibleError);
    CHECK_THROWS_AS(supermagic_search(complete_graph(6), 0, 14), InfeasibleError);
  }
  SECTION("agrees with enumeration on small graphs") {
    for (const auto& g : {complete_graph(2), complete_graph(3), complete_graph(4), turan_graph(6, 2), cycle_graph(5),
                          copies(complete_graph(2), 3), copies(complete_graph(3), 2)})
      CHECK(supermagic_search(g).has_value() == oracle::supermagic_exists(g));
  }
}

TEST_CASE("Ivanco predicate") {
  CHECK(ivanco_predicate(8, 2));
  CHECK_FALSE(ivanco_predicate(12, 4));
  CHECK_FALSE(ivanco_predicate(8, 8));
  CHECK(ivanco_predicate(2, 2));
  CHECK(ivanco_predicate(6, 6));
  CHECK(ivanco_predicate(10, 10));
  CHECK_FALSE(ivanco_predicate(5, 5));
  CHECK_FALSE(ivanco_predicate(4, 2));
  CHECK(ivanco_predicate(6, 3));
  CHECK(ivanco_predicate(16, 4));
  CHECK_FALSE(ivanco_predicate(20, 4));
  CHECK_THROWS_AS(ivanco_predicate(7, 2), ValidationError);
}

TEST_CASE("Ivanco predicate matches search on Turan graphs up to 12 edges") {
  for (std::size_t n = 2; n <= 12; ++n)
    for (std::size_t r = 2; r <= n; ++r) {
      if (n % r) continue;
      const Graph g = turan_graph(n, r);
      if (g.num_edges() > 12) continue;
      CHECK(supermagic_search(g).has_value() == ivanco_predicate(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r)));
    }
}

TEST_CASE("K4,4 supermagic search", "[slow]") {
  auto s = supermagic_search(turan_graph(8, 2));
  REQUIRE(s);
  CHECK(check_supermagic(turan_graph(8, 2), *s).index == std::optional<std::int64_t>(34));
}

TEST_CASE("composition keeps the variance of the second part") {
  const Graph h1 = turan_graph(8, 2);
  const Graph h2 = copies(complete_graph(4), 2);
  const auto sigma1 = supermagic_search(h1);
  REQUIRE(sigma1);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto sigma2 = shuffled(h2.num_edges(), rng);
    const auto combined = compose(h1, *sigma1, h2, sigma2);
    REQUIRE(combined.graph == complete_graph(8));
    REQUIRE(variance(combined.graph, BlockLabeling(combined.labeling.labels())) ==
            variance(h2, BlockLabeling(sigma2.labels())));
  }

  SECTION("empty second part") {
    const auto c = compose(h1, *sigma1, Graph(8), EdgeLabeling{});
    CHECK(c.labeling == *sigma1);
    CHECK(variance(c.graph, BlockLabeling(c.labeling.labels())) == Rational(0));
  }
  SECTION("rejections") {
    const auto sigma2 = shuffled(h2.num_edges(), rng);
    CHECK_THROWS_AS(compose(h1, *sigma1, h1, EdgeLabeling(sigma1->labels())), ValidationError);
    CHECK_THROWS_AS(compose(h2, sigma2, h1, *sigma1), ValidationError);
    CHECK_THROWS_AS(compose(h1, *sigma1, Graph(8, {{0, 1}, {1, 2}}), EdgeLabeling({1, 2})), ValidationError);
  }
}

TEST_CASE("K_4r bounds") {
  auto one = k4r_bounds(1);
  CHECK(one.upper == 3);
  CHECK(one.lower == 1);
  auto two = k4r_bounds(2);
  CHECK(two.upper == 14);
  CHECK(two.lower == 2);
  CHECK(two.reduced_minps == Rational(65));
  CHECK(two.offset == -2 * 13 * 67);
  for (std::int64_t r = 1; r <= 50; ++r) CHECK(k4r_bounds(r).upper_from_construction == Rational(k4r_bounds(r).upper));
  CHECK(oracle::min_variance(to_set_system(complete_graph(4))) == Rational(one.upper));
}

TEST_CASE("K_4r labelings") {
  auto one = k4r_labeling(1);
  CHECK(one.variance == Rational(3));
  CHECK(variance(complete_graph(4), one.labeling) == Rational(3));

  auto two = k4r_labeling(2);
  CHECK(two.variance == Rational(14));
  CHECK(variance(complete_graph(8), two.labeling) == two.variance);
  CHECK(two.variance >= Rational(k4r_bounds(2).lower));

  CHECK_THROWS_AS(k4r_labeling(3), InfeasibleError);
}
