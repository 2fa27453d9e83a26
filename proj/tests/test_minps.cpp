#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include <catch_amalgamated.hpp>

#include "frlab/minps.hpp"
#include "frlab/oracle.hpp"

using namespace frlab;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

// All ways to split `items` into groups of `size`; calls visit(groups).
void partitions(std::vector<double> items, std::size_t size, std::vector<std::vector<double>>& groups,
                const std::function<void(const std::vector<std::vector<double>>&)>& visit) {
  if (items.empty()) {
    visit(groups);
    return;
  }
  const double first = items.front();
  std::vector<double> rest(items.begin() + 1, items.end());
  std::vector<bool> pick(rest.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size - 1), true);
  do {
    std::vector<double> group{first}, left;
    for (std::size_t i = 0; i < rest.size(); ++i) (pick[i] ? group : left).push_back(rest[i]);
    groups.push_back(group);
    partitions(left, size, groups, visit);
    groups.pop_back();
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

}  // namespace

TEST_CASE("product sums") {
  for (const auto& labels : {std::vector<std::int64_t>{1, 2, 3}, {3, 1, 2}, {2, 3, 1}})
    CHECK(product_sum(cycle_graph(3), VertexLabeling(labels)) == 11);
  CHECK(product_sum(complete_graph(4), VertexLabeling({4, 1, 3, 2})) == 35);
  CHECK(product_sum(cycle_graph(4), VertexLabeling({2, 4, 1, 3})) == 21);
  // parallel edges count with multiplicity
  CHECK(product_sum(Graph(2, {{0, 1}}, {3}), VertexLabeling({1, 2})) == 6);
  CHECK_THROWS_AS(product_sum(cycle_graph(4), VertexLabeling({1, 2, 3})), ValidationError);
}

TEST_CASE("exact solver on small named graphs") {
  auto c5 = exact_minps(cycle_graph(5));
  CHECK(c5.value == 37);
  CHECK(c5.status == SolveStatus::exact);
  // lexicographically smallest optimal labeling
  CHECK(c5.labeling.labels() == std::vector<std::int64_t>{1, 4, 3, 2, 5});
  CHECK(exact_minps(cycle_graph(6)).value == 58);
  CHECK(exact_minps(turan_graph(4, 2)).value == 21);
  CHECK(exact_minps(turan_graph(6, 3)).value == 131);
}

TEST_CASE("exact solver agrees with enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = static_cast<std::size_t>(4 + trial % 5);
    const Graph g = random_graph(n, 0.5, rng);
    const auto r = exact_minps(g);
    REQUIRE(r.status == SolveStatus::exact);
    CHECK(r.value == oracle::min_product_sum(g));
    CHECK(product_sum(g, r.labeling) == r.value);
    CHECK(dominance_check(g, r.labeling).empty());
  }
  SECTION("multigraph line graph of a non-linear system") {
    const Graph lg = line_graph(SetSystem(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
    CHECK(exact_minps(lg).value == oracle::min_product_sum(lg));
  }
}

TEST_CASE("exact solver limits") {
  CHECK_THROWS_AS(exact_minps(cycle_graph(13)), InfeasibleError);
  CHECK_THROWS_AS(exact_minps(cycle_graph(8), {.max_vertices = 7, .node_budget = std::nullopt}), InfeasibleError);
  auto cut = exact_minps(cycle_graph(10), {.max_vertices = 12, .node_budget = 10});
  CHECK(cut.status == SolveStatus::heuristic);
  CHECK(cut.value >= 224);
  CHECK(product_sum(cycle_graph(10), cut.labeling) == cut.value);
}

TEST_CASE("exact solver is deterministic") {
  const Graph g = turan_graph(8, 4);
  auto a = exact_minps(g);
  auto b = exact_minps(g);
  CHECK(a.labeling == b.labeling);
  CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("local search") {
  CHECK(local_search(complete_graph(4)).value == 35);
  bool hit = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = local_search(cycle_graph(5), {.seed = seed, .max_iters = 10000, .restarts = 1});
    CHECK(r.value >= 37);
    CHECK(r.status == SolveStatus::heuristic);
    CHECK(product_sum(cycle_graph(5), r.labeling) == r.value);
    CHECK(dominance_check(cycle_graph(5), r.labeling).empty());
    hit = hit || r.value == 37;
  }
  CHECK(hit);
}

TEST_CASE("dominance condition") {
  CHECK(dominance_check(cycle_graph(5), exact_minps(cycle_graph(5)).labeling).empty());
  // necessary but not sufficient: cycle order 1,2,3,4 has no violation yet scores 24 > 21
  const VertexLabeling in_order({1, 2, 3, 4});
  CHECK(dominance_check(cycle_graph(4), in_order).empty());
  CHECK(product_sum(cycle_graph(4), in_order) == 24);
  CHECK(dominance_check(complete_graph(5), VertexLabeling({5, 3, 1, 2, 4})).empty());

  // path 0-1-2 plus isolated 3 labeled (4,1,2,3): vertex 3 has the smaller
  // label and the smaller neighbor sum (0 < 1) against vertex 0
  const Graph p(4, {{0, 1}, {1, 2}});
  const auto v = dominance_check(p, VertexLabeling({4, 1, 2, 3}));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == DominanceViolation{3, 0, 0, 1});
}

TEST_CASE("averaging bound") {
  CHECK(averaging_bound(cycle_graph(4)) == Rational(70, 3));
  CHECK(averaging_bound(cycle_graph(3)) == Rational(11));
  CHECK(averaging_bound(complete_graph(4)) == Rational(35));
  for (const auto& g : {cycle_graph(4), complete_graph(4), cycle_graph(5), turan_graph(6, 3), turan_graph(6, 2)}) {
    CHECK(oracle::mean_product_sum(g) == averaging_bound(g));
    CHECK(Rational(exact_minps(g).value) <= averaging_bound(g));
  }
  CHECK_THROWS_AS(averaging_bound(Graph(3, {{0, 1}})), ValidationError);
}

TEST_CASE("Turan closed form") {
  CHECK(turan_labeling(4, 2).value == 21);
  CHECK(turan_labeling(6, 3).value == 131);
  CHECK(turan_labeling(5, 5).value == exact_minps(complete_graph(5)).value);
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t r = 2; r <= n; ++r) {
      if (n % r) continue;
      const auto built = turan_labeling(n, r);
      CHECK(product_sum(turan_graph(n, r), built.labeling) == built.value);
      CHECK(built.value == exact_minps(turan_graph(n, r)).value);
    }
  CHECK_THROWS_AS(turan_labeling(7, 2), ValidationError);
}

TEST_CASE("mK_r construction") {
  auto a = mkr_labeling(2, 2);
  CHECK(a.labeling.labels() == std::vector<std::int64_t>{1, 4, 2, 3});
  CHECK(a.value == 10);
  auto b = mkr_labeling(3, 3);
  CHECK(b.value == 195);
  for (const auto& set : mkr_label_sets(3, 3)) CHECK(std::accumulate(set.begin(), set.end(), 0) == 15);
  auto c = mkr_labeling(2, 3);
  CHECK(c.value == 65);
  auto sums = mkr_label_sets(2, 3);
  CHECK(std::accumulate(sums[0].begin(), sums[0].end(), 0) == 11);
  CHECK(std::accumulate(sums[1].begin(), sums[1].end(), 0) == 10);
  CHECK(mkr_value(4, 1) == Rational(0));
  for (std::int64_t m = 1; m <= 4; ++m)
    for (std::int64_t r = 1; m * r <= 9; ++r) {
      const Graph g = copies(complete_graph(static_cast<std::size_t>(r)), static_cast<std::size_t>(m));
      const auto built = mkr_labeling(m, r);
      CHECK(product_sum(g, built.labeling) == built.value);
      CHECK(built.value == oracle::min_product_sum(g));
    }
}

TEST_CASE("mT(n,r) construction") {
  CHECK(mtnr_labeling(1, 6, 3).value == 131);
  CHECK(mtnr_labeling(1, 6, 3).value == turan_labeling(6, 3).value);
  CHECK(mtnr_labeling(2, 4, 2).value == 122);
  CHECK(mtnr_labeling(2, 4, 2).value == exact_minps(copies(turan_graph(4, 2), 2)).value);
  for (std::int64_t r = 1; r <= 6; ++r) {
    const Rational expected = 16 * mkr_value(r, 3) - 36 * r * r - 9 * r;
    CHECK(mtnr_value(r, 6, 3) == expected);
  }
  CHECK(mtnr_value(2, 6, 3) == Rational(878));
  CHECK_THROWS_AS(mtnr_value(1, 3, 3), ValidationError);
  CHECK_THROWS_AS(mtnr_value(1, 7, 3), ValidationError);
}

TEST_CASE("cycle construction") {
  CHECK(cycle_sequence(3) == std::vector<std::int64_t>{1, 3, 2});
  CHECK(cycle_sequence(4) == std::vector<std::int64_t>{1, 4, 2, 3});
  CHECK(cycle_sequence(5) == std::vector<std::int64_t>{1, 5, 2, 3, 4});
  CHECK(cycle_labeling(5).value == 37);
  CHECK(cycle_labeling(4).value == 21);
  CHECK(cycle_value(7) == 87);
  CHECK(cycle_value_closed(7) == Rational(87));
  for (std::int64_t t = 3; t <= 40; ++t) {
    CHECK(cycle_value_closed(t) == Rational(cycle_value(t)));
    CHECK(cycle_labeling(t).value == cycle_value(t));
  }
  for (std::int64_t t = 3; t <= 9; ++t) CHECK(cycle_value(t) == oracle::min_product_sum(cycle_graph(t)));
  // the order (3,5,1,4,2) is not optimal
  CHECK(product_sum(cycle_graph(5), VertexLabeling({3, 5, 1, 4, 2})) == 38);
  CHECK_THROWS_AS(cycle_labeling(2), ValidationError);
}

TEST_CASE("weighted Turan labeling") {
  auto t42 = weighted_turan_labeling(4, 2, 1.0);
  CHECK(t42.value == Catch::Approx(7.0 / 8.0).margin(1e-12));
  CHECK(weighted_product_sum(turan_graph(4, 2), t42.weights) == Catch::Approx(t42.value).margin(1e-12));

  auto limit = weighted_turan_labeling(6, 3, 1e-9);
  CHECK(limit.value == Catch::Approx(3.0 * 4.0).epsilon(1e-6));

  for (const auto& [n, r] : {std::pair<std::size_t, std::size_t>{4, 2}, {6, 3}, {6, 2}}) {
    const auto built = weighted_turan_labeling(n, r, 1.0);
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
    double best = 1e300;
    std::vector<std::vector<double>> groups;
    partitions(weights, n / r, groups, [&](const auto& parts) {
      double value = 0;
      for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
          value += std::accumulate(parts[a].begin(), parts[a].end(), 0.0) *
                   std::accumulate(parts[b].begin(), parts[b].end(), 0.0);
      best = std::min(best, value);
    });
    CHECK(built.value == Catch::Approx(best).margin(1e-12));
  }
  CHECK_THROWS_AS(weighted_turan_labeling(4, 2, 0.0), ValidationError);
}
