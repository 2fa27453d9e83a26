#pragma once

// Reference answers by plain enumeration. Deliberately naive: no pruning, no
// shared code with the solvers they check. Exponential; keep inputs tiny.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "frlab/frcode.hpp"
#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/minps.hpp"
#include "frlab/rational.hpp"
#include "frlab/setsystem.hpp"

namespace frlab::oracle {

namespace detail {

template <class Visit>
void for_each_permutation(std::size_t size, Visit&& visit) {
  std::vector<std::int64_t> labels(size);
  std::iota(labels.begin(), labels.end(), 1);
  do {
    visit(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
}

inline std::int64_t product_sum(const Graph& g, const std::vector<std::int64_t>& f) {
  std::int64_t total = 0;
  for (const auto& e : g.edges()) total += e.multiplicity * f[e.u] * f[e.v];
  return total;
}

}  // namespace detail

/// min over all theta! vertex labelings of the edge product sum.
inline std::int64_t min_product_sum(const Graph& g) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  detail::for_each_permutation(g.num_vertices(),
                               [&](const auto& f) { best = std::min(best, detail::product_sum(g, f)); });
  return best;
}

/// Mean of the edge product sum over all theta! vertex labelings.
inline Rational mean_product_sum(const Graph& g) {
  std::int64_t total = 0;
  std::int64_t count = 0;
  detail::for_each_permutation(g.num_vertices(), [&](const auto& f) {
    total += detail::product_sum(g, f);
    ++count;
  });
  return Rational(total, count);
}

/// min over all theta! block labelings of the access-variance.
inline Rational min_variance(const SetSystem& s) {
  Rational best;
  bool first = true;
  detail::for_each_permutation(s.num_blocks(), [&](const auto& labels) {
    auto v = variance(s, BlockLabeling(labels));
    if (first || v < best) best = v;
    first = false;
  });
  return best;
}

/// M(k) by walking every k-subset of nodes as a bitmask.
inline std::size_t file_size(const FrCode& c, std::size_t k) {
  const std::size_t n = c.n();
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  do {
    std::vector<bool> covered(c.theta(), false);
    for (std::size_t i = 0; i < n; ++i)
      if (choose[i])
        for (auto s : c.node(i)) covered[s] = true;
    best = std::min<std::size_t>(best, static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true)));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return best;
}

/// Whether any bijection of 1..|E| onto the edges is supermagic.
inline bool supermagic_exists(const Graph& g) {
  bool found = false;
  std::vector<std::int64_t> sums(g.num_vertices());
  detail::for_each_permutation(g.num_edges(), [&](const auto& labels) {
    if (found) return;
    std::fill(sums.begin(), sums.end(), 0);
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      sums[g.edges()[i].u] += labels[i];
      sums[g.edges()[i].v] += labels[i];
    }
    found = std::all_of(sums.begin(), sums.end(), [&](std::int64_t x) { return x == sums[0]; });
  });
  return found;
}

}  // namespace frlab::oracle
