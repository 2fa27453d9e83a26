#pragma once

// Supermagic edge labelings: verification, exhaustive search, the Ivanco
// characterization for regular Turan graphs, the shift-and-merge composition
// that carries a zero-variance part into a larger graph, and the K_{4r}
// variance bounds built on it.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frlab/error.hpp"
#include "frlab/labeling.hpp"
#include "frlab/minps.hpp"
#include "frlab/rational.hpp"
#include "frlab/setsystem.hpp"

namespace frlab {

inline constexpr std::size_t kDefaultMagicCap = 16;

/// Labels on the edges of a simple graph (canonical edge order) forming the
/// consecutive range [lo, hi] bijectively.
class EdgeLabeling {
 public:
  EdgeLabeling() = default;

  explicit EdgeLabeling(std::vector<std::int64_t> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) return;
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    lo_ = sorted.front();
    hi_ = sorted.back();
    for (std::size_t i = 0; i < sorted.size(); ++i)
      detail::require(sorted[i] == lo_ + static_cast<std::int64_t>(i),
                      "edge labels are not a consecutive bijective range");
  }

  std::size_t size() const { return labels_.size(); }
  std::int64_t operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

  bool operator==(const EdgeLabeling&) const = default;

 private:
  std::vector<std::int64_t> labels_;
  std::int64_t lo_ = 1;
  std::int64_t hi_ = 0;
};

struct MagicVerdict {
  bool is_magic = false;
  std::optional<std::int64_t> index;                             // lambda
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // two vertices with different sums
};

/// sigma*(v) for every vertex.
inline std::vector<std::int64_t> vertex_sums(const Graph& g, const EdgeLabeling& sigma) {
  detail::require(g.is_simple(), "edge labelings need a simple graph");
  detail::require(sigma.size() == g.num_edges(), "edge labeling does not cover the edges");
  std::vector<std::int64_t> sums(g.num_vertices(), 0);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    sums[g.edges()[i].u] += sigma[i];
    sums[g.edges()[i].v] += sigma[i];
  }
  return sums;
}

inline MagicVerdict check_supermagic(const Graph& g, const EdgeLabeling& sigma) {
  auto sums = vertex_sums(g, sigma);
  MagicVerdict verdict;
  for (std::size_t v = 1; v < sums.size(); ++v)
    if (sums[v] != sums[0]) {
      verdict.witness = std::pair<std::size_t, std::size_t>(0, v);
      return verdict;
    }
  verdict.is_magic = true;
  verdict.index = sums.empty() ? 0 : sums[0];
  return verdict;
}

namespace detail {

class MagicSearch {
 public:
  MagicSearch(const Graph& g, std::int64_t lo, std::int64_t lambda)
      : g_(g), lo_(lo), lambda_(lambda), m_(g.num_edges()), used_(m_, false), sum_(g.num_vertices(), 0),
        open_(g.num_vertices(), 0), labels_(m_, 0) {
    for (const auto& e : g.edges()) {
      ++open_[e.u];
      ++open_[e.v];
    }
  }

  bool run() { return descend(0); }
  const std::vector<std::int64_t>& labels() const { return labels_; }

 private:
  // Can `vertex` still reach lambda with its remaining edges drawn from the
  // unused labels?
  bool feasible(std::size_t vertex) const {
    const std::int64_t need = lambda_ - sum_[vertex];
    const std::size_t k = open_[vertex];
    if (k == 0) return need == 0;
    std::int64_t low = 0, high = 0;
    std::size_t taken = 0;
    for (std::size_t i = 0; i < m_ && taken < k; ++i)
      if (!used_[i]) {
        low += lo_ + static_cast<std::int64_t>(i);
        ++taken;
      }
    if (taken < k) return false;
    taken = 0;
    for (std::size_t i = m_; i-- > 0 && taken < k;)
      if (!used_[i]) {
        high += lo_ + static_cast<std::int64_t>(i);
        ++taken;
      }
    return low <= need && need <= high;
  }

  bool descend(std::size_t edge) {
    if (edge == m_) return true;
    const auto& e = g_.edges()[edge];
    for (std::size_t i = 0; i < m_; ++i) {
      if (used_[i]) continue;
      const std::int64_t x = lo_ + static_cast<std::int64_t>(i);
      used_[i] = true;
      sum_[e.u] += x;
      sum_[e.v] += x;
      --open_[e.u];
      --open_[e.v];
      labels_[edge] = x;
      if (feasible(e.u) && feasible(e.v) && descend(edge + 1)) return true;
      used_[i] = false;
      sum_[e.u] -= x;
      sum_[e.v] -= x;
      ++open_[e.u];
      ++open_[e.v];
    }
    return false;
  }

  const Graph& g_;
  std::int64_t lo_;
  std::int64_t lambda_;
  std::size_t m_;
  std::vector<bool> used_;  // by label offset
  std::vector<std::int64_t> sum_;
  std::vector<std::size_t> open_;
  std::vector<std::int64_t> labels_;
};

}  // namespace detail

/// First supermagic labeling with labels [1 + offset, |E| + offset] in
/// lexicographic order over the canonical edge sequence, or nullopt when
/// none exists. Throws InfeasibleError when |E| exceeds `edge_cap`.
inline std::optional<EdgeLabeling> supermagic_search(const Graph& g, std::int64_t offset = 0,
                                                     std::size_t edge_cap = kDefaultMagicCap) {
  detail::require(g.is_simple(), "supermagic search needs a simple graph");
  const std::size_t m = g.num_edges();
  if (m > edge_cap)
    throw InfeasibleError("search infeasible: " + std::to_string(m) + " edges exceed the cap of " +
                          std::to_string(edge_cap));
  if (m == 0) return EdgeLabeling{};
  const std::int64_t lo = 1 + offset;
  const std::int64_t hi = static_cast<std::int64_t>(m) + offset;
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  // Each label is counted at two endpoints: n * lambda = 2 * sum of labels.
  const std::int64_t twice_total = static_cast<std::int64_t>(m) * (lo + hi);
  if (twice_total % n != 0) return std::nullopt;
  detail::MagicSearch search(g, lo, twice_total / n);
  if (!search.run()) return std::nullopt;
  return EdgeLabeling(search.labels());
}

/// Whether T(n, r), r | n, r >= 2, admits a supermagic labeling:
///   n = r:   n = 2, or n >= 6 with n not divisible by 4;
///   n = 2r:  r >= 3;
///   n >= 3r: unless r = 0 mod 4 and n / r is odd.
inline bool ivanco_predicate(std::int64_t n, std::int64_t r) {
  detail::require(r >= 2 && n >= r && n % r == 0, "ivanco predicate needs r >= 2 and r | n");
  if (n == r) return n == 2 || (n >= 6 && n % 4 != 0);
  if (n == 2 * r) return n >= 6;
  return !(r % 4 == 0 && (n / r) % 2 == 1);
}

// ---------------------------------------------------------------------------
// Composition

struct Composition {
  Graph graph;
  EdgeLabeling labeling;
};

/// Union of edge-disjoint regular graphs H1, H2 on one vertex set. H1 keeps
/// its supermagic labeling shifted above H2's labels; H2 keeps its own. The
/// shift adds the same amount at every vertex, so the access-variance of the
/// union equals that of (H2, sigma2).
inline Composition compose(const Graph& h1, const EdgeLabeling& sigma1, const Graph& h2, const EdgeLabeling& sigma2) {
  detail::require(h1.num_vertices() == h2.num_vertices(), "composed graphs need the same vertex set");
  detail::require(h1.regular_degree().has_value() && h2.regular_degree().has_value(),
                  "composed graphs must both be regular");
  detail::require(sigma1.size() == h1.num_edges() && sigma2.size() == h2.num_edges(),
                  "labelings do not cover the edges");
  detail::require(sigma1.size() == 0 || sigma1.lo() == 1, "sigma1 must use labels [1, |E1|]");
  detail::require(sigma2.size() == 0 || sigma2.lo() == 1, "sigma2 must use labels [1, |E2|]");
  detail::require(check_supermagic(h1, sigma1).is_magic, "sigma1 is not supermagic on H1");
  const auto shift = static_cast<std::int64_t>(h2.num_edges());

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> tagged;
  for (std::size_t i = 0; i < h1.num_edges(); ++i)
    tagged.push_back({{h1.edges()[i].u, h1.edges()[i].v}, sigma1[i] + shift});
  for (std::size_t i = 0; i < h2.num_edges(); ++i)
    tagged.push_back({{h2.edges()[i].u, h2.edges()[i].v}, sigma2[i]});
  std::sort(tagged.begin(), tagged.end());
  for (std::size_t i = 1; i < tagged.size(); ++i)
    detail::require(tagged[i].first != tagged[i - 1].first, "H1 and H2 share an edge");
  std::vector<std::int64_t> labels;
  for (const auto& [edge, label] : tagged) {
    pairs.push_back(edge);
    labels.push_back(label);
  }
  return {Graph(h1.num_vertices(), std::move(pairs)), EdgeLabeling(std::move(labels))};
}

// ---------------------------------------------------------------------------
// K_{4r}

struct K4rBounds {
  std::int64_t upper = 0;  // 3r for odd r, 7r for even r
  std::int64_t lower = 0;  // r
  Rational reduced_minps;  // M(rK_3)
  std::int64_t offset = 0;  // c = -r(6r+1)(30r+7)
  Rational upper_from_construction;  // 32 M - 72 r^2 - 18 r + c
};

/// Variance bounds for the complete graph K_{4r}. The upper bound comes from
/// splitting K_{4r} into T(4r, r) and rK_4 and evaluating the composed
/// labeling in closed form; the lower bound from the half-integral mean.
inline K4rBounds k4r_bounds(std::int64_t r) {
  detail::require(r >= 1, "k4r bounds need r >= 1");
  K4rBounds b;
  b.upper = r % 2 == 1 ? 3 * r : 7 * r;
  b.lower = r;
  b.reduced_minps = mkr_value(r, 3);
  b.offset = -r * (6 * r + 1) * (30 * r + 7);
  b.upper_from_construction = 32 * b.reduced_minps - 72 * r * r - 18 * r + b.offset;
  if (b.upper_from_construction != Rational(b.upper))
    throw std::logic_error("K_{4r} closed-form identity failed for r=" + std::to_string(r));
  return b;
}

namespace detail {

// Block labeling of copies(complete_graph(4), r) induced by the optimal
// rT(6,3) vertex labeling of its line graph. Within one K_4 the parts of the
// line graph are its three perfect matchings.
inline BlockLabeling rk4_labeling(std::int64_t r) {
  const Graph rk4 = copies(complete_graph(4), static_cast<std::size_t>(r));
  const Graph lg = line_graph(to_set_system(rk4));
  const auto turan = mtnr_labeling(r, 6, 3);
  std::vector<std::int64_t> labels(lg.num_vertices(), 0);
  const auto comps = components(lg);
  for (std::size_t j = 0; j < comps.size(); ++j) {
    std::vector<std::vector<std::size_t>> parts;
    for (auto v : comps[j]) {
      auto it = std::find_if(parts.begin(), parts.end(),
                             [&](const auto& part) { return lg.multiplicity(part.front(), v) == 0; });
      if (it == parts.end())
        parts.push_back({v});
      else
        it->push_back(v);
    }
    require(parts.size() == 3, "line graph of K_4 is not T(6,3)");
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t s = 0; s < parts[i].size(); ++s)
        labels[parts[i][s]] = turan.labeling[j * 6 + i * 2 + s];
  }
  return BlockLabeling(std::move(labels));
}

}  // namespace detail

struct K4rLabeling {
  BlockLabeling labeling;  // over the canonical edges of complete_graph(4r)
  Rational variance;
};

/// Explicit low-variance labeling of K_{4r}. T(4r, r) needs a supermagic
/// labeling found by search, so r >= 3 exceeds the default search cap and
/// raises InfeasibleError.
inline K4rLabeling k4r_labeling(std::int64_t r, std::size_t edge_cap = kDefaultMagicCap) {
  detail::require(r >= 1, "k4r labeling needs r >= 1");
  const Graph kn = complete_graph(static_cast<std::size_t>(4 * r));
  const auto reduced = detail::rk4_labeling(r);
  K4rLabeling out;
  if (r == 1) {
    out.labeling = reduced;
  } else {
    const Graph h1 = turan_graph(static_cast<std::size_t>(4 * r), static_cast<std::size_t>(r));
    const Graph h2 = copies(complete_graph(4), static_cast<std::size_t>(r));
    auto sigma1 = supermagic_search(h1, 0, edge_cap);
    if (!sigma1) throw InfeasibleError("T(4r, r) has no supermagic labeling");
    auto composed = compose(h1, *sigma1, h2, EdgeLabeling(reduced.labels()));
    if (!(composed.graph == kn)) throw std::logic_error("composition is not K_{4r}");
    out.labeling = BlockLabeling(composed.labeling.labels());
  }
  out.variance = variance(kn, out.labeling);
  return out;
}

}  // namespace frlab
