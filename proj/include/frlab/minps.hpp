#pragma once

// Minimum product-sum vertex labeling: given a graph on theta vertices, find a
// bijection f onto [theta] minimizing the sum over edges of f(u) f(v).
//
// Exact branch-and-bound for small graphs, swap-based local search for larger
// ones, and the closed-form optimal labelings for complete and Turan graphs,
// disjoint unions of them, and cycles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frlab/error.hpp"
#include "frlab/labeling.hpp"
#include "frlab/rational.hpp"
#include "frlab/setsystem.hpp"

namespace frlab {

enum class SolveStatus { exact, heuristic, closed_form };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::exact: return "exact";
    case SolveStatus::heuristic: return "heuristic";
    case SolveStatus::closed_form: return "closed_form";
  }
  return "unknown";
}

struct SolveResult {
  std::int64_t value = 0;
  VertexLabeling labeling;
  SolveStatus status = SolveStatus::heuristic;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

inline void require_labeling_size(const Graph& g, std::size_t size) {
  require(size == g.num_vertices(), "labeling has " + std::to_string(size) + " labels for " +
                                        std::to_string(g.num_vertices()) + " vertices");
}

}  // namespace detail

/// Each edge counted once, weighted by its multiplicity.
inline std::int64_t product_sum(const Graph& g, const VertexLabeling& f) {
  detail::require_labeling_size(g, f.size());
  std::int64_t total = 0;
  for (const auto& e : g.edges()) total += static_cast<std::int64_t>(e.multiplicity) * f[e.u] * f[e.v];
  return total;
}

/// f(N(v)) for every v, counting parallel edges.
inline std::vector<std::int64_t> neighbor_sums(const Graph& g, const VertexLabeling& f) {
  detail::require_labeling_size(g, f.size());
  std::vector<std::int64_t> s(g.num_vertices(), 0);
  for (const auto& e : g.edges()) {
    s[e.u] += static_cast<std::int64_t>(e.multiplicity) * f[e.v];
    s[e.v] += static_cast<std::int64_t>(e.multiplicity) * f[e.u];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Swap dominance

struct DominanceViolation {
  std::size_t u = 0;  // f(u) < f(v)
  std::size_t v = 0;
  std::int64_t neighbor_sum_u = 0;
  std::int64_t neighbor_sum_v = 0;

  bool operator==(const DominanceViolation&) const = default;
};

/// Non-adjacent pairs with f(u) < f(v) and f(N(u)) < f(N(v)). Swapping the two
/// labels of such a pair strictly lowers the product sum, so an optimal
/// labeling has none.
inline std::vector<DominanceViolation> dominance_check(const Graph& g, const VertexLabeling& f) {
  auto s = neighbor_sums(g, f);
  std::vector<DominanceViolation> out;
  for (std::size_t a = 0; a < g.num_vertices(); ++a)
    for (std::size_t b = a + 1; b < g.num_vertices(); ++b) {
      if (g.multiplicity(a, b) != 0) continue;
      auto [u, v] = f[a] < f[b] ? std::pair(a, b) : std::pair(b, a);
      if (s[u] < s[v]) out.push_back({u, v, s[u], s[v]});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Averaging bound

/// Mean of the product sum over all theta! labelings of a d-regular graph:
/// d(3 theta + 2) theta (theta + 1) / 24. Every graph attains at most this.
inline Rational averaging_bound(const Graph& g) {
  auto d = g.regular_degree();
  detail::require(d.has_value(), "averaging bound needs a regular graph");
  const auto theta = static_cast<std::int64_t>(g.num_vertices());
  return Rational(static_cast<std::int64_t>(*d) * (3 * theta + 2) * theta * (theta + 1), 24);
}

// ---------------------------------------------------------------------------
// Local search

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  std::size_t max_iters = 10'000;  // improving swaps per restart
  std::size_t restarts = 4;
};

/// Steepest descent over pairwise label swaps from seeded random starts. A
/// converged run satisfies the swap-dominance condition.
inline SolveResult local_search(const Graph& g, const LocalSearchOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  std::mt19937_64 rng(opt.seed);
  SolveResult best;
  best.status = SolveStatus::heuristic;
  best.value = std::numeric_limits<std::int64_t>::max();
  if (n == 0) {
    best.value = 0;
    return best;
  }
  std::vector<std::int64_t> labels(n);
  for (std::size_t restart = 0; restart < std::max<std::size_t>(1, opt.restarts); ++restart) {
    std::iota(labels.begin(), labels.end(), 1);
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<std::int64_t> s(n, 0);
    std::int64_t value = 0;
    for (const auto& e : g.edges()) {
      s[e.u] += e.multiplicity * labels[e.v];
      s[e.v] += e.multiplicity * labels[e.u];
      value += static_cast<std::int64_t>(e.multiplicity) * labels[e.u] * labels[e.v];
    }
    for (std::size_t it = 0; it < opt.max_iters; ++it) {
      std::int64_t best_delta = 0;
      std::size_t bu = 0, bv = 0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          const std::int64_t diff = labels[v] - labels[u];
          const std::int64_t m = g.multiplicity(u, v);
          const std::int64_t delta = diff * (s[u] - s[v]) - m * diff * diff;
          if (delta < best_delta) {
            best_delta = delta;
            bu = u;
            bv = v;
          }
        }
      ++best.nodes_explored;
      if (best_delta >= 0) break;
      const std::int64_t a = labels[bu], b = labels[bv];
      for (const auto& nb : g.neighbors(bu)) s[nb.vertex] += nb.multiplicity * (b - a);
      for (const auto& nb : g.neighbors(bv)) s[nb.vertex] += nb.multiplicity * (a - b);
      std::swap(labels[bu], labels[bv]);
      value += best_delta;
    }
    if (value < best.value || (value == best.value && labels < best.labeling.labels())) {
      best.value = value;
      best.labeling = VertexLabeling(labels);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exact branch-and-bound

struct ExactOptions {
  std::size_t max_vertices = 12;
  /// Search-node limit; when hit, the best labeling found so far is returned
  /// with heuristic status.
  std::optional<std::uint64_t> node_budget;
};

namespace detail {

class ProductSumSearch {
 public:
  ProductSumSearch(const Graph& g, std::optional<std::uint64_t> budget)
      : g_(g), n_(g.num_vertices()), simple_(g.is_simple()), budget_(budget),
        label_(n_, 0), used_(n_ + 1, false), assigned_weight_(n_, 0), open_neighbors_(n_, 0) {
    for (std::size_t v = 0; v < n_; ++v) open_neighbors_[v] = g.neighbors(v).size();
    open_edges_ = static_cast<std::int64_t>(g.total_multiplicity());
  }

  // Labels are placed from theta down to 1; any improvement on `incumbent`
  // is recorded.
  void minimize(std::int64_t incumbent_value, std::vector<std::int64_t> incumbent) {
    best_value_ = incumbent_value;
    best_labels_ = std::move(incumbent);
    descend_by_label(0);
  }

  // Vertices are labeled in index order with ascending labels; the first
  // complete labeling of value `target` is the lexicographically smallest.
  bool lexmin(std::int64_t target) {
    target_ = target;
    found_ = false;
    descend_by_vertex(0);
    return found_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::int64_t best_value() const { return best_value_; }
  const std::vector<std::int64_t>& best_labels() const { return best_labels_; }

 private:
  bool out_of_budget() {
    if (budget_ && nodes_ >= *budget_) {
      exhausted_ = true;
      return true;
    }
    return false;
  }

  // Optimistic completion: the rearrangement inequality pairs the largest
  // pending neighbor weights with the smallest free labels, and the edges
  // among unlabeled vertices take the smallest distinct products of free labels.
  std::int64_t completion_bound() const {
    std::vector<std::int64_t> free_labels;
    std::vector<std::int64_t> weights;
    for (std::size_t x = 1; x <= n_; ++x)
      if (!used_[x]) free_labels.push_back(static_cast<std::int64_t>(x));
    for (std::size_t v = 0; v < n_; ++v)
      if (label_[v] == 0) weights.push_back(assigned_weight_[v]);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    std::int64_t bound = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) bound += weights[i] * free_labels[i];
    if (open_edges_ > 0 && free_labels.size() >= 2) {
      if (simple_) {
        std::vector<std::int64_t> products;
        for (std::size_t i = 0; i < free_labels.size(); ++i)
          for (std::size_t j = i + 1; j < free_labels.size(); ++j)
            products.push_back(free_labels[i] * free_labels[j]);
        const auto take = std::min<std::size_t>(static_cast<std::size_t>(open_edges_), products.size());
        std::nth_element(products.begin(), products.begin() + static_cast<std::ptrdiff_t>(take) - 1,
                         products.end());
        for (std::size_t i = 0; i < take; ++i) bound += products[i];
      } else {
        bound += open_edges_ * free_labels[0] * free_labels[1];
      }
    }
    return bound;
  }

  // Assign `x` to `v`; returns false when a newly complete vertex breaks swap
  // dominance against another complete vertex.
  bool assign(std::size_t v, std::int64_t x, std::vector<std::size_t>& newly_complete) {
    label_[v] = x;
    used_[static_cast<std::size_t>(x)] = true;
    partial_ += x * assigned_weight_[v];
    for (const auto& nb : g_.neighbors(v)) {
      const auto w = nb.vertex;
      assigned_weight_[w] += nb.multiplicity * x;
      --open_neighbors_[w];
      if (label_[w] == 0) open_edges_ -= nb.multiplicity;
      if (label_[w] != 0 && open_neighbors_[w] == 0) newly_complete.push_back(w);
    }
    if (open_neighbors_[v] == 0) newly_complete.push_back(v);
    bool ok = true;
    complete_list_.insert(complete_list_.end(), newly_complete.begin(), newly_complete.end());
    for (auto c : newly_complete) {
      for (auto other : complete_list_) {
        if (other == c || g_.multiplicity(c, other) != 0) continue;
        auto [lo, hi] = label_[c] < label_[other] ? std::pair(c, other) : std::pair(other, c);
        if (assigned_weight_[lo] < assigned_weight_[hi]) ok = false;
      }
    }
    return ok;
  }

  void unassign(std::size_t v, const std::vector<std::size_t>& newly_complete) {
    complete_list_.resize(complete_list_.size() - newly_complete.size());
    const auto x = label_[v];
    for (const auto& nb : g_.neighbors(v)) {
      const auto w = nb.vertex;
      assigned_weight_[w] -= nb.multiplicity * x;
      ++open_neighbors_[w];
      if (label_[w] == 0) open_edges_ += nb.multiplicity;
    }
    partial_ -= x * assigned_weight_[v];
    used_[static_cast<std::size_t>(x)] = false;
    label_[v] = 0;
  }

  void descend_by_label(std::size_t depth) {
    if (exhausted_) return;
    if (depth == n_) {
      if (partial_ < best_value_ || (partial_ == best_value_ && label_ < best_labels_)) {
        best_value_ = partial_;
        best_labels_ = label_;
      }
      return;
    }
    const auto x = static_cast<std::int64_t>(n_ - depth);
    for (std::size_t v = 0; v < n_; ++v) {
      if (label_[v] != 0) continue;
      if (out_of_budget()) return;
      ++nodes_;
      std::vector<std::size_t> newly_complete;
      if (assign(v, x, newly_complete) && partial_ + completion_bound() < best_value_)
        descend_by_label(depth + 1);
      unassign(v, newly_complete);
    }
  }

  void descend_by_vertex(std::size_t v) {
    if (exhausted_ || found_) return;
    if (v == n_) {
      if (partial_ == target_) {
        found_ = true;
        best_labels_ = label_;
      }
      return;
    }
    for (std::size_t x = 1; x <= n_ && !found_; ++x) {
      if (used_[x]) continue;
      if (out_of_budget()) return;
      ++nodes_;
      std::vector<std::size_t> newly_complete;
      if (assign(v, static_cast<std::int64_t>(x), newly_complete) && partial_ + completion_bound() <= target_)
        descend_by_vertex(v + 1);
      unassign(v, newly_complete);
    }
  }

  const Graph& g_;
  std::size_t n_;
  bool simple_;
  std::optional<std::uint64_t> budget_;

  std::vector<std::int64_t> label_;           // 0 = unassigned
  std::vector<bool> used_;                    // indexed by label
  std::vector<std::int64_t> assigned_weight_; // sum of labels on assigned neighbors
  std::vector<std::size_t> open_neighbors_;   // distinct neighbors still unassigned
  std::vector<std::size_t> complete_list_;
  std::int64_t open_edges_ = 0;               // multiplicity among unassigned pairs
  std::int64_t partial_ = 0;

  std::int64_t best_value_ = 0;
  std::vector<std::int64_t> best_labels_;
  std::int64_t target_ = 0;
  bool found_ = false;
  bool exhausted_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Global minimum product sum with the lexicographically smallest optimal
/// labeling. Throws InfeasibleError above `max_vertices`.
inline SolveResult exact_minps(const Graph& g, const ExactOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  if (n > opt.max_vertices)
    throw InfeasibleError("exact MinPS limited to " + std::to_string(opt.max_vertices) + " vertices, graph has " +
                          std::to_string(n));
  SolveResult out;
  if (n == 0) {
    out.status = SolveStatus::exact;
    return out;
  }
  // A local optimum seeds the incumbent so the first descent prunes hard.
  auto seed = local_search(g, {.seed = 0, .max_iters = 10'000, .restarts = 4});
  detail::ProductSumSearch search(g, opt.node_budget);
  // The incumbent is offered one above its value so that an equal-valued
  // labeling is still found and recorded by the search itself.
  search.minimize(seed.value + 1, seed.labeling.labels());
  out.nodes_explored = search.nodes();
  if (search.exhausted()) {
    out.value = seed.value;
    out.labeling = seed.labeling;
    if (search.best_value() < seed.value) {
      out.value = search.best_value();
      out.labeling = VertexLabeling(search.best_labels());
    }
    out.status = SolveStatus::heuristic;
    return out;
  }
  out.value = search.best_value();
  out.labeling = VertexLabeling(search.best_labels());
  out.status = SolveStatus::exact;
  detail::ProductSumSearch lex(g, opt.node_budget ? std::optional(*opt.node_budget - std::min(*opt.node_budget, out.nodes_explored))
                                                 : std::nullopt);
  if (lex.lexmin(out.value)) out.labeling = VertexLabeling(lex.best_labels());
  out.nodes_explored += lex.nodes();
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms: Turan graphs

/// T(n, r) with r | n: part i (vertices [i n/r, (i+1) n/r)) gets the
/// consecutive labels i n/r + 1 .. (i+1) n/r.
inline SolveResult turan_labeling(std::size_t n, std::size_t r) {
  detail::require(r >= 2 && n % r == 0, "turan labeling needs r >= 2 and r | n");
  const std::size_t part = n / r;
  std::vector<std::int64_t> sums(r, 0);
  for (std::size_t v = 0; v < n; ++v) sums[v / part] += static_cast<std::int64_t>(v + 1);
  SolveResult out;
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j + 1; k < r; ++k) out.value += sums[j] * sums[k];
  out.labeling = VertexLabeling::identity(n);
  out.status = SolveStatus::closed_form;
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms: m disjoint copies of K_r

/// m r^2 (m r + 1)^2 / 8 - m r (m r + 1)(2 m r + 1) / 12, plus m / 8 when r is
/// odd and m even (copy sums cannot all be equal then). mK_1 has no edges.
inline Rational mkr_value(std::int64_t m, std::int64_t r) {
  detail::require(m >= 1 && r >= 1, "mK_r needs m, r >= 1");
  if (r == 1) return Rational(0);
  const std::int64_t mr = m * r;
  Rational value = Rational(m * r * r * (mr + 1) * (mr + 1), 8) - Rational(mr * (mr + 1) * (2 * mr + 1), 12);
  if (r % 2 == 1 && m % 2 == 0) value += Rational(m, 8);
  return value;
}

namespace detail {

// V_i^{(q)} for even q over labels [1, q m]: the i-th q/2 smallest and the
// i-th q/2 largest, 1-based i.
inline void nested_pairs(std::int64_t m, std::int64_t q, std::int64_t i, std::vector<std::int64_t>& out) {
  const std::int64_t h = q / 2;
  for (std::int64_t x = (i - 1) * h + 1; x <= i * h; ++x) out.push_back(x);
  for (std::int64_t x = q * m + 1 - i * h; x <= q * m - (i - 1) * h; ++x) out.push_back(x);
}

}  // namespace detail

/// Label set of each copy in the balanced construction; sums are equal, or
/// differ by one when r is odd and m even.
inline std::vector<std::vector<std::int64_t>> mkr_label_sets(std::int64_t m, std::int64_t r) {
  detail::require(m >= 1 && r >= 1, "mK_r needs m, r >= 1");
  std::vector<std::vector<std::int64_t>> sets(static_cast<std::size_t>(m));
  for (std::int64_t i = 1; i <= m; ++i) {
    auto& set = sets[static_cast<std::size_t>(i - 1)];
    if (r == 1) {
      set.push_back(i);
    } else if (r % 2 == 0) {
      detail::nested_pairs(m, r, i, set);
    } else {
      // r odd >= 3: V^{(r-3)} (empty for r = 3) plus one label from each of
      // the top three m-blocks.
      if (r > 3) detail::nested_pairs(m, r - 3, i, set);
      const std::int64_t first = (r - 3) * m + i;
      std::int64_t second = 0, third = 0;
      if (m % 2 == 1) {
        if (i <= (m + 1) / 2) {
          second = ((2 * r - 3) * m - 1) / 2 + i;
          third = r * m + 2 - 2 * i;
        } else {
          second = ((2 * r - 5) * m - 1) / 2 + i;
          third = (r + 1) * m + 2 - 2 * i;
        }
      } else {
        if (i <= m / 2) {
          second = (2 * r - 3) * m / 2 + i;
          third = r * m + 2 - 2 * i;
        } else {
          second = (2 * r - 5) * m / 2 + i;
          third = (r + 1) * m + 1 - 2 * i;
        }
      }
      set.insert(set.end(), {first, second, third});
    }
    std::sort(set.begin(), set.end());
  }
  return sets;
}

/// Optimal labeling of copies(complete_graph(r), m): copy i receives the i-th
/// balanced label set in ascending order.
inline SolveResult mkr_labeling(std::int64_t m, std::int64_t r) {
  auto sets = mkr_label_sets(m, r);
  std::vector<std::int64_t> labels;
  std::int64_t value = 0;
  for (const auto& set : sets) {
    labels.insert(labels.end(), set.begin(), set.end());
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b) value += set[a] * set[b];
  }
  const Rational closed = mkr_value(m, r);
  if (!is_integer(closed) || closed.numerator() != value)
    throw std::logic_error("mK_r construction disagrees with closed form for m=" + std::to_string(m) +
                           " r=" + std::to_string(r));
  SolveResult out;
  out.value = value;
  out.labeling = VertexLabeling(std::move(labels));
  out.status = SolveStatus::closed_form;
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms: m disjoint copies of T(n, r)

/// C(r,2) m l^2 (1-l)^2 / 4 + ((l^3 - l^4) / 4) r m (r m + 1)(r - 1) + l^4 M(mK_r), l = n / r.
inline Rational mtnr_value(std::int64_t m, std::int64_t n, std::int64_t r) {
  detail::require(m >= 1 && r >= 2 && n % r == 0, "mT(n, r) needs m >= 1, r >= 2, r | n");
  const std::int64_t l = n / r;
  detail::require(l >= 2, "mT(n, r) closed form needs n / r >= 2; use mK_r");
  const std::int64_t pairs = r * (r - 1) / 2;
  return Rational(pairs * m * l * l * (1 - l) * (1 - l), 4) +
         Rational((l * l * l - l * l * l * l) * r * m * (r * m + 1) * (r - 1), 4) + l * l * l * l * mkr_value(m, r);
}

/// Optimal labeling of copies(turan_graph(n, r), m). Each part is a run
/// [l(t-1)+1, l t] where t is the label the balanced mK_r labeling gives the
/// corresponding (copy, part).
inline SolveResult mtnr_labeling(std::int64_t m, std::int64_t n, std::int64_t r) {
  const Rational closed = mtnr_value(m, n, r);
  const std::int64_t l = n / r;
  const auto reduced = mkr_labeling(m, r);
  std::vector<std::int64_t> labels;
  labels.reserve(static_cast<std::size_t>(m * n));
  for (std::int64_t j = 0; j < m; ++j)
    for (std::int64_t i = 0; i < r; ++i) {
      const std::int64_t t = reduced.labeling[static_cast<std::size_t>(j * r + i)];
      for (std::int64_t s = 0; s < l; ++s) labels.push_back(l * (t - 1) + 1 + s);
    }
  SolveResult out;
  out.labeling = VertexLabeling(std::move(labels));
  out.value = product_sum(copies(turan_graph(static_cast<std::size_t>(n), static_cast<std::size_t>(r)),
                                 static_cast<std::size_t>(m)),
                          out.labeling);
  if (!is_integer(closed) || closed.numerator() != out.value)
    throw std::logic_error("mT(n, r) construction disagrees with closed form");
  out.status = SolveStatus::closed_form;
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms: cycles

/// M_3 = 11, M_4 = 21, M_{t+2} = M_t + t^2 + 4t + 5.
inline std::int64_t cycle_value(std::int64_t theta) {
  detail::require(theta >= 3, "cycle needs theta >= 3");
  std::int64_t t = theta % 2 == 1 ? 3 : 4;
  std::int64_t value = t == 3 ? 11 : 21;
  for (; t < theta; t += 2) value += t * t + 4 * t + 5;
  return value;
}

/// Closed forms (4k^3 + 12k^2 + 14k + 3)/3 for theta = 2k+1 and
/// (4k^3 + 18k^2 + 29k + 12)/3 for theta = 2k+2.
inline Rational cycle_value_closed(std::int64_t theta) {
  detail::require(theta >= 3, "cycle needs theta >= 3");
  if (theta % 2 == 1) {
    const std::int64_t k = (theta - 1) / 2;
    return Rational(4 * k * k * k + 12 * k * k + 14 * k + 3, 3);
  }
  const std::int64_t k = (theta - 2) / 2;
  return Rational(4 * k * k * k + 18 * k * k + 29 * k + 12, 3);
}

/// Cyclic label order of an optimal cycle labeling, starting at 1 and moving
/// toward its larger neighbor (which is theta).
inline std::vector<std::int64_t> cycle_sequence(std::int64_t theta) {
  detail::require(theta >= 3, "cycle needs theta >= 3");
  std::vector<std::int64_t> seq = theta % 2 == 1 ? std::vector<std::int64_t>{1, 2, 3}
                                                 : std::vector<std::int64_t>{2, 4, 1, 3};
  for (auto t = static_cast<std::int64_t>(seq.size()); t < theta; t += 2) {
    for (auto& x : seq) ++x;
    // 2 and t+1 are now adjacent; put t+2 next to 2 and 1 next to t+1.
    const auto len = seq.size();
    const auto pos2 = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), 2) - seq.begin());
    const auto next = (pos2 + 1) % len;
    const auto prev = (pos2 + len - 1) % len;
    if (seq[next] == t + 1) {
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos2) + 1, {t + 2, 1});
    } else if (seq[prev] == t + 1) {
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos2), {1, t + 2});
    } else {
      throw std::logic_error("cycle construction lost the 1 ~ theta adjacency");
    }
  }
  // Canonical rotation and direction.
  const auto len = seq.size();
  const auto start = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), 1) - seq.begin());
  const bool forward = seq[(start + 1) % len] > seq[(start + len - 1) % len];
  std::vector<std::int64_t> out(len);
  for (std::size_t i = 0; i < len; ++i)
    out[i] = forward ? seq[(start + i) % len] : seq[(start + len - i) % len];
  return out;
}

/// Labels a connected 2-regular graph by walking it from vertex 0 toward its
/// smaller neighbor and reading labels from `seq`.
inline VertexLabeling label_along_cycle(const Graph& cycle, const std::vector<std::int64_t>& seq) {
  const std::size_t n = cycle.num_vertices();
  detail::require(n == seq.size() && n >= 3, "cycle length does not match the label sequence");
  detail::require(cycle.is_simple() && cycle.regular_degree() == std::optional<std::size_t>(2) &&
                      components(cycle).size() == 1,
                  "graph is not a single cycle");
  std::vector<std::int64_t> labels(n, 0);
  std::size_t prev = n, cur = 0;
  for (std::size_t i = 0; i < n; ++i) {
    labels[cur] = seq[i];
    const auto& nb = cycle.neighbors(cur);
    const std::size_t next = nb[0].vertex != prev ? nb[0].vertex : nb[1].vertex;
    prev = cur;
    cur = next;
  }
  return VertexLabeling(std::move(labels));
}

/// Optimal labeling of cycle_graph(theta).
inline SolveResult cycle_labeling(std::int64_t theta) {
  auto seq = cycle_sequence(theta);
  const auto g = cycle_graph(static_cast<std::size_t>(theta));
  SolveResult out;
  out.labeling = label_along_cycle(g, seq);
  out.value = product_sum(g, out.labeling);
  const Rational closed = cycle_value_closed(theta);
  if (out.value != cycle_value(theta) || !is_integer(closed) || closed.numerator() != out.value)
    throw std::logic_error("cycle construction disagrees with the recursion");
  out.status = SolveStatus::closed_form;
  return out;
}

// ---------------------------------------------------------------------------
// Zipf-weighted Turan labeling

struct WeightedLabeling {
  std::vector<std::int64_t> ranks;  // per vertex, a permutation of 1..n
  std::vector<double> weights;      // 1 / rank^beta
  double value = 0.0;
};

/// Sum over edges of w(u) w(v).
inline double weighted_product_sum(const Graph& g, const std::vector<double>& weights) {
  detail::require(weights.size() == g.num_vertices(), "one weight per vertex required");
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.multiplicity * weights[e.u] * weights[e.v];
  return total;
}

/// T(n, r): part k receives the consecutive reciprocal weights
/// 1/((k-1) n/r + 1)^beta .. 1/(k n/r)^beta.
inline WeightedLabeling weighted_turan_labeling(std::size_t n, std::size_t r, double beta) {
  detail::require(beta > 0.0, "zipf exponent beta must be positive");
  detail::require(r >= 2 && n % r == 0, "turan labeling needs r >= 2 and r | n");
  const std::size_t part = n / r;
  WeightedLabeling out;
  std::vector<double> sums(r, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    out.ranks.push_back(static_cast<std::int64_t>(v + 1));
    out.weights.push_back(std::pow(static_cast<double>(v + 1), -beta));
    sums[v / part] += out.weights.back();
  }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j + 1; k < r; ++k) out.value += sums[j] * sums[k];
  return out;
}

}  // namespace frlab
