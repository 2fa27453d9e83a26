#pragma once

// Set systems, (multi)graphs and the structural operations between them:
// incidence matrices, duals, line graphs, 2-shadows, girth and the standard
// generators (complete, Turan, cycle, disjoint copies).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frlab/error.hpp"

namespace frlab {

inline constexpr std::size_t kDefaultIncidenceCap = 1'000'000;

using Block = std::vector<std::size_t>;

/// Points 0..n-1 and a sequence of blocks. Each block is stored sorted and
/// must be a non-empty strict subset of the point range. Block order is kept
/// as given; canonical() sorts it lexicographically.
class SetSystem {
 public:
  SetSystem() = default;

  SetSystem(std::size_t num_points, std::vector<Block> blocks,
            std::size_t incidence_cap = kDefaultIncidenceCap)
      : num_points_(num_points), blocks_(std::move(blocks)) {
    detail::require(blocks_.empty() || num_points_ <= incidence_cap / blocks_.size(),
                    "set system exceeds incidence cap of " + std::to_string(incidence_cap) +
                        " entries");
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      auto& block = blocks_[b];
      detail::require(!block.empty(), "block " + std::to_string(b) + " is empty");
      std::sort(block.begin(), block.end());
      detail::require(std::adjacent_find(block.begin(), block.end()) == block.end(),
                      "block " + std::to_string(b) + " repeats a point");
      detail::require(block.back() < num_points_,
                      "block " + std::to_string(b) + " has a point out of range");
    }
  }

  std::size_t num_points() const { return num_points_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t i) const { return blocks_.at(i); }

  SetSystem canonical() const {
    SetSystem out = *this;
    std::sort(out.blocks_.begin(), out.blocks_.end());
    return out;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(num_points_, 0);
    for (const auto& block : blocks_)
      for (auto p : block) ++deg[p];
    return deg;
  }

  /// For each point, the indices of the blocks containing it (ascending).
  std::vector<std::vector<std::size_t>> point_blocks() const {
    std::vector<std::vector<std::size_t>> out(num_points_);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (auto p : blocks_[b]) out[p].push_back(b);
    return out;
  }

  bool operator==(const SetSystem&) const = default;

 private:
  std::size_t num_points_ = 0;
  std::vector<Block> blocks_;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::uint32_t multiplicity = 1;

  bool operator==(const Edge&) const = default;
};

/// Undirected loopless multigraph. Edges are stored canonically (u < v,
/// sorted by (u, v)); parallel edges are folded into a multiplicity count.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> pairs = {},
                 std::vector<std::uint32_t> multiplicity = {})
      : num_vertices_(num_vertices) {
    detail::require(multiplicity.empty() || multiplicity.size() == pairs.size(),
                    "multiplicity length does not match edge count");
    std::vector<Edge> raw;
    raw.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [u, v] = pairs[i];
      detail::require(u != v, "self-loop at vertex " + std::to_string(u));
      detail::require(u < num_vertices && v < num_vertices, "edge endpoint out of range");
      std::uint32_t m = multiplicity.empty() ? 1 : multiplicity[i];
      detail::require(m >= 1, "edge multiplicity must be positive");
      raw.push_back({std::min(u, v), std::max(u, v), m});
    }
    std::sort(raw.begin(), raw.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (const auto& e : raw) {
      if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v)
        edges_.back().multiplicity += e.multiplicity;
      else
        edges_.push_back(e);
    }
    adjacency_.resize(num_vertices_);
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back({e.v, e.multiplicity});
      adjacency_[e.v].push_back({e.u, e.multiplicity});
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  }

  struct Neighbor {
    std::size_t vertex;
    std::uint32_t multiplicity;
    auto operator<=>(const Neighbor&) const = default;
  };

  std::size_t num_vertices() const { return num_vertices_; }
  /// Distinct adjacent pairs; see total_multiplicity() for the parallel count.
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Neighbor>& neighbors(std::size_t v) const { return adjacency_.at(v); }

  std::size_t total_multiplicity() const {
    std::size_t total = 0;
    for (const auto& e : edges_) total += e.multiplicity;
    return total;
  }

  bool is_simple() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.multiplicity == 1; });
  }

  std::uint32_t multiplicity(std::size_t u, std::size_t v) const {
    const auto& row = adjacency_.at(u);
    auto it = std::lower_bound(row.begin(), row.end(), Neighbor{v, 0});
    return (it != row.end() && it->vertex == v) ? it->multiplicity : 0;
  }

  /// Degrees counting parallel edges.
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(num_vertices_, 0);
    for (const auto& e : edges_) {
      deg[e.u] += e.multiplicity;
      deg[e.v] += e.multiplicity;
    }
    return deg;
  }

  /// The common degree d when the graph is d-regular.
  std::optional<std::size_t> regular_degree() const {
    auto deg = degrees();
    if (deg.empty()) return 0;
    if (std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) != deg.end())
      return std::nullopt;
    return deg.front();
  }

  bool operator==(const Graph& other) const {
    return num_vertices_ == other.num_vertices_ && edges_ == other.edges_;
  }

 private:
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// 2-uniform set system with one block per unit of multiplicity, in
/// canonical edge order.
inline SetSystem to_set_system(const Graph& g) {
  std::vector<Block> blocks;
  for (const auto& e : g.edges())
    for (std::uint32_t i = 0; i < e.multiplicity; ++i) blocks.push_back({e.u, e.v});
  return SetSystem(g.num_vertices(), std::move(blocks));
}

inline Graph to_graph(const SetSystem& s) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& b : s.blocks()) {
    detail::require(b.size() == 2, "set system is not 2-uniform");
    pairs.emplace_back(b[0], b[1]);
  }
  return Graph(s.num_points(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Incidence

class IncidenceMatrix {
 public:
  IncidenceMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  void set(std::size_t r, std::size_t c, std::uint8_t v) { data_.at(r * cols_ + c) = v; }

  std::vector<std::size_t> row_sums() const {
    std::vector<std::size_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += data_[r * cols_ + c];
    return out;
  }

  std::vector<std::size_t> col_sums() const {
    std::vector<std::size_t> out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[c] += data_[r * cols_ + c];
    return out;
  }

  IncidenceMatrix transposed() const {
    IncidenceMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
  }

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

inline IncidenceMatrix incidence_matrix(const SetSystem& s) {
  IncidenceMatrix m(s.num_points(), s.num_blocks());
  for (std::size_t b = 0; b < s.num_blocks(); ++b)
    for (auto p : s.block(b)) m.set(p, b, 1);
  return m;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool uniform = false;
  std::size_t rho = 0;  // block size when uniform
  bool regular = false;
  std::size_t alpha = 0;  // point degree when regular
  bool linear = false;
  std::optional<std::size_t> nonuniform_block;  // first block whose size differs from block 0
  std::optional<std::size_t> irregular_point;   // first point whose degree differs from point 0
  std::optional<std::pair<std::size_t, std::size_t>> nonlinear_pair;  // first (i, j), i < j
};

namespace detail {

// For each block i, the first j > i with |B_i ∩ B_j| >= 2, scanning i in order.
inline std::optional<std::pair<std::size_t, std::size_t>> first_nonlinear_pair(const SetSystem& s) {
  auto incident = s.point_blocks();
  std::vector<std::size_t> count(s.num_blocks(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    touched.clear();
    for (auto p : s.block(i))
      for (auto j : incident[p])
        if (j > i) {
          if (count[j]++ == 0) touched.push_back(j);
        }
    std::optional<std::size_t> hit;
    for (auto j : touched) {
      if (count[j] >= 2 && (!hit || j < *hit)) hit = j;
      count[j] = 0;
    }
    if (hit) return std::pair(i, *hit);
  }
  return std::nullopt;
}

}  // namespace detail

inline ValidationReport validate(const SetSystem& s) {
  ValidationReport r;
  r.uniform = true;
  if (s.num_blocks() > 0) {
    r.rho = s.block(0).size();
    for (std::size_t b = 1; b < s.num_blocks(); ++b)
      if (s.block(b).size() != r.rho) {
        r.uniform = false;
        r.nonuniform_block = b;
        break;
      }
  }
  if (!r.uniform) r.rho = 0;
  if (r.uniform && s.num_blocks() > 0 && r.rho < 2) r.uniform = false;

  auto deg = s.degrees();
  r.regular = true;
  if (!deg.empty()) {
    r.alpha = deg[0];
    for (std::size_t p = 1; p < deg.size(); ++p)
      if (deg[p] != r.alpha) {
        r.regular = false;
        r.irregular_point = p;
        break;
      }
  }
  if (!r.regular) r.alpha = 0;

  r.nonlinear_pair = detail::first_nonlinear_pair(s);
  r.linear = !r.nonlinear_pair.has_value();
  return r;
}

// ---------------------------------------------------------------------------
// Derived structures

/// Transposed incidence: point i of the result is block i of s, block j of
/// the result collects the blocks containing point j. Block order follows
/// point order, so incidence_matrix(dual(s)) == incidence_matrix(s)^T.
inline SetSystem dual(const SetSystem& s) {
  auto incident = s.point_blocks();
  for (std::size_t p = 0; p < incident.size(); ++p)
    detail::require(!incident[p].empty(), "point " + std::to_string(p) + " lies in no block; dual undefined");
  return SetSystem(s.num_blocks(), std::move(incident));
}

/// One vertex per block; blocks e != e' joined with multiplicity |e ∩ e'|.
inline Graph line_graph(const SetSystem& s) {
  auto incident = s.point_blocks();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::uint32_t> mult;
  std::vector<std::uint32_t> count(s.num_blocks(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    touched.clear();
    for (auto p : s.block(i))
      for (auto j : incident[p])
        if (j > i && count[j]++ == 0) touched.push_back(j);
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      pairs.emplace_back(i, j);
      mult.push_back(count[j]);
      count[j] = 0;
    }
  }
  return Graph(s.num_blocks(), std::move(pairs), std::move(mult));
}

/// Simple graph on the points: {a, b} is an edge iff some block holds both.
inline Graph shadow2(const SetSystem& s) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& b : s.blocks())
    for (std::size_t x = 0; x < b.size(); ++x)
      for (std::size_t y = x + 1; y < b.size(); ++y) pairs.emplace_back(b[x], b[y]);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Graph(s.num_points(), std::move(pairs));
}

/// Length of the shortest cycle; nullopt for forests. Parallel edges count
/// as a 2-cycle.
inline std::optional<std::size_t> girth(const Graph& g) {
  if (!g.is_simple()) return 2;
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(g.num_vertices());
  std::vector<std::size_t> parent(g.num_vertices());
  for (std::size_t src = 0; src < g.num_vertices(); ++src) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[src] = 0;
    parent[src] = kUnseen;
    std::deque<std::size_t> queue{src};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      if (2 * dist[u] + 1 >= best) break;
      for (const auto& nb : g.neighbors(u)) {
        auto v = nb.vertex;
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (parent[u] != v) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

// ---------------------------------------------------------------------------
// Generators. Vertex ranges are consecutive: Turan part i is
// [i*n/r, (i+1)*n/r), copy j of a graph on v vertices is [j*v, (j+1)*v).

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return Graph(n, std::move(pairs));
}

inline Graph turan_graph(std::size_t n, std::size_t r) {
  detail::require(r >= 2, "turan(n, r) needs r >= 2");
  detail::require(n % r == 0, "turan(n, r) needs r | n");
  const std::size_t part = n / r;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (u / part != v / part) pairs.emplace_back(u, v);
  return Graph(n, std::move(pairs));
}

inline Graph cycle_graph(std::size_t n) {
  detail::require(n >= 3, "cycle(n) needs n >= 3");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(pairs));
}

inline Graph disjoint_union(const std::vector<Graph>& parts) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::uint32_t> mult;
  std::size_t offset = 0;
  for (const auto& g : parts) {
    for (const auto& e : g.edges()) {
      pairs.emplace_back(e.u + offset, e.v + offset);
      mult.push_back(e.multiplicity);
    }
    offset += g.num_vertices();
  }
  return Graph(offset, std::move(pairs), std::move(mult));
}

inline Graph copies(const Graph& base, std::size_t m) {
  detail::require(m >= 1, "m_copies needs m >= 1");
  return disjoint_union(std::vector<Graph>(m, base));
}

inline SetSystem disjoint_union(const std::vector<SetSystem>& parts) {
  std::vector<Block> blocks;
  std::size_t offset = 0;
  for (const auto& s : parts) {
    for (auto b : s.blocks()) {
      for (auto& p : b) p += offset;
      blocks.push_back(std::move(b));
    }
    offset += s.num_points();
  }
  return SetSystem(offset, std::move(blocks));
}

inline SetSystem copies(const SetSystem& base, std::size_t m) {
  detail::require(m >= 1, "m_copies needs m >= 1");
  return disjoint_union(std::vector<SetSystem>(m, base));
}

/// Connected components as ascending vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<std::size_t>> components(const Graph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(g.num_vertices(), false);
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& nb : g.neighbors(u))
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = true;
          stack.push_back(nb.vertex);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace frlab
