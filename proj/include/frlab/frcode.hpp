#pragma once

// Fractional repetition codes: construction from regular uniform set systems,
// the file size M(k) = min over k-node subsets of the number of distinct
// symbols held, the two classical upper bounds on the achievable file size,
// and the per-k optimality certificate built from them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frlab/error.hpp"
#include "frlab/setsystem.hpp"

namespace frlab {

inline constexpr std::uint64_t kDefaultSubsetCap = 10'000'000;

/// An (n, alpha, rho) FR code: n nodes, each holding alpha of the theta
/// symbols, every symbol stored on exactly rho nodes.
class FrCode {
 public:
  FrCode() = default;

  FrCode(std::size_t n, std::size_t alpha, std::size_t rho, std::size_t theta,
         std::vector<std::vector<std::size_t>> nodes)
      : n_(n), alpha_(alpha), rho_(rho), theta_(theta), nodes_(std::move(nodes)) {
    detail::require(n_ >= 1 && alpha_ >= 1 && rho_ >= 1, "FR code parameters must be positive");
    detail::require(n_ * alpha_ == theta_ * rho_, "FR code needs n*alpha == theta*rho");
    detail::require(nodes_.size() == n_, "FR code needs exactly n node sets");
    std::vector<std::size_t> replicas(theta_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      auto& node = nodes_[i];
      std::sort(node.begin(), node.end());
      detail::require(std::adjacent_find(node.begin(), node.end()) == node.end(),
                      "node " + std::to_string(i) + " repeats a symbol");
      detail::require(node.size() == alpha_, "node " + std::to_string(i) + " does not hold alpha symbols");
      for (auto s : node) {
        detail::require(s < theta_, "node " + std::to_string(i) + " holds a symbol out of range");
        ++replicas[s];
      }
    }
    for (std::size_t s = 0; s < theta_; ++s)
      detail::require(replicas[s] == rho_, "symbol " + std::to_string(s) + " is not stored rho times");
  }

  std::size_t n() const { return n_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t rho() const { return rho_; }
  std::size_t theta() const { return theta_; }
  const std::vector<std::vector<std::size_t>>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& node(std::size_t i) const { return nodes_.at(i); }

  bool operator==(const FrCode&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t alpha_ = 0;
  std::size_t rho_ = 0;
  std::size_t theta_ = 0;
  std::vector<std::vector<std::size_t>> nodes_;
};

/// Node i stores the indices of the blocks containing point i.
inline FrCode from_set_system(const SetSystem& s) {
  auto report = validate(s);
  detail::require(report.uniform, "FR code needs a uniform set system");
  detail::require(report.regular, "FR code needs a regular set system");
  return FrCode(s.num_points(), report.alpha, report.rho, s.num_blocks(), s.point_blocks());
}

inline IncidenceMatrix incidence_matrix(const FrCode& c) {
  IncidenceMatrix m(c.n(), c.theta());
  for (std::size_t i = 0; i < c.n(); ++i)
    for (auto s : c.node(i)) m.set(i, s, 1);
  return m;
}

inline SetSystem to_set_system(const FrCode& c) {
  std::vector<Block> blocks(c.theta());
  for (std::size_t i = 0; i < c.n(); ++i)
    for (auto s : c.node(i)) blocks[s].push_back(i);
  return SetSystem(c.n(), std::move(blocks));
}

// ---------------------------------------------------------------------------
// File size M(k)

struct FileSize {
  std::size_t value = 0;
  bool exact = false;
  std::vector<std::size_t> witness;  // a k-subset of nodes attaining value
  std::uint64_t subsets_visited = 0;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline std::vector<Bits> node_bitsets(const FrCode& c) {
  const std::size_t words = (c.theta() + 63) / 64;
  std::vector<Bits> out(c.n(), Bits(words, 0));
  for (std::size_t i = 0; i < c.n(); ++i)
    for (auto s : c.node(i)) out[i][s / 64] |= std::uint64_t{1} << (s % 64);
  return out;
}

inline std::size_t popcount(const Bits& b) {
  std::size_t total = 0;
  for (auto w : b) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  boost::multiprecision::cpp_int acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return acc.convert_to<std::uint64_t>();
}

// Colex enumeration: the largest element is chosen first, ascending, then the
// next largest below it, and so on. A branch is cut once its partial union
// already reaches the best total, since unions only grow.
struct SubsetSearch {
  const std::vector<Bits>& sets;
  std::size_t k;
  std::vector<Bits> prefix;
  std::vector<std::size_t> chosen;
  std::size_t best;
  std::vector<std::size_t> best_subset;
  std::uint64_t visited = 0;

  void run(std::size_t depth, std::size_t below) {
    const std::size_t remaining = k - depth;
    for (std::size_t x = remaining - 1; x < below; ++x) {
      auto& cur = prefix[depth + 1];
      for (std::size_t w = 0; w < cur.size(); ++w) cur[w] = prefix[depth][w] | sets[x][w];
      chosen[depth] = x;
      const auto size = popcount(cur);
      if (size >= best) {
        ++visited;
        continue;
      }
      if (remaining == 1) {
        ++visited;
        best = size;
        best_subset.assign(chosen.begin(), chosen.end());
      } else {
        run(depth + 1, x);
      }
    }
  }
};

}  // namespace detail

/// Exact M(k) by exhausting all k-subsets of nodes.
inline FileSize file_size_exact(const FrCode& c, std::size_t k, std::uint64_t subset_cap = kDefaultSubsetCap) {
  detail::require(k >= 1 && k <= c.n(), "file_size needs 1 <= k <= n");
  if (detail::binomial_capped(c.n(), k, subset_cap) > subset_cap)
    throw InfeasibleError("C(" + std::to_string(c.n()) + "," + std::to_string(k) +
                          ") exceeds the subset enumeration cap of " + std::to_string(subset_cap));
  auto sets = detail::node_bitsets(c);
  const std::size_t words = sets.empty() ? 0 : sets[0].size();
  detail::SubsetSearch search{sets, k, std::vector<detail::Bits>(k + 1, detail::Bits(words, 0)),
                              std::vector<std::size_t>(k, 0), c.theta() + 1, {}};
  search.run(0, c.n());
  FileSize out;
  out.value = search.best;
  out.exact = true;
  out.witness = search.best_subset;
  std::sort(out.witness.begin(), out.witness.end());
  out.subsets_visited = search.visited;
  return out;
}

/// Upper bound on M(k) from uniformly random k-subsets.
inline FileSize file_size_sampled(const FrCode& c, std::size_t k, std::size_t trials, std::uint64_t seed) {
  detail::require(k >= 1 && k <= c.n(), "file_size needs 1 <= k <= n");
  detail::require(trials >= 1, "sampled file_size needs at least one trial");
  auto sets = detail::node_bitsets(c);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(c.n());
  FileSize out;
  out.value = c.theta() + 1;
  detail::Bits acc(sets.empty() ? 0 : sets[0].size());
  for (std::size_t t = 0; t < trials; ++t) {
    std::iota(order.begin(), order.end(), 0);
    // Partial Fisher-Yates on the first k slots.
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, c.n() - 1);
      std::swap(order[i], order[pick(rng)]);
    }
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t w = 0; w < acc.size(); ++w) acc[w] |= sets[order[i]][w];
    const auto size = detail::popcount(acc);
    if (size < out.value) {
      out.value = size;
      out.witness.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(out.witness.begin(), out.witness.end());
    }
  }
  out.exact = false;
  out.subsets_visited = trials;
  return out;
}

// ---------------------------------------------------------------------------
// Upper bounds on the achievable file size A(n, k, alpha, rho)

/// floor((n*alpha/rho) * (1 - C(n-rho, k) / C(n, k))), exactly.
inline std::int64_t bound_singleton(std::int64_t n, std::int64_t k, std::int64_t alpha, std::int64_t rho) {
  detail::require(n >= 1 && k >= 1 && alpha >= 1 && rho >= 1, "bound parameters must be positive");
  detail::require(k <= n && rho <= n, "bound needs k <= n and rho <= n");
  detail::require((n * alpha) % rho == 0, "bound needs rho | n*alpha");
  using boost::multiprecision::cpp_int;
  auto binom = [](std::int64_t top, std::int64_t bottom) -> cpp_int {
    if (bottom < 0 || bottom > top) return 0;
    cpp_int acc = 1;
    for (std::int64_t i = 1; i <= bottom; ++i) acc = acc * (top - bottom + i) / i;
    return acc;
  };
  const cpp_int theta = n * alpha / rho;
  const cpp_int all = binom(n, k);
  const cpp_int missed = binom(n - rho, k);
  const cpp_int value = theta * (all - missed) / all;  // non-negative, so truncation is floor
  return value.convert_to<std::int64_t>();
}

namespace detail {

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  // den > 0; rounds toward +infinity for either sign of num.
  std::int64_t q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

}  // namespace detail

/// phi(k) with phi(1) = alpha, phi(j+1) = phi(j) + alpha - ceil((rho*phi(j) - j*alpha) / (n - j)).
inline std::int64_t bound_recursive(std::int64_t n, std::int64_t k, std::int64_t alpha, std::int64_t rho) {
  detail::require(n >= 1 && k >= 1 && alpha >= 1 && rho >= 1, "bound parameters must be positive");
  detail::require(k < n, "recursive bound needs k < n");
  std::int64_t phi = alpha;
  for (std::int64_t j = 1; j < k; ++j) phi = phi + alpha - detail::ceil_div(rho * phi - j * alpha, n - j);
  return phi;
}

// ---------------------------------------------------------------------------
// Optimality report

struct OptimalityRow {
  std::size_t k = 0;
  std::size_t file_size = 0;
  std::int64_t bound1 = 0;
  std::int64_t bound2 = 0;
  bool certified = false;  // file_size meets min(bound1, bound2)
};

/// Meeting a bound certifies k-optimality. A gap is "undetermined": both
/// bounds are upper bounds on the best achievable size, not its value.
struct OptimalityReport {
  std::vector<OptimalityRow> rows;
  bool optimal_certified = false;  // every k in 1..alpha was reported and certified
};

inline OptimalityReport optimality_report(const FrCode& c, std::optional<std::size_t> k_max = std::nullopt,
                                          std::uint64_t subset_cap = kDefaultSubsetCap) {
  const std::size_t limit = k_max.value_or(std::min(c.n() - 1, c.alpha()));
  detail::require(limit >= 1 && limit < c.n(), "optimality report needs 1 <= k_max < n");
  OptimalityReport report;
  const auto n = static_cast<std::int64_t>(c.n());
  const auto alpha = static_cast<std::int64_t>(c.alpha());
  const auto rho = static_cast<std::int64_t>(c.rho());
  for (std::size_t k = 1; k <= limit; ++k) {
    OptimalityRow row;
    row.k = k;
    row.file_size = file_size_exact(c, k, subset_cap).value;
    row.bound1 = bound_singleton(n, static_cast<std::int64_t>(k), alpha, rho);
    row.bound2 = bound_recursive(n, static_cast<std::int64_t>(k), alpha, rho);
    row.certified = static_cast<std::int64_t>(row.file_size) == std::min(row.bound1, row.bound2);
    report.rows.push_back(row);
  }
  report.optimal_certified =
      limit >= std::min(c.alpha(), c.n() - 1) &&
      std::all_of(report.rows.begin(), report.rows.end(),
                  [&](const OptimalityRow& r) { return r.k > c.alpha() || r.certified; });
  return report;
}

inline std::string to_csv(const OptimalityReport& report) {
  std::ostringstream out;
  out << "k,M,bound1,bound2,certified\n";
  for (const auto& r : report.rows)
    out << r.k << ',' << r.file_size << ',' << r.bound1 << ',' << r.bound2 << ','
        << (r.certified ? "certified" : "undetermined") << '\n';
  return out.str();
}

}  // namespace frlab
