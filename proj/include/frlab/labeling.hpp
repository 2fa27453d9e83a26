#pragma once

// Access-balance measures of a block labeling: per-node popularity, the exact
// access-variance, min/max sums, the line-graph quadratic form of the
// variance, and the Zipf-weighted popularity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "frlab/error.hpp"
#include "frlab/rational.hpp"
#include "frlab/setsystem.hpp"

namespace frlab {

/// A bijection from the index set 0..size-1 onto the labels 1..size. The tag
/// keeps block labelings and vertex labelings from being mixed up.
template <class Tag>
class Labeling {
 public:
  Labeling() = default;

  explicit Labeling(std::vector<std::int64_t> labels) : labels_(std::move(labels)) {
    std::vector<bool> seen(labels_.size() + 1, false);
    for (auto x : labels_) {
      detail::require(x >= 1 && x <= static_cast<std::int64_t>(labels_.size()),
                      "label " + std::to_string(x) + " outside [1, " + std::to_string(labels_.size()) + "]");
      detail::require(!seen[static_cast<std::size_t>(x)], "label " + std::to_string(x) + " used twice");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }

  static Labeling identity(std::size_t size) {
    std::vector<std::int64_t> labels(size);
    std::iota(labels.begin(), labels.end(), 1);
    return Labeling(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  std::int64_t operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::int64_t>& labels() const { return labels_; }

  auto operator<=>(const Labeling&) const = default;

 private:
  std::vector<std::int64_t> labels_;
};

struct BlockTag {};
struct VertexTag {};
using BlockLabeling = Labeling<BlockTag>;
using VertexLabeling = Labeling<VertexTag>;

using PopularityVector = std::vector<std::int64_t>;

namespace detail {

inline void require_labeling_size(const SetSystem& s, std::size_t size) {
  require(size == s.num_blocks(), "labeling has " + std::to_string(size) + " labels for " +
                                      std::to_string(s.num_blocks()) + " blocks");
}

inline std::size_t require_regular(const SetSystem& s) {
  auto deg = s.degrees();
  require(!deg.empty(), "set system has no points");
  require(std::all_of(deg.begin(), deg.end(), [&](std::size_t d) { return d == deg[0]; }),
          "set system is not regular");
  return deg[0];
}

}  // namespace detail

/// p_i = sum of the labels of the blocks containing point i.
inline PopularityVector popularity(const SetSystem& s, const BlockLabeling& sigma) {
  detail::require_labeling_size(s, sigma.size());
  PopularityVector p(s.num_points(), 0);
  for (std::size_t b = 0; b < s.num_blocks(); ++b)
    for (auto pt : s.block(b)) p[pt] += sigma[b];
  return p;
}

/// Sum over points of (p_i - a)^2 with a = alpha*(theta+1)/2. Not divided by n.
inline Rational variance(const SetSystem& s, const BlockLabeling& sigma) {
  const auto alpha = static_cast<std::int64_t>(detail::require_regular(s));
  const auto theta = static_cast<std::int64_t>(s.num_blocks());
  // (p - a)^2 = (2p - alpha(theta+1))^2 / 4
  std::int64_t acc = 0;
  for (auto p : popularity(s, sigma)) {
    const std::int64_t d = 2 * p - alpha * (theta + 1);
    acc += d * d;
  }
  return Rational(acc, 4);
}

inline std::int64_t minsum(const SetSystem& s, const BlockLabeling& sigma) {
  detail::require_regular(s);
  auto p = popularity(s, sigma);
  return *std::min_element(p.begin(), p.end());
}

inline std::int64_t maxsum(const SetSystem& s, const BlockLabeling& sigma) {
  detail::require_regular(s);
  auto p = popularity(s, sigma);
  return *std::max_element(p.begin(), p.end());
}

/// c(theta, rho, alpha) = rho*theta(theta+1)(2theta+1)/6 - rho*alpha*theta(theta+1)^2/4.
inline Rational variance_offset(std::int64_t theta, std::int64_t rho, std::int64_t alpha) {
  return Rational(rho * theta * (theta + 1) * (2 * theta + 1), 6) -
         Rational(rho * alpha * theta * (theta + 1) * (theta + 1), 4);
}

/// x^T A(L(S)) x + c, where A counts each adjacent block pair in both
/// orientations and carries the intersection size as edge multiplicity.
inline Rational quadratic_variance(const SetSystem& s, const BlockLabeling& sigma) {
  detail::require_labeling_size(s, sigma.size());
  auto report = validate(s);
  detail::require(report.regular, "set system is not regular");
  detail::require(report.uniform, "set system is not uniform");
  const Graph lg = line_graph(s);
  std::int64_t form = 0;
  for (const auto& e : lg.edges()) form += 2 * static_cast<std::int64_t>(e.multiplicity) * sigma[e.u] * sigma[e.v];
  return Rational(form) + variance_offset(static_cast<std::int64_t>(s.num_blocks()),
                                          static_cast<std::int64_t>(report.rho),
                                          static_cast<std::int64_t>(report.alpha));
}

inline Rational variance(const Graph& g, const BlockLabeling& sigma) { return variance(to_set_system(g), sigma); }

// ---------------------------------------------------------------------------
// Zipf-weighted popularity: block b carries weight 1/sigma(b)^beta. Floating
// point; compare with a 1e-9 tolerance.

inline constexpr double kZipfTolerance = 1e-9;

inline std::vector<double> zipf_popularity(const SetSystem& s, const BlockLabeling& sigma, double beta) {
  detail::require(beta > 0.0, "zipf exponent beta must be positive");
  detail::require_labeling_size(s, sigma.size());
  std::vector<double> p(s.num_points(), 0.0);
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    const double w = std::pow(static_cast<double>(sigma[b]), -beta);
    for (auto pt : s.block(b)) p[pt] += w;
  }
  return p;
}

inline double zipf_imbalance(const SetSystem& s, const BlockLabeling& sigma, double beta) {
  auto p = zipf_popularity(s, sigma, beta);
  if (p.empty()) return 0.0;
  const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
  double acc = 0.0;
  for (auto x : p) acc += (x - mean) * (x - mean);
  return acc;
}

}  // namespace frlab
