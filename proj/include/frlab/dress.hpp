#pragma once

// Storage simulation for an FR code concatenated with an outer MDS code:
// systematic Cauchy encoding over GF(256), placement, single-node repair by
// transfer, reconstruction from a node subset, and access-workload replay.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "frlab/error.hpp"
#include "frlab/frcode.hpp"
#include "frlab/gf256.hpp"
#include "frlab/labeling.hpp"

namespace frlab {

using Symbol = gf256::Element;

/// theta x m generator: identity on the first m rows, then the Cauchy block
/// C[i][j] = 1 / (x_i + y_j) with x_i = i and y_j = theta - m + j. Every
/// square submatrix of a Cauchy matrix is invertible, which makes [I; C] MDS.
inline std::vector<std::vector<Symbol>> cauchy_generator(std::size_t theta, std::size_t m) {
  detail::require(m >= 1 && m <= theta, "MDS code needs 1 <= m <= theta");
  detail::require(theta <= 255, "MDS code over GF(256) needs theta <= 255");
  std::vector<std::vector<Symbol>> g(theta, std::vector<Symbol>(m, 0));
  for (std::size_t i = 0; i < m; ++i) g[i][i] = 1;
  for (std::size_t i = 0; i < theta - m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto x = static_cast<Symbol>(i);
      const auto y = static_cast<Symbol>(theta - m + j);
      g[m + i][j] = gf256::inv(gf256::add(x, y));
    }
  return g;
}

/// Rank of a matrix over GF(256).
inline std::size_t gf_rank(std::vector<std::vector<Symbol>> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[rank], a[pivot]);
    const Symbol scale = gf256::inv(a[rank][c]);
    for (auto& x : a[rank]) x = gf256::mul(x, scale);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Symbol f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = gf256::sub(a[r][k], gf256::mul(f, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

class DressCode {
 public:
  DressCode(FrCode fr, std::size_t m, std::optional<std::size_t> target_k = std::nullopt,
            std::uint64_t subset_cap = kDefaultSubsetCap)
      : fr_(std::move(fr)), m_(m), target_k_(target_k), generator_(cauchy_generator(fr_.theta(), m)) {
    if (target_k_) {
      detail::require(*target_k_ >= 1 && *target_k_ <= fr_.n(), "target k must be in [1, n]");
      const auto fs = file_size_exact(fr_, *target_k_, subset_cap);
      detail::require(m_ <= fs.value, "file size m=" + std::to_string(m_) + " exceeds M(" +
                                          std::to_string(*target_k_) + ")=" + std::to_string(fs.value));
    }
  }

  const FrCode& fr() const { return fr_; }
  std::size_t m() const { return m_; }
  std::size_t theta() const { return fr_.theta(); }
  std::optional<std::size_t> target_k() const { return target_k_; }
  const std::vector<std::vector<Symbol>>& generator() const { return generator_; }

 private:
  FrCode fr_;
  std::size_t m_;
  std::optional<std::size_t> target_k_;
  std::vector<std::vector<Symbol>> generator_;
};

inline std::vector<Symbol> mds_encode(const DressCode& code, const std::vector<Symbol>& file) {
  detail::require(file.size() == code.m(), "file has " + std::to_string(file.size()) + " symbols, code expects " +
                                               std::to_string(code.m()));
  std::vector<Symbol> out(code.theta(), 0);
  for (std::size_t i = 0; i < code.theta(); ++i) {
    Symbol acc = 0;
    for (std::size_t j = 0; j < code.m(); ++j) acc = gf256::add(acc, gf256::mul(code.generator()[i][j], file[j]));
    out[i] = acc;
  }
  return out;
}

/// Recovers the file from codeword symbols at the given positions (at least
/// m distinct positions).
inline std::vector<Symbol> mds_decode(const DressCode& code, const std::vector<std::pair<std::size_t, Symbol>>& known) {
  const std::size_t m = code.m();
  detail::require(known.size() >= m, "decoding needs at least m symbols");
  // Gaussian elimination on the augmented rows [G_i | y_i].
  std::vector<std::vector<Symbol>> a;
  for (const auto& [pos, value] : known) {
    detail::require(pos < code.theta(), "codeword position out of range");
    auto row = code.generator()[pos];
    row.push_back(value);
    a.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t pivot = c;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    detail::require(pivot < a.size(), "known symbols do not determine the file");
    std::swap(a[c], a[pivot]);
    const Symbol scale = gf256::inv(a[c][c]);
    for (auto& x : a[c]) x = gf256::mul(x, scale);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Symbol f = a[r][c];
      for (std::size_t k = 0; k <= m; ++k) a[r][k] = gf256::sub(a[r][k], gf256::mul(f, a[c][k]));
    }
  }
  std::vector<Symbol> file(m);
  for (std::size_t j = 0; j < m; ++j) file[j] = a[j][m];
  return file;
}

// ---------------------------------------------------------------------------
// Placement and repair

struct StoredSymbol {
  std::size_t index = 0;
  Symbol value = 0;
  bool operator==(const StoredSymbol&) const = default;
};

using NodeContents = std::vector<std::vector<StoredSymbol>>;

/// Node j stores (i, y_i) for every symbol i in N_j.
inline NodeContents place(const DressCode& code, const std::vector<Symbol>& codeword) {
  detail::require(codeword.size() == code.theta(), "codeword length must equal theta");
  NodeContents out(code.fr().n());
  for (std::size_t j = 0; j < code.fr().n(); ++j)
    for (auto i : code.fr().node(j)) out[j].push_back({i, codeword[i]});
  return out;
}

struct Transfer {
  std::size_t helper = 0;
  std::size_t symbol = 0;
  bool operator==(const Transfer&) const = default;
};

struct RepairResult {
  std::vector<StoredSymbol> recovered;
  std::vector<Transfer> transfers;  // one per lost symbol, ascending symbol order
};

namespace detail {

// Kuhn's augmenting-path matching of lost symbols to distinct helpers.
inline bool augment(std::size_t s, const std::vector<std::vector<std::size_t>>& candidates,
                    std::vector<std::optional<std::size_t>>& helper_of_node, std::vector<bool>& visited) {
  for (auto h : candidates[s]) {
    if (visited[h]) continue;
    visited[h] = true;
    if (!helper_of_node[h] || augment(*helper_of_node[h], candidates, helper_of_node, visited)) {
      helper_of_node[h] = s;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Rebuilds the failed node with each helper forwarding exactly one stored
/// symbol. Symbols are matched in ascending order, helpers tried in ascending
/// node index.
inline RepairResult repair_node(const DressCode& code, const NodeContents& contents, std::size_t failed) {
  const auto& fr = code.fr();
  detail::require(contents.size() == fr.n(), "contents do not match the code");
  detail::require(failed < fr.n(), "failed node out of range");
  detail::require(fr.rho() >= 2, "repair by transfer needs rho >= 2");
  const auto& lost = fr.node(failed);

  std::vector<std::vector<std::size_t>> candidates(lost.size());
  for (std::size_t s = 0; s < lost.size(); ++s)
    for (std::size_t h = 0; h < fr.n(); ++h)
      if (h != failed && std::binary_search(fr.node(h).begin(), fr.node(h).end(), lost[s])) candidates[s].push_back(h);

  std::vector<std::optional<std::size_t>> helper_of_node(fr.n());
  for (std::size_t s = 0; s < lost.size(); ++s) {
    std::vector<bool> visited(fr.n(), false);
    if (!detail::augment(s, candidates, helper_of_node, visited))
      throw InfeasibleError("repair infeasible: no distinct helper for symbol " + std::to_string(lost[s]));
  }

  RepairResult out;
  out.transfers.resize(lost.size());
  for (std::size_t h = 0; h < fr.n(); ++h)
    if (helper_of_node[h]) out.transfers[*helper_of_node[h]] = {h, lost[*helper_of_node[h]]};
  for (const auto& t : out.transfers) {
    const auto& held = contents[t.helper];
    auto it = std::find_if(held.begin(), held.end(), [&](const StoredSymbol& x) { return x.index == t.symbol; });
    if (it == held.end()) throw std::logic_error("helper does not hold the symbol it was matched to");
    out.recovered.push_back(*it);
  }
  return out;
}

/// Thrown when the chosen nodes hold fewer distinct symbols than the file size.
class ReconstructionError : public InfeasibleError {
 public:
  ReconstructionError(std::size_t available, std::size_t required)
      : InfeasibleError("insufficient symbols: " + std::to_string(available) + " available, " +
                        std::to_string(required) + " required"),
        available_(available),
        required_(required) {}
  std::size_t available() const { return available_; }
  std::size_t required() const { return required_; }
  std::size_t deficit() const { return required_ - available_; }

 private:
  std::size_t available_;
  std::size_t required_;
};

inline std::vector<Symbol> reconstruct(const DressCode& code, const NodeContents& contents,
                                       const std::vector<std::size_t>& nodes) {
  detail::require(contents.size() == code.fr().n(), "contents do not match the code");
  std::vector<std::optional<Symbol>> seen(code.theta());
  for (auto j : nodes) {
    detail::require(j < contents.size(), "node out of range");
    for (const auto& s : contents[j]) seen[s.index] = s.value;
  }
  std::vector<std::pair<std::size_t, Symbol>> known;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) known.emplace_back(i, *seen[i]);
  if (known.size() < code.m()) throw ReconstructionError(known.size(), code.m());
  known.resize(code.m());
  return mds_decode(code, known);
}

// ---------------------------------------------------------------------------
// Workload

inline constexpr const char* kWorkloadRng = "mt19937_64+inverse-cdf-53bit";

struct PopularityModel {
  enum class Kind { linear, zipf } kind = Kind::linear;
  double beta = 1.0;

  static PopularityModel linear() { return {}; }
  static PopularityModel zipf(double beta) {
    detail::require(beta > 0.0, "zipf exponent beta must be positive");
    return {Kind::zipf, beta};
  }
};

struct WorkloadResult {
  std::vector<std::uint64_t> loads;
  double imbalance = 0.0;  // sum over nodes of (load - mean)^2
  std::string rng = kWorkloadRng;
  std::uint64_t seed = 0;
  std::uint64_t requests = 0;
};

/// Draws `requests` symbols with probability proportional to sigma(i)
/// (linear) or sigma(i)^-beta (zipf); each request adds one to every node
/// holding the symbol. Sampling: u = (next() >> 11) * 2^-53, then the first
/// symbol whose cumulative weight exceeds u * total.
inline WorkloadResult workload_sim(const FrCode& fr, const BlockLabeling& sigma, std::uint64_t requests,
                                   const PopularityModel& model, std::uint64_t seed) {
  detail::require(sigma.size() == fr.theta(), "labeling must cover the theta symbols");
  std::vector<double> cdf(fr.theta());
  double total = 0.0;
  for (std::size_t i = 0; i < fr.theta(); ++i) {
    const auto label = static_cast<double>(sigma[i]);
    total += model.kind == PopularityModel::Kind::linear ? label : std::pow(label, -model.beta);
    cdf[i] = total;
  }
  std::vector<std::vector<std::size_t>> holders(fr.theta());
  for (std::size_t j = 0; j < fr.n(); ++j)
    for (auto i : fr.node(j)) holders[i].push_back(j);

  WorkloadResult out;
  out.loads.assign(fr.n(), 0);
  out.seed = seed;
  out.requests = requests;
  std::mt19937_64 rng(seed);
  for (std::uint64_t r = 0; r < requests; ++r) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    for (auto j : holders[static_cast<std::size_t>(it - cdf.begin())]) ++out.loads[j];
  }
  double mean = 0.0;
  for (auto x : out.loads) mean += static_cast<double>(x);
  mean /= static_cast<double>(std::max<std::size_t>(1, out.loads.size()));
  for (auto x : out.loads) out.imbalance += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  return out;
}

}  // namespace frlab
