#pragma once

// The reproduction suite: each criterion recomputes a published value or
// identity and cross-checks it against an independent enumeration.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frlab/dress.hpp"
#include "frlab/frcode.hpp"
#include "frlab/io.hpp"
#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/minps.hpp"
#include "frlab/oracle.hpp"
#include "frlab/setsystem.hpp"

namespace frlab::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Worked-example labelings over the canonical edge order of K_4 and K_8.
namespace worked {

inline BlockLabeling k4_sigma1() { return BlockLabeling({3, 1, 6, 5, 2, 4}); }
inline BlockLabeling k4_sigma2() { return BlockLabeling({3, 1, 5, 6, 2, 4}); }

inline BlockLabeling k8_sigma1() {
  return BlockLabeling({1, 2, 3, 14, 26, 27, 28, 4, 10, 17, 21, 23, 25, 24,
                        22, 15, 16, 18, 20, 19, 12, 13, 8, 11, 9, 7, 5, 6});
}

inline BlockLabeling k8_sigma2() {
  return BlockLabeling({1, 2, 3, 14, 26, 27, 28, 4, 10, 17, 21, 23, 25, 24,
                        22, 15, 16, 18, 20, 19, 12, 13, 9, 11, 8, 7, 5, 6});
}

}  // namespace worked

namespace detail {

// Collects failed checks; the criterion passes when none failed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary(const std::string& on_pass) const {
    if (ok()) return on_pass;
    std::string out = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " checks failed: ";
    for (std::size_t i = 0; i < failures_.size() && i < 4; ++i) out += (i ? "; " : "") + failures_[i];
    return out;
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

template <class T>
std::string str(const std::vector<T>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

inline std::string str(const Rational& r) { return to_string(r); }

}  // namespace detail

inline CriterionResult k4_worked_example() {
  detail::Checks c;
  const auto s = to_set_system(complete_graph(4));
  const auto s1 = worked::k4_sigma1();
  const auto s2 = worked::k4_sigma2();
  c.expect(popularity(s, s1) == PopularityVector{10, 10, 10, 12}, "sigma1 popularity " + detail::str(popularity(s, s1)));
  c.expect(popularity(s, s2) == PopularityVector{9, 11, 11, 11}, "sigma2 popularity " + detail::str(popularity(s, s2)));
  c.expect(minsum(s, s1) == 10 && maxsum(s, s1) == 12, "sigma1 minsum/maxsum");
  c.expect(minsum(s, s2) == 9 && maxsum(s, s2) == 11, "sigma2 minsum/maxsum");
  c.expect(variance(s, s1) == Rational(3), "sigma1 variance " + detail::str(variance(s, s1)));
  c.expect(variance(s, s2) == Rational(3), "sigma2 variance " + detail::str(variance(s, s2)));
  return {1, "K4 worked example", c.ok(), c.summary("p=(10,10,10,12)/(9,11,11,11), Var=3/3")};
}

inline CriterionResult k8_worked_example() {
  detail::Checks c;
  const auto s = to_set_system(complete_graph(8));
  const auto s1 = worked::k8_sigma1();
  const auto s2 = worked::k8_sigma2();
  c.expect(minsum(s, s1) == 101, "sigma1 minsum " + std::to_string(minsum(s, s1)));
  c.expect(minsum(s, s2) == 101, "sigma2 minsum " + std::to_string(minsum(s, s2)));
  c.expect(variance(s, s1) == Rational(8), "sigma1 variance " + detail::str(variance(s, s1)));
  c.expect(variance(s, s2) == Rational(4), "sigma2 variance " + detail::str(variance(s, s2)));
  return {2, "K8 worked example", c.ok(), c.summary("minsum 101/101, Var=8 vs 4")};
}

inline CriterionResult quadratic_identity(std::size_t samples = 1000, std::uint64_t seed = 1) {
  detail::Checks c;
  const std::vector<std::pair<std::string, SetSystem>> systems = {
      {"K4", to_set_system(complete_graph(4))},
      {"C5", to_set_system(cycle_graph(5))},
      {"T(6,3)", to_set_system(turan_graph(6, 3))},
      {"dual(K4)", dual(to_set_system(complete_graph(4)))},
      {"3-subsets of 4", SetSystem(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})},
  };
  std::mt19937_64 rng(seed);
  for (const auto& [name, s] : systems) {
    std::vector<std::int64_t> labels(s.num_blocks());
    std::iota(labels.begin(), labels.end(), 1);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      std::shuffle(labels.begin(), labels.end(), rng);
      const BlockLabeling sigma(labels);
      if (variance(s, sigma) != quadratic_variance(s, sigma)) ++mismatches;
    }
    c.expect(mismatches == 0, name + ": " + std::to_string(mismatches) + " mismatches");
  }
  return {3, "variance equals line-graph quadratic form", c.ok(),
          c.summary(std::to_string(samples) + " random labelings on each of 5 systems")};
}

inline CriterionResult cycle_optima() {
  detail::Checks c;
  std::string values;
  for (std::int64_t theta = 3; theta <= 10; ++theta) {
    const Graph g = cycle_graph(static_cast<std::size_t>(theta));
    const auto exact = exact_minps(g);
    const Rational closed_form = cycle_value_closed(theta);
    const std::int64_t closed = closed_form.numerator();
    const auto brute = oracle::min_product_sum(g);
    const std::string t = "theta=" + std::to_string(theta);
    c.expect(is_integer(closed_form), t + ": closed form not integral");
    c.expect(exact.status == SolveStatus::exact, t + " solver not exact");
    c.expect(exact.value == closed, t + ": exact " + std::to_string(exact.value) + " vs closed form " +
                                        std::to_string(closed));
    c.expect(brute == closed, t + ": enumeration " + std::to_string(brute));
    c.expect(cycle_value(theta) == closed, t + ": recursion disagrees");
    if (theta >= 5) c.expect(closed - cycle_value(theta - 2) == (theta - 2) * (theta - 2) + 4 * (theta - 2) + 5, t + ": step");

    const auto constructed = cycle_labeling(theta);
    c.expect(constructed.value == closed && product_sum(g, constructed.labeling) == closed, t + ": construction value");
    bool one_next_to_theta = false;
    std::int64_t min_adjacent = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : g.edges()) {
      const auto a = constructed.labeling[e.u], b = constructed.labeling[e.v];
      if (std::min(a, b) == 1 && std::max(a, b) == theta) one_next_to_theta = true;
      min_adjacent = std::min(min_adjacent, a + b);
    }
    c.expect(one_next_to_theta, t + ": 1 not adjacent to theta");
    c.expect(min_adjacent >= theta, t + ": adjacent pair sums below theta");

    // The line graph of the theta-cycle system is a theta-cycle; carry the
    // construction onto it and read the minsum of the induced block labeling.
    const SetSystem s = to_set_system(g);
    const Graph lg = line_graph(s);
    const auto on_lines = label_along_cycle(lg, cycle_sequence(theta));
    const BlockLabeling sigma(on_lines.labels());
    c.expect(minsum(s, sigma) == theta, t + ": minsum " + std::to_string(minsum(s, sigma)));
    values += (values.empty() ? "" : ",") + std::to_string(exact.value);
  }
  return {4, "cycle optima", c.ok(), c.summary("M(C_3..C_10) = " + values)};
}

inline CriterionResult mkr_mtnr() {
  detail::Checks c;
  for (std::int64_t m = 1; m <= 9; ++m)
    for (std::int64_t r = 1; m * r <= 9; ++r) {
      const Graph g = copies(complete_graph(static_cast<std::size_t>(r)), static_cast<std::size_t>(m));
      const auto built = mkr_labeling(m, r);
      const auto exact = exact_minps(g);
      c.expect(built.value == exact.value && exact.status == SolveStatus::exact,
               std::to_string(m) + "K_" + std::to_string(r) + ": construction " + std::to_string(built.value) +
                   " vs exact " + std::to_string(exact.value));
    }
  {
    const auto built = mtnr_labeling(2, 4, 2);
    const auto exact = exact_minps(copies(turan_graph(4, 2), 2));
    c.expect(built.value == exact.value, "2T(4,2): " + std::to_string(built.value) + " vs " + std::to_string(exact.value));
  }
  {
    const auto built = mtnr_labeling(1, 6, 3);
    const auto exact = exact_minps(turan_graph(6, 3));
    c.expect(built.value == exact.value && exact.value == 131,
             "T(6,3): " + std::to_string(built.value) + " vs " + std::to_string(exact.value));
  }
  std::size_t checked = 0;
  for (std::int64_t m = 1; m <= 100; ++m)
    for (std::int64_t r = 1; m * r <= 100; ++r) {
      c.expect(is_integer(mkr_value(m, r)), "M(mK_r) not integral at m=" + std::to_string(m) + ", r=" + std::to_string(r));
      ++checked;
      for (std::int64_t l = 2; r >= 2 && m * r * l <= 100; ++l)
        c.expect(is_integer(mtnr_value(m, r * l, r)),
                 "M(mT(n,r)) not integral at m=" + std::to_string(m) + ", n=" + std::to_string(r * l));
    }
  return {5, "mK_r and mT(n,r) constructions", c.ok(),
          c.summary("all mr<=9 match exact; 2T(4,2), T(6,3)=131; " + std::to_string(checked) + " closed forms integral")};
}

inline CriterionResult averaging_bound_check() {
  detail::Checks c;
  const std::vector<std::pair<std::string, Graph>> graphs = {
      {"C4", cycle_graph(4)}, {"K4", complete_graph(4)}, {"C5", cycle_graph(5)}, {"T(6,3)", turan_graph(6, 3)}};
  std::string values;
  for (const auto& [name, g] : graphs) {
    const auto mean = oracle::mean_product_sum(g);
    c.expect(mean == averaging_bound(g), name + ": mean " + detail::str(mean) + " vs " + detail::str(averaging_bound(g)));
    values += (values.empty() ? "" : ", ") + name + "=" + detail::str(mean);
  }
  return {6, "averaging bound equals enumerated mean", c.ok(), c.summary(values)};
}

inline CriterionResult supermagic(std::size_t edge_cap = kDefaultMagicCap) {
  detail::Checks c;
  const auto k6 = supermagic_search(complete_graph(6), 0, edge_cap);
  c.expect(k6 && check_supermagic(complete_graph(6), *k6).index == 40, "K6 not found with index 40");
  const auto t63 = supermagic_search(turan_graph(6, 3), 0, edge_cap);
  c.expect(t63 && check_supermagic(turan_graph(6, 3), *t63).index == 26, "T(6,3) not found with index 26");
  c.expect(!supermagic_search(complete_graph(5), 0, edge_cap), "K5 search found a labeling");
  c.expect(!oracle::supermagic_exists(complete_graph(5)), "K5 enumeration found a labeling");
  c.expect(!supermagic_search(cycle_graph(4), 0, edge_cap), "C4 search found a labeling");
  c.expect(!oracle::supermagic_exists(cycle_graph(4)), "C4 enumeration found a labeling");

  std::string graphs;
  for (std::size_t n = 2; n <= 16; ++n)
    for (std::size_t r = 2; r <= n; ++r) {
      if (n % r != 0) continue;
      const std::size_t part = n / r;
      if (r * (r - 1) / 2 * part * part > 16) continue;
      const Graph g = turan_graph(n, r);
      const bool found = supermagic_search(g, 0, edge_cap).has_value();
      const bool predicted = ivanco_predicate(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r));
      const std::string name = "T(" + std::to_string(n) + "," + std::to_string(r) + ")";
      c.expect(found == predicted, name + ": search " + (found ? "found" : "none") + ", predicate " +
                                       (predicted ? "true" : "false"));
      graphs += (graphs.empty() ? "" : " ") + name + (found ? "+" : "-");
    }
  return {7, "supermagic search and characterization", c.ok(), c.summary("K6 l=40, T(6,3) l=26; " + graphs)};
}

inline CriterionResult k4r_bounds_check(std::size_t edge_cap = kDefaultMagicCap) {
  detail::Checks c;
  for (std::int64_t r = 1; r <= 50; ++r) {
    try {
      const auto b = k4r_bounds(r);
      c.expect(b.upper_from_construction == Rational(r % 2 ? 3 * r : 7 * r), "r=" + std::to_string(r));
    } catch (const std::logic_error& e) {
      c.expect(false, e.what());
    }
  }
  const auto minvar_k4 = oracle::min_variance(to_set_system(complete_graph(4)));
  c.expect(minvar_k4 == Rational(3), "MinVar(K4) = " + detail::str(minvar_k4));
  c.expect(minvar_k4 == Rational(k4r_bounds(1).upper), "r=1 upper bound not tight");
  const auto k8 = k4r_labeling(2, edge_cap);
  c.expect(k8.variance <= Rational(14) && k8.variance >= Rational(2), "K8 variance " + detail::str(k8.variance));
  return {8, "K_4r variance bounds", c.ok(),
          c.summary("identity holds r<=50; MinVar(K4)=3; K8 construction Var=" + detail::str(k8.variance))};
}

inline CriterionResult fr_bounds() {
  detail::Checks c;
  struct Row {
    std::int64_t n, k, alpha, rho, b1, b2;
  };
  const std::vector<Row> table = {
      {4, 1, 3, 2, 3, 3},  {4, 2, 3, 2, 5, 5},  {4, 3, 3, 2, 6, 6},    {6, 1, 4, 2, 4, 4},
      {6, 2, 4, 2, 7, 7},  {6, 3, 4, 2, 9, 9},  {6, 4, 4, 2, 11, 11}, {6, 5, 4, 2, 12, 12},
  };
  for (const auto& row : table) {
    const std::string t = "(" + std::to_string(row.n) + "," + std::to_string(row.k) + "," + std::to_string(row.alpha) +
                          "," + std::to_string(row.rho) + ")";
    c.expect(bound_singleton(row.n, row.k, row.alpha, row.rho) == row.b1, t + " singleton bound");
    c.expect(bound_recursive(row.n, row.k, row.alpha, row.rho) == row.b2, t + " recursive bound");
  }
  const auto check_code = [&](const std::string& name, const Graph& g, std::size_t k_max) {
    const FrCode code = from_set_system(to_set_system(g));
    const auto report = optimality_report(code, k_max);
    for (const auto& row : report.rows) {
      const auto target = std::min(row.bound1, row.bound2);
      c.expect(static_cast<std::int64_t>(row.file_size) == target && row.certified,
               name + " k=" + std::to_string(row.k) + ": M=" + std::to_string(row.file_size));
      c.expect(row.file_size == oracle::file_size(code, row.k), name + " k=" + std::to_string(row.k) + ": enumeration");
    }
    c.expect(report.rows.size() == k_max, name + ": missing rows");
  };
  check_code("T(6,3)", turan_graph(6, 3), 4);
  check_code("C6", cycle_graph(6), 5);
  return {9, "FR file-size bounds and optimality", c.ok(),
          c.summary("bounds match hand values; T(6,3) k<=4 and C6 k<=5 certified")};
}

inline CriterionResult dress_pipeline(std::uint64_t seed = 7) {
  detail::Checks c;
  const FrCode fr = from_set_system(to_set_system(complete_graph(4)));
  const DressCode code(fr, 5, 2);
  std::mt19937_64 rng(seed);
  std::vector<Symbol> file(code.m());
  for (auto& x : file) x = static_cast<Symbol>(rng() & 0xFF);
  const auto codeword = mds_encode(code, file);
  const auto stored = place(code, codeword);
  std::size_t combos = 0;
  for (std::size_t failed = 0; failed < fr.n(); ++failed) {
    auto contents = stored;
    contents[failed].clear();
    const auto repair = repair_node(code, contents, failed);
    c.expect(repair.transfers.size() == fr.alpha(), "node " + std::to_string(failed) + ": " +
                                                        std::to_string(repair.transfers.size()) + " transfers");
    c.expect(repair.recovered == stored[failed], "node " + std::to_string(failed) + ": repaired contents differ");
    contents[failed] = repair.recovered;
    for (std::size_t a = 0; a < fr.n(); ++a)
      for (std::size_t b = a + 1; b < fr.n(); ++b) {
        c.expect(reconstruct(code, contents, {a, b}) == file,
                 "fail " + std::to_string(failed) + ", read {" + std::to_string(a) + "," + std::to_string(b) + "}");
        ++combos;
      }
  }
  return {10, "storage pipeline round trip", c.ok(),
          c.summary(std::to_string(combos) + " repair/reconstruct combinations bit-exact, 3 transfers per repair")};
}

inline CriterionResult workload_convergence(std::uint64_t requests = 1'000'000, std::uint64_t seed = 2024) {
  detail::Checks c;
  const SetSystem s = to_set_system(complete_graph(4));
  const FrCode fr = from_set_system(s);
  const auto sigma = worked::k4_sigma1();
  const auto p = popularity(s, sigma);
  const auto run = workload_sim(fr, sigma, requests, PopularityModel::linear(), seed);
  const double total = static_cast<double>(fr.theta() * (fr.theta() + 1) / 2);
  const double rho = static_cast<double>(fr.rho());
  const double n = static_cast<double>(requests);
  double worst = 0.0;
  for (std::size_t i = 0; i < fr.n(); ++i) {
    const double q = static_cast<double>(p[i]) / total;
    const double expected = q / rho;
    const double se = std::sqrt(q * (1.0 - q) / n) / rho;
    const double observed = static_cast<double>(run.loads[i]) / (n * rho);
    const double z = std::abs(observed - expected) / se;
    worst = std::max(worst, z);
    c.expect(z <= 3.0, "node " + std::to_string(i) + ": " + std::to_string(z) + " standard errors");
  }
  const auto again = workload_sim(fr, sigma, requests, PopularityModel::linear(), seed);
  c.expect(io::dump(io::to_json(run)) == io::dump(io::to_json(again)), "repeat run differs");
  std::ostringstream detail;
  detail.precision(3);
  detail << "max deviation " << worst << " SE over " << requests << " requests; repeat identical";
  return {11, "workload convergence", c.ok(), c.summary(detail.str())};
}

/// Every criterion in order; a criterion that throws is reported as failed.
inline std::vector<CriterionResult> run_all(std::size_t magic_cap = kDefaultMagicCap) {
  const std::vector<std::pair<int, std::function<CriterionResult()>>> suite = {
      {1, [] { return k4_worked_example(); }},
      {2, [] { return k8_worked_example(); }},
      {3, [] { return quadratic_identity(); }},
      {4, [] { return cycle_optima(); }},
      {5, [] { return mkr_mtnr(); }},
      {6, [] { return averaging_bound_check(); }},
      {7, [=] { return supermagic(magic_cap); }},
      {8, [=] { return k4r_bounds_check(magic_cap); }},
      {9, [] { return fr_bounds(); }},
      {10, [] { return dress_pipeline(); }},
      {11, [] { return workload_convergence(); }},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, run] : suite) {
    try {
      out.push_back(run());
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

}  // namespace frlab::verify
