#pragma once

// JSON import/export. Imports canonicalize (blocks sorted, edges folded) so
// export(import(x)) is stable byte for byte. Malformed documents raise
// ValidationError.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frlab/dress.hpp"
#include "frlab/error.hpp"
#include "frlab/frcode.hpp"
#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/minps.hpp"
#include "frlab/setsystem.hpp"

namespace frlab::io {

using Json = nlohmann::ordered_json;

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string(what) + " JSON is missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline std::string dump(const Json& j) { return j.dump(); }

// ---------------------------------------------------------------------------
// SetSystem: {"num_points": n, "blocks": [[...], ...]}

inline Json to_json(const SetSystem& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks()) blocks.push_back(b);
  return Json{{"num_points", s.num_points()}, {"blocks", blocks}};
}

inline SetSystem set_system_from_json(const Json& j) {
  return detail::guarded("set system", [&] {
    const auto n = detail::field(j, "num_points", "set system").get<std::size_t>();
    auto blocks = detail::field(j, "blocks", "set system").get<std::vector<Block>>();
    return SetSystem(n, std::move(blocks)).canonical();
  });
}

// ---------------------------------------------------------------------------
// Graph: {"num_vertices": n, "edges": [[u, v], ...], "multiplicity": [...]}
// with multiplicity present only for multigraphs.

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  Json mult = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({e.u, e.v});
    mult.push_back(e.multiplicity);
  }
  Json out{{"num_vertices", g.num_vertices()}, {"edges", edges}};
  if (!g.is_simple()) out["multiplicity"] = mult;
  return out;
}

inline Graph graph_from_json(const Json& j) {
  return detail::guarded("graph", [&] {
    const auto n = detail::field(j, "num_vertices", "graph").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : detail::field(j, "edges", "graph")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("graph edge must be a pair");
      pairs.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    std::vector<std::uint32_t> mult;
    if (j.contains("multiplicity")) mult = j.at("multiplicity").get<std::vector<std::uint32_t>>();
    return Graph(n, std::move(pairs), std::move(mult));
  });
}

// ---------------------------------------------------------------------------
// FrCode: {"n", "alpha", "rho", "theta", "nodes": [[...], ...]}

inline Json to_json(const FrCode& c) {
  Json nodes = Json::array();
  for (const auto& node : c.nodes()) nodes.push_back(node);
  return Json{{"n", c.n()}, {"alpha", c.alpha()}, {"rho", c.rho()}, {"theta", c.theta()}, {"nodes", nodes}};
}

inline FrCode fr_code_from_json(const Json& j) {
  return detail::guarded("FR code", [&] {
    return FrCode(detail::field(j, "n", "FR code").get<std::size_t>(),
                  detail::field(j, "alpha", "FR code").get<std::size_t>(),
                  detail::field(j, "rho", "FR code").get<std::size_t>(),
                  detail::field(j, "theta", "FR code").get<std::size_t>(),
                  detail::field(j, "nodes", "FR code").get<std::vector<std::vector<std::size_t>>>());
  });
}

/// Set system of any of the three formats: a set system as is, a graph as
/// its 2-uniform system, an FR code as the system whose blocks are symbols.
inline SetSystem any_set_system_from_json(const Json& j) {
  if (j.is_object() && j.contains("nodes")) return to_set_system(fr_code_from_json(j));
  if (j.is_object() && j.contains("num_vertices")) return to_set_system(graph_from_json(j));
  return set_system_from_json(j);
}

/// FR code from any of the three formats.
inline FrCode any_fr_code_from_json(const Json& j) {
  if (j.is_object() && j.contains("nodes")) return fr_code_from_json(j);
  return from_set_system(any_set_system_from_json(j));
}

// ---------------------------------------------------------------------------
// Labelings: {"labels": [...]}

template <class Tag>
Json to_json(const Labeling<Tag>& l) {
  return Json{{"labels", l.labels()}};
}

template <class L>
L labeling_from_json(const Json& j) {
  return detail::guarded("labeling", [&] {
    return L(detail::field(j, "labels", "labeling").get<std::vector<std::int64_t>>());
  });
}

inline Json to_json(const SolveResult& r) {
  return Json{{"value", r.value},
              {"labels", r.labeling.labels()},
              {"status", to_string(r.status)},
              {"nodes_explored", r.nodes_explored}};
}

inline SolveResult solve_result_from_json(const Json& j) {
  return detail::guarded("solve result", [&] {
    SolveResult r;
    r.value = detail::field(j, "value", "solve result").get<std::int64_t>();
    r.labeling = VertexLabeling(detail::field(j, "labels", "solve result").get<std::vector<std::int64_t>>());
    const auto status = detail::field(j, "status", "solve result").get<std::string>();
    if (status == "exact")
      r.status = SolveStatus::exact;
    else if (status == "heuristic")
      r.status = SolveStatus::heuristic;
    else if (status == "closed_form")
      r.status = SolveStatus::closed_form;
    else
      throw ValidationError("unknown solve status " + status);
    if (j.contains("nodes_explored")) r.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
    return r;
  });
}

inline Json to_json(const ValidationReport& r) {
  Json out{{"uniform", r.uniform}, {"rho", r.rho}, {"regular", r.regular}, {"alpha", r.alpha}, {"linear", r.linear}};
  out["nonuniform_block"] = r.nonuniform_block ? Json(*r.nonuniform_block) : Json(nullptr);
  out["irregular_point"] = r.irregular_point ? Json(*r.irregular_point) : Json(nullptr);
  out["nonlinear_pair"] = r.nonlinear_pair ? Json{r.nonlinear_pair->first, r.nonlinear_pair->second} : Json(nullptr);
  return out;
}

/// Exact rationals serialize as an integer when integral, else "p/q".
inline Json rational_json(const Rational& r) {
  if (r.denominator() == 1) return Json(r.numerator());
  return Json(to_string(r));
}

inline Json to_json(const EdgeLabeling& l) { return Json{{"labels", l.labels()}}; }

inline EdgeLabeling edge_labeling_from_json(const Json& j) {
  return detail::guarded("edge labeling", [&] {
    return EdgeLabeling(detail::field(j, "labels", "edge labeling").get<std::vector<std::int64_t>>());
  });
}

inline Json to_json(const MagicVerdict& v) {
  Json out{{"supermagic", v.is_magic}};
  out["index"] = v.index ? Json(*v.index) : Json(nullptr);
  out["witness"] = v.witness ? Json{v.witness->first, v.witness->second} : Json(nullptr);
  return out;
}

inline Json to_json(const WorkloadResult& w) {
  return Json{{"loads", w.loads},
              {"imbalance", w.imbalance},
              {"rng", w.rng},
              {"seed", w.seed},
              {"requests", w.requests}};
}

inline Json to_json(const std::vector<Transfer>& log) {
  Json out = Json::array();
  for (const auto& t : log) out.push_back(Json{{"helper", t.helper}, {"symbol", t.symbol}});
  return out;
}

}  // namespace frlab::io
