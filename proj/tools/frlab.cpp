// frlab command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 ok, 1 verification failure or internal error, 2 bad input,
// 3 infeasible.

#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frlab/frlab.hpp"

namespace {

using frlab::io::Json;

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw frlab::ValidationError(std::string(name) + " must be a positive integer, got '" + raw + "'");
  }
}

std::uint64_t subset_cap() { return env_cap("FRLAB_SUBSET_CAP", frlab::kDefaultSubsetCap); }
std::size_t magic_cap() { return static_cast<std::size_t>(env_cap("FRLAB_MAGIC_CAP", frlab::kDefaultMagicCap)); }

void emit(const Json& j) { std::cout << frlab::io::dump(j) << '\n'; }

frlab::Graph load_graph(const std::string& path) {
  const auto j = frlab::io::read_file(path);
  if (j.is_object() && j.contains("num_vertices")) return frlab::io::graph_from_json(j);
  return frlab::to_graph(frlab::io::any_set_system_from_json(j));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw frlab::ValidationError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw frlab::ValidationError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

frlab::PopularityModel parse_model(const std::string& text) {
  if (text == "linear") return frlab::PopularityModel::linear();
  if (text.rfind("zipf:", 0) == 0) {
    try {
      std::size_t used = 0;
      const auto tail = text.substr(5);
      const double beta = std::stod(tail, &used);
      if (used == tail.size()) return frlab::PopularityModel::zipf(beta);
    } catch (const std::logic_error&) {
    }
  }
  throw frlab::ValidationError("model must be 'linear' or 'zipf:BETA', got '" + text + "'");
}

Json graph_output(const frlab::Graph& g, const std::string& as) {
  if (as == "graph") return frlab::io::to_json(g);
  if (as == "system") return frlab::io::to_json(frlab::to_set_system(g));
  return frlab::io::to_json(frlab::from_set_system(frlab::to_set_system(g)));
}

struct Options {
  // gen
  std::size_t n = 0, r = 0, copies = 1;
  std::string as = "graph";
  std::string input;
  // eval / magic check
  std::string system, labeling;
  std::optional<double> zipf;
  // minps
  bool exact = false;
  std::optional<std::size_t> heuristic;
  std::size_t max_vertices = 12;
  std::optional<std::uint64_t> node_budget;
  // construct / magic
  std::int64_t m = 0, nn = 0, rr = 0, theta = 0, offset = 0;
  bool with_labeling = false;
  // bound / filesize / report
  std::int64_t bn = 0, bk = 0, alpha = 0, rho = 0;
  std::size_t k = 0;
  std::optional<std::size_t> sample, kmax;
  std::uint64_t seed = 0;
  std::string format = "csv";
  // sim
  std::string code, model = "linear", payload, out;
  std::uint64_t requests = 0;
  std::optional<std::size_t> file_symbols;
  std::size_t fail = 0;
  // verify
  std::string suite = "paper";
  std::string verify_format = "table";
};

int run(int argc, char** argv) {
  CLI::App app{"Fractional repetition codes: construction, access balance, bounds and simulation", "frlab"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  // gen -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate graphs and set systems, or transform one");
  gen->require_subcommand(1);
  auto add_shape = [&](CLI::App* s) {
    s->add_option("--copies", o.copies, "Disjoint copies")->check(CLI::PositiveNumber);
    s->add_option("--as", o.as, "Output format")->check(CLI::IsMember({"graph", "system", "code"}));
  };
  auto* gen_complete = gen->add_subcommand("complete", "K_n");
  gen_complete->add_option("--n", o.n)->required();
  add_shape(gen_complete);
  bind(gen_complete, [&] {
    emit(graph_output(frlab::copies(frlab::complete_graph(o.n), o.copies), o.as));
    return 0;
  });
  auto* gen_turan = gen->add_subcommand("turan", "Complete r-partite graph T(n,r), r | n");
  gen_turan->add_option("--n", o.n)->required();
  gen_turan->add_option("--r", o.r)->required();
  add_shape(gen_turan);
  bind(gen_turan, [&] {
    emit(graph_output(frlab::copies(frlab::turan_graph(o.n, o.r), o.copies), o.as));
    return 0;
  });
  auto* gen_cycle = gen->add_subcommand("cycle", "C_n");
  gen_cycle->add_option("--n", o.n)->required();
  add_shape(gen_cycle);
  bind(gen_cycle, [&] {
    emit(graph_output(frlab::copies(frlab::cycle_graph(o.n), o.copies), o.as));
    return 0;
  });
  auto* gen_dual = gen->add_subcommand("dual", "Dual set system");
  gen_dual->add_option("input", o.input)->required();
  bind(gen_dual, [&] {
    emit(frlab::io::to_json(frlab::dual(frlab::io::any_set_system_from_json(frlab::io::read_file(o.input)))));
    return 0;
  });
  auto* gen_line = gen->add_subcommand("line", "Line graph of a set system");
  gen_line->add_option("input", o.input)->required();
  bind(gen_line, [&] {
    emit(frlab::io::to_json(frlab::line_graph(frlab::io::any_set_system_from_json(frlab::io::read_file(o.input)))));
    return 0;
  });
  auto* gen_shadow = gen->add_subcommand("shadow", "2-shadow of a set system");
  gen_shadow->add_option("input", o.input)->required();
  bind(gen_shadow, [&] {
    emit(frlab::io::to_json(frlab::shadow2(frlab::io::any_set_system_from_json(frlab::io::read_file(o.input)))));
    return 0;
  });
  auto* gen_validate = gen->add_subcommand("validate", "Uniformity, regularity and linearity report");
  gen_validate->add_option("input", o.input)->required();
  bind(gen_validate, [&] {
    emit(frlab::io::to_json(frlab::validate(frlab::io::any_set_system_from_json(frlab::io::read_file(o.input)))));
    return 0;
  });

  // eval ------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Popularity, variance, minsum and maxsum of a block labeling");
  eval->add_option("system", o.system, "Set system, graph or code JSON")->required();
  eval->add_option("labeling", o.labeling, "Labeling JSON")->required();
  eval->add_option("--zipf", o.zipf, "Also report Zipf popularity with this exponent");
  bind(eval, [&] {
    const auto s = frlab::io::any_set_system_from_json(frlab::io::read_file(o.system));
    const auto sigma = frlab::io::labeling_from_json<frlab::BlockLabeling>(frlab::io::read_file(o.labeling));
    Json out{{"popularity", frlab::popularity(s, sigma)},
             {"variance", frlab::io::rational_json(frlab::variance(s, sigma))},
             {"minsum", frlab::minsum(s, sigma)},
             {"maxsum", frlab::maxsum(s, sigma)}};
    if (o.zipf) {
      out["zipf_popularity"] = frlab::zipf_popularity(s, sigma, *o.zipf);
      out["zipf_imbalance"] = frlab::zipf_imbalance(s, sigma, *o.zipf);
    }
    emit(out);
    return 0;
  });

  // minps -----------------------------------------------------------------
  auto* minps = app.add_subcommand("minps", "Minimum product-sum vertex labeling");
  minps->add_option("graph", o.input, "Graph JSON")->required();
  auto* exact_flag = minps->add_flag("--exact", o.exact, "Branch and bound (default)");
  minps->add_option("--heuristic", o.heuristic, "Local search over this many seeds")
      ->check(CLI::PositiveNumber)
      ->excludes(exact_flag);
  minps->add_option("--max-vertices", o.max_vertices, "Exact solver size limit");
  minps->add_option("--node-budget", o.node_budget, "Exact solver node limit");
  bind(minps, [&] {
    const auto g = load_graph(o.input);
    frlab::SolveResult best;
    if (o.heuristic) {
      for (std::uint64_t s = 0; s < *o.heuristic; ++s) {
        auto r = frlab::local_search(g, {.seed = s});
        if (s == 0 || r.value < best.value) best = std::move(r);
      }
    } else {
      best = frlab::exact_minps(g, {.max_vertices = o.max_vertices, .node_budget = o.node_budget});
    }
    emit(frlab::io::to_json(best));
    return 0;
  });

  // construct -------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "Closed-form MinPS labelings");
  construct->require_subcommand(1);
  auto* c_turan = construct->add_subcommand("turan", "T(n,r)");
  c_turan->add_option("--n", o.n)->required();
  c_turan->add_option("--r", o.r)->required();
  bind(c_turan, [&] {
    emit(frlab::io::to_json(frlab::turan_labeling(o.n, o.r)));
    return 0;
  });
  auto* c_mkr = construct->add_subcommand("mkr", "m disjoint copies of K_r");
  c_mkr->add_option("--m", o.m)->required();
  c_mkr->add_option("--r", o.rr)->required();
  bind(c_mkr, [&] {
    emit(frlab::io::to_json(frlab::mkr_labeling(o.m, o.rr)));
    return 0;
  });
  auto* c_mtnr = construct->add_subcommand("mtnr", "m disjoint copies of T(n,r)");
  c_mtnr->add_option("--m", o.m)->required();
  c_mtnr->add_option("--n", o.nn)->required();
  c_mtnr->add_option("--r", o.rr)->required();
  bind(c_mtnr, [&] {
    emit(frlab::io::to_json(frlab::mtnr_labeling(o.m, o.nn, o.rr)));
    return 0;
  });
  auto* c_cycle = construct->add_subcommand("cycle", "C_theta");
  c_cycle->add_option("--theta", o.theta)->required();
  bind(c_cycle, [&] {
    emit(frlab::io::to_json(frlab::cycle_labeling(o.theta)));
    return 0;
  });

  // magic -----------------------------------------------------------------
  auto* magic = app.add_subcommand("magic", "Supermagic labelings");
  magic->require_subcommand(1);
  auto* m_check = magic->add_subcommand("check", "Check an edge labeling");
  m_check->add_option("graph", o.input)->required();
  m_check->add_option("labeling", o.labeling)->required();
  bind(m_check, [&] {
    const auto g = load_graph(o.input);
    emit(frlab::io::to_json(
        frlab::check_supermagic(g, frlab::io::edge_labeling_from_json(frlab::io::read_file(o.labeling)))));
    return 0;
  });
  auto* m_search = magic->add_subcommand("search", "Exhaustive search for a supermagic labeling");
  m_search->add_option("graph", o.input)->required();
  m_search->add_option("--offset", o.offset, "Labels start at offset+1");
  bind(m_search, [&] {
    const auto g = load_graph(o.input);
    const auto found = frlab::supermagic_search(g, o.offset, magic_cap());
    Json out{{"supermagic", found.has_value()}};
    if (found) {
      out["index"] = *frlab::check_supermagic(g, *found).index;
      out["labels"] = found->labels();
    } else {
      out["index"] = nullptr;
      out["labels"] = nullptr;
    }
    emit(out);
    return 0;
  });
  auto* m_ivanco = magic->add_subcommand("ivanco", "Existence of a supermagic labeling of T(n,r)");
  m_ivanco->add_option("--n", o.nn)->required();
  m_ivanco->add_option("--r", o.rr)->required();
  bind(m_ivanco, [&] {
    emit(Json{{"supermagic", frlab::ivanco_predicate(o.nn, o.rr)}});
    return 0;
  });
  auto* m_k4r = magic->add_subcommand("k4r", "Variance bounds for K_4r");
  m_k4r->add_option("--r", o.rr)->required();
  m_k4r->add_flag("--labeling", o.with_labeling, "Also construct the labeling (needs supermagic search)");
  bind(m_k4r, [&] {
    const auto b = frlab::k4r_bounds(o.rr);
    Json out{{"r", o.rr},
             {"upper", b.upper},
             {"lower", b.lower},
             {"reduced_minps", frlab::io::rational_json(b.reduced_minps)},
             {"offset", b.offset}};
    if (o.with_labeling) {
      const auto l = frlab::k4r_labeling(o.rr, magic_cap());
      out["labels"] = l.labeling.labels();
      out["variance"] = frlab::io::rational_json(l.variance);
    }
    emit(out);
    return 0;
  });

  // bound / filesize / report ---------------------------------------------
  auto* bound = app.add_subcommand("bound", "Upper bounds on the file size");
  bound->add_option("--n", o.bn)->required();
  bound->add_option("--k", o.bk)->required();
  bound->add_option("--alpha", o.alpha)->required();
  bound->add_option("--rho", o.rho)->required();
  bind(bound, [&] {
    Json out{{"n", o.bn}, {"k", o.bk}, {"alpha", o.alpha}, {"rho", o.rho}};
    out["bound1"] = frlab::bound_singleton(o.bn, o.bk, o.alpha, o.rho);
    out["bound2"] = o.bk < o.bn ? Json(frlab::bound_recursive(o.bn, o.bk, o.alpha, o.rho)) : Json(nullptr);
    emit(out);
    return 0;
  });

  auto* filesize = app.add_subcommand("filesize", "Minimum number of distinct symbols on k nodes");
  filesize->add_option("code", o.code, "Code, set system or graph JSON")->required();
  filesize->add_option("--k", o.k)->required();
  auto* fs_exact = filesize->add_flag("--exact", o.exact, "Enumerate all k-subsets (default)");
  filesize->add_option("--sample", o.sample, "Random k-subsets to try")->excludes(fs_exact);
  filesize->add_option("--seed", o.seed);
  bind(filesize, [&] {
    const auto c = frlab::io::any_fr_code_from_json(frlab::io::read_file(o.code));
    const auto fs = o.sample ? frlab::file_size_sampled(c, o.k, *o.sample, o.seed)
                             : frlab::file_size_exact(c, o.k, subset_cap());
    emit(Json{{"k", o.k},
              {"value", fs.value},
              {"exact", fs.exact},
              {"witness", fs.witness},
              {"subsets_visited", fs.subsets_visited}});
    return 0;
  });

  auto* report = app.add_subcommand("report", "k-optimality report against both bounds");
  report->add_option("code", o.code, "Code, set system or graph JSON")->required();
  report->add_option("--kmax", o.kmax);
  report->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  bind(report, [&] {
    const auto c = frlab::io::any_fr_code_from_json(frlab::io::read_file(o.code));
    const auto rep = frlab::optimality_report(c, o.kmax, subset_cap());
    if (o.format == "csv") {
      std::cout << frlab::to_csv(rep);
      return 0;
    }
    Json rows = Json::array();
    for (const auto& row : rep.rows)
      rows.push_back(Json{{"k", row.k},
                          {"M", row.file_size},
                          {"bound1", row.bound1},
                          {"bound2", row.bound2},
                          {"certified", row.certified ? "certified" : "undetermined"}});
    emit(Json{{"rows", rows}, {"optimal_certified", rep.optimal_certified}});
    return 0;
  });

  // sim -------------------------------------------------------------------
  auto* sim = app.add_subcommand("sim", "Access workload and repair simulation");
  sim->add_option("--code", o.code, "Code, set system or graph JSON")->required();
  sim->add_option("--labeling", o.labeling, "Block labeling JSON")->required();
  sim->add_option("--requests", o.requests)->required();
  sim->add_option("--model", o.model, "linear or zipf:BETA");
  sim->add_option("--seed", o.seed);
  sim->add_option("--fail", o.fail, "Node to fail and repair");
  sim->add_option("--payload", o.payload, "File to encode; one byte per symbol");
  sim->add_option("--m", o.file_symbols, "File size in symbols when no payload is given");
  sim->add_option("--out", o.out, "Write the file reconstructed after repair here")->needs("--payload");
  bind(sim, [&] {
    const auto model = parse_model(o.model);
    const auto fr = frlab::io::any_fr_code_from_json(frlab::io::read_file(o.code));
    const auto sigma = frlab::io::labeling_from_json<frlab::BlockLabeling>(frlab::io::read_file(o.labeling));
    std::vector<std::uint8_t> file;
    if (!o.payload.empty()) {
      file = read_bytes(o.payload);
      if (o.file_symbols && *o.file_symbols != file.size())
        throw frlab::ValidationError("--m disagrees with the payload size");
    } else {
      file.assign(o.file_symbols.value_or(1), 0);
    }
    if (file.empty()) throw frlab::ValidationError("payload is empty");

    const auto w = frlab::workload_sim(fr, sigma, o.requests, model, o.seed);
    const frlab::DressCode code(fr, file.size());
    auto contents = frlab::place(code, frlab::mds_encode(code, file));
    const auto rep = frlab::repair_node(code, contents, o.fail);
    contents[o.fail] = rep.recovered;
    std::vector<std::size_t> all(fr.n());
    std::iota(all.begin(), all.end(), 0);
    const auto rebuilt = frlab::reconstruct(code, contents, all);
    if (rebuilt != file) throw std::logic_error("reconstructed file differs from the original");
    if (!o.out.empty()) write_bytes(o.out, rebuilt);

    auto out = frlab::io::to_json(w);
    out["transfers"] = frlab::io::to_json(rep.transfers);
    out["failed"] = o.fail;
    out["m"] = file.size();
    emit(out);
    return 0;
  });

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the reproduction suite");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"paper"}));
  verify->add_option("--format", o.verify_format)->check(CLI::IsMember({"table", "json"}));
  bind(verify, [&] {
    const auto results = frlab::verify::run_all(magic_cap());
    bool ok = true;
    Json rows = Json::array();
    for (const auto& r : results) {
      ok = ok && r.passed;
      if (o.verify_format == "table")
        std::cout << (r.passed ? "PASS" : "FAIL") << "  #" << r.id << ' ' << r.name << "  " << r.detail << '\n';
      else
        rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (o.verify_format == "json") emit(Json{{"suite", o.suite}, {"passed", ok}, {"criteria", rows}});
    return ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return action ? action() : 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const frlab::ValidationError& e) {
    std::cerr << "frlab: " << e.what() << '\n';
    return 2;
  } catch (const frlab::InfeasibleError& e) {
    std::cerr << "frlab: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "frlab: internal error: " << e.what() << '\n';
    return 1;
  }
}
