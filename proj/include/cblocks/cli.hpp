#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cblocks/fixtures.hpp"
#include "cblocks/heisenberg.hpp"
#include "cblocks/json_io.hpp"
#include "cblocks/verlinde.hpp"

namespace cblocks::cli {

// Exit codes: 0 success/PASS, 1 check failure, 2 input error.
enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_input_error = 2 };

namespace detail {

struct Common {
  std::string graph_path;
  std::string fixture;
  int level = -1;
  std::string labels;
  std::string rotation_path;
  std::string cocycle;
  int jobs = 1;
};

inline void add_source(CLI::App* cmd, Common& c) {
  auto* g = cmd->add_option("--graph", c.graph_path, "graph JSON file");
  auto* f = cmd->add_option("--fixture", c.fixture, "bundled fixture name");
  g->excludes(f);
}
inline void add_level(CLI::App* cmd, Common& c) {
  cmd->add_option("--level,-k", c.level, "level k (non-negative)")->required();
}
inline void add_labels(CLI::App* cmd, Common& c) {
  cmd->add_option("--labels", c.labels,
                  "boundary labels, comma-separated doubled values in leg input order");
}
inline void add_jobs(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "worker threads for exhaustive checks")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
}

struct Loaded {
  Graph graph;
  std::optional<RotationSystem> rotation;
  std::optional<Fixture> fixture;
};

inline Loaded load_graph(const Common& c) {
  if (!c.fixture.empty()) {
    auto fx = fixture_by_name(c.fixture);
    if (!fx) throw input_error("unknown fixture: " + c.fixture);
    return {fx->graph, fx->rotation, fx};
  }
  if (c.graph_path.empty()) throw input_error("need --graph or --fixture");
  Loaded l{graph_from_json(load_json_file(c.graph_path)), std::nullopt, std::nullopt};
  return l;
}

inline std::map<std::string, int> parse_labels(const Graph& g, const std::string& labels) {
  std::map<std::string, int> out;
  if (labels.empty()) {
    if (!g.legs().empty()) throw input_error("graph has legs; --labels required");
    return out;
  }
  std::vector<int> vals;
  std::stringstream ss(labels);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw input_error("bad label value: " + tok);
    }
  }
  if (vals.size() != g.legs().size())
    throw input_error("expected " + std::to_string(g.legs().size()) + " labels, got " +
                      std::to_string(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) out[g.edge(g.legs()[i]).id] = vals[i];
  return out;
}

inline RotationSystem rotation_for(const Common& c, const Loaded& l) {
  if (!c.rotation_path.empty())
    return rotation_from_json(l.graph, load_json_file(c.rotation_path));
  if (l.rotation) return *l.rotation;
  throw input_error("need --rotation (fixture has no planar embedding)");
}

// --cocycle planar | zero | builtin | <file.json>
inline CocycleSpec cocycle_for(const Common& c, const Loaded& l, int k) {
  if (c.cocycle.empty()) throw input_error("need --cocycle (planar|zero|builtin|file.json)");
  if (c.cocycle == "planar") return build_planar(l.graph, rotation_for(c, l), k);
  if (c.cocycle == "zero") return zero_cocycle(l.graph);
  if (c.cocycle == "builtin") {
    if (!l.fixture || !l.fixture->has_builtin_cocycle())
      throw input_error("no bundled cocycle for this graph (use a nonplanar-g* fixture)");
    return builtin_cocycle(*l.fixture, k, false, c.jobs);
  }
  return cocycle_from_json(l.graph, load_json_file(c.cocycle));
}

inline std::string edge_set_name(const Graph& g, Bits s) {
  if (s == 0) return "0";
  std::string out;
  auto ids = g.edge_ids(s);
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "+" : "") + ids[i];
  return out;
}

// Edge-subset tokens: comma-separated edge ids; "eN" accepted for "fN".
inline Bits parse_edge_subset(const Graph& g, const std::string& text) {
  Bits s = 0;
  if (text.empty() || text == "0") return s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!g.has_edge(tok) && tok.size() > 1 && tok[0] == 'e' && g.has_edge("f" + tok.substr(1)))
      tok = "f" + tok.substr(1);
    s = with_bit(s, g.edge_index(tok));
  }
  return s;
}

// "c=i^1;mu=f1,f2;lambda=f3,f4"
inline HeisenbergElement parse_element(const Graph& g, const std::string& text) {
  HeisenbergElement el;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw input_error("bad element part: " + part);
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "c") {
      if (val == "1") el.c4 = 0;
      else if (val == "i") el.c4 = 1;
      else if (val == "-1") el.c4 = 2;
      else if (val == "-i") el.c4 = 3;
      else if (val.rfind("i^", 0) == 0) el.c4 = static_cast<std::uint8_t>(std::stoi(val.substr(2)) & 3);
      else throw input_error("bad central value: " + val);
    } else if (key == "mu") {
      el.mu = parse_edge_subset(g, val);
    } else if (key == "lambda") {
      el.lambda = parse_edge_subset(g, val);
      if (!g.even_subgraph(el.lambda))
        throw input_error("lambda is not an even subgraph: " + val);
    } else {
      throw input_error("unknown element key: " + key);
    }
  }
  return el;
}

}  // namespace detail

// Runs the CLI; output is deterministic for identical invocations.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"exact combinatorics of Heisenberg actions on trivalent-graph conformal blocks"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed,
                 "seed for randomized property checks (current subcommands are deterministic)");

  Common c;
  int rc = exit_ok;
  std::string element_text, cocycle2, format = "csv";

  auto* dim = app.add_subcommand("dim", "number of admissible weights");
  add_source(dim, c); add_level(dim, c); add_labels(dim, c); add_jobs(dim, c);
  dim->callback([&] {
    Loaded l = load_graph(c);
    out << count_weights(l.graph, c.level, parse_labels(l.graph, c.labels), c.jobs) << "\n";
  });

  auto* en = app.add_subcommand("enumerate", "list admissible weights (doubled values)");
  add_source(en, c); add_level(en, c); add_labels(en, c);
  bool doubled = true;
  en->add_flag("--doubled", doubled,
               "values are doubled half-integers 2j (the only supported convention)");
  en->callback([&] {
    Loaded l = load_graph(c);
    WeightSet ws(l.graph, c.level, parse_labels(l.graph, c.labels));
    json arr = json::array();
    for (std::size_t i = 0; i < ws.size(); ++i) {
      json w = json::array();
      for (int e = 0; e < ws.edge_count(); ++e) w.push_back(int(ws[i][e]));
      arr.push_back(std::move(w));
    }
    out << arr.dump() << "\n";
  });

  auto* ver = app.add_subcommand("verlinde", "closed-form dimension (integer and raw float)");
  add_source(ver, c); add_level(ver, c); add_labels(ver, c);
  ver->callback([&] {
    Loaded l = load_graph(c);
    auto r = verlinde_dim_graph(l.graph, c.level, parse_labels(l.graph, c.labels));
    out << r.value << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "raw %.17g\n", r.raw);
    out << buf;
  });

  auto* fac = app.add_subcommand("factorize", "cut-and-sum identity for one edge");
  add_source(fac, c); add_level(fac, c); add_labels(fac, c); add_jobs(fac, c);
  std::string fac_edge;
  fac->add_option("--edge", fac_edge, "edge id to cut")->required();
  fac->callback([&] {
    Loaded l = load_graph(c);
    auto rep = check_factorization(l.graph, fac_edge, c.level, parse_labels(l.graph, c.labels),
                                   c.jobs);
    out << "LHS " << rep.lhs << "\n" << "RHS " << rep.rhs << "\n"
        << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (!rep.pass) rc = exit_check_failed;
  });

  auto* co = app.add_subcommand("cocycle", "twisted 1-cocycle operations");
  co->require_subcommand(1);

  auto* cbp = co->add_subcommand("build-planar", "face construction from a planar rotation");
  add_source(cbp, c); add_level(cbp, c); add_jobs(cbp, c);
  cbp->add_option("--rotation", c.rotation_path, "rotation JSON (fixture rotation by default)");
  cbp->callback([&] {
    Loaded l = load_graph(c);
    CocycleSpec spec = build_planar(l.graph, rotation_for(c, l), c.level);
    out << cocycle_to_json(l.graph, spec).dump() << "\n";
  });

  auto* cch = co->add_subcommand("check", "cocycle law and external edge condition");
  add_source(cch, c); add_level(cch, c); add_jobs(cch, c);
  cch->add_option("--rotation", c.rotation_path, "rotation JSON (for --cocycle planar)");
  cch->add_option("--cocycle", c.cocycle, "planar|zero|builtin|file.json")->required();
  cch->callback([&] {
    Loaded l = load_graph(c);
    CocycleSpec spec = cocycle_for(c, l, c.level);
    auto cv = check_cocycle(spec, l.graph, c.level, c.jobs);
    if (cv) {
      out << "cocycle FAIL " << cv->describe(l.graph) << "\n";
      rc = exit_check_failed;
    } else {
      out << "cocycle PASS\n";
    }
    auto ev = check_external_edge(spec, l.graph, c.level, c.jobs);
    if (ev) {
      out << "external-edge FAIL " << ev->describe(spec, l.graph) << "\n";
      rc = exit_check_failed;
    } else {
      out << "external-edge PASS\n";
    }
  });

  auto* cdc = co->add_subcommand("diff-coboundary",
                                 "difference of two cocycles vanishes on fixed points");
  add_source(cdc, c); add_level(cdc, c); add_jobs(cdc, c);
  cdc->add_option("--rotation", c.rotation_path, "rotation JSON (for planar specs)");
  cdc->add_option("--cocycle", c.cocycle, "planar|zero|builtin|file.json")->required();
  cdc->add_option("--cocycle2", cocycle2, "second cocycle specifier")->required();
  cdc->callback([&] {
    Loaded l = load_graph(c);
    CocycleSpec a = cocycle_for(c, l, c.level);
    Common c2 = c;
    c2.cocycle = cocycle2;
    CocycleSpec b = cocycle_for(c2, l, c.level);
    bool ok = difference_is_coboundary(a, b, l.graph, c.level);
    out << (ok ? "coboundary PASS" : "coboundary FAIL") << "\n";
    if (!ok) rc = exit_check_failed;
  });

  auto* he = app.add_subcommand("heisenberg", "central extension and its representation");
  he->require_subcommand(1);

  auto* hch = he->add_subcommand("character", "trace table over all (mu, lambda) classes");
  add_source(hch, c); add_level(hch, c); add_jobs(hch, c);
  hch->add_option("--rotation", c.rotation_path, "rotation JSON (for --cocycle planar)");
  hch->add_option("--cocycle", c.cocycle, "planar|zero|builtin|file.json")->required();
  hch->add_option("--format", format, "csv|json")->default_val("csv");
  hch->callback([&] {
    Loaded l = load_graph(c);
    CocycleSpec spec = cocycle_for(c, l, c.level);
    MuQuotient muq(l.graph);
    auto rows = character_table(l.graph, spec, c.level, muq, c.jobs);
    bool all_pass = true;
    if (format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"mu", edge_set_name(l.graph, r.mu)},
                       {"lambda", edge_set_name(l.graph, r.lambda)},
                       {"trace", r.trace},
                       {"target", r.target},
                       {"pass", r.pass}});
        all_pass = all_pass && r.pass;
      }
      out << arr.dump() << "\n";
    } else if (format == "csv") {
      out << "mu,lambda,trace,target,pass\n";
      for (const auto& r : rows) {
        out << edge_set_name(l.graph, r.mu) << "," << edge_set_name(l.graph, r.lambda) << ","
            << r.trace << "," << r.target << "," << (r.pass ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && r.pass;
      }
    } else {
      throw input_error("unknown format: " + format);
    }
    if (!all_pass) rc = exit_check_failed;
  });

  auto* hma = he->add_subcommand("matrix", "signed permutation matrix of one element");
  add_source(hma, c); add_level(hma, c); add_jobs(hma, c);
  hma->add_option("--rotation", c.rotation_path, "rotation JSON (for --cocycle planar)");
  hma->add_option("--cocycle", c.cocycle, "planar|zero|builtin|file.json")->required();
  hma->add_option("--element", element_text,
                  "element, e.g. \"c=i^0;mu=f1;lambda=f1,f2\" (eN aliases fN in mu)")
      ->required();
  hma->callback([&] {
    Loaded l = load_graph(c);
    CocycleSpec spec = cocycle_for(c, l, c.level);
    HeisenbergElement el = parse_element(l.graph, element_text);
    WeightSet ws(l.graph, c.level);
    RepMatrix m = represent(el, spec, ws);
    static const char* signs[4] = {"1", "i", "-1", "-i"};
    json entries = json::array();
    for (std::uint32_t j = 0; j < m.n; ++j)
      entries.push_back({m.row[j], j, signs[m.ipow[j]]});
    json doc = {{"dim", m.n}, {"level", c.level}, {"entries", entries}};
    out << doc.dump() << "\n";
  });

  auto* hvq = he->add_subcommand("verify-q", "mod-4 reduction identity over all pairs");
  add_source(hvq, c);
  hvq->callback([&] {
    Loaded l = load_graph(c);
    bool ok = verify_q_reduction(l.graph);
    std::size_t n = std::size_t{1} << (2 * l.graph.genus());
    out << (ok ? "q-reduction PASS (" : "q-reduction FAIL (") << n << "x" << n << " pairs)\n";
    if (!ok) rc = exit_check_failed;
  });

  auto* fx = app.add_subcommand("fixtures", "bundled graphs");
  fx->require_subcommand(1);
  auto* fxl = fx->add_subcommand("list", "list bundled fixtures");
  fxl->callback([&] {
    for (const auto& name : fixture_names()) {
      if (name == "ladder-<g>") {
        out << "ladder-<g>     parametric planar chain of bigons (g >= 2); e.g. ladder-4\n";
        continue;
      }
      Fixture f = *fixture_by_name(name);
      out << f.name << "  genus=" << f.graph.genus() << " edges=" << f.graph.edge_count()
          << (f.rotation ? " planar-rotation" : "")
          << (f.has_builtin_cocycle() ? " builtin-cocycle[" + f.spec_validity + "]" : "") << "  - "
          << f.note << "\n";
    }
  });

  std::vector<const char*> argv;
  argv.push_back("cblocks");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const integrality_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  return rc;
}

}  // namespace cblocks::cli
