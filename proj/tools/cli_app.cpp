#include "cli_app.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeband/approx.hpp"
#include "treeband/coloring.hpp"
#include "treeband/conditions.hpp"
#include "treeband/decomp.hpp"
#include "treeband/error.hpp"
#include "treeband/fold.hpp"
#include "treeband/obstructions.hpp"
#include "treeband/params.hpp"
#include "treeband/searchgame.hpp"
#include "treeband/solver.hpp"
#include "treeband/spqr.hpp"

namespace treeband::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string input = "-";
  std::string format = "json";
  std::string layout, decomp, colouring, trace, witness;
  std::string param = "all";
  std::string family;
  std::vector<int> family_params;
  int k = -1, p = -1, a = -1, b = -1, c = -1, bound = -1;
  int threads = 0;
  int max_n = 100000;
  std::int64_t max_states = 20'000'000;
  bool max_states_set = false;
  int vertices = 10;
  double edge_prob = 0.3;
};

struct Outcome {
  json doc;
  int code = kExitOk;
};

class Runner {
 public:
  Runner(const Options& opt, std::istream& in) : opt_(opt), in_(in) {}

  std::string read_text(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw Error(ErrorKind::kInvalidArgument, "standard input can feed only one argument");
      stdin_used_ = true;
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  Graph graph() {
    if (!graph_) {
      graph_ = parse_graph(read_text(opt_.input));
      if (graph_->n() > opt_.max_n)
        throw Error(ErrorKind::kSizeLimit, "graph has " + std::to_string(graph_->n()) +
                                               " vertices, above --max-n " + std::to_string(opt_.max_n));
    }
    return *graph_;
  }

  // Artefact files come either in their text format or as a CLI JSON document.
  static bool is_json(const std::string& text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
  }

  static json parse_json(const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, std::string("bad JSON: ") + e.what());
    }
  }

  TreeLayout layout(const std::string& path) {
    std::string text = read_text(path);
    if (!is_json(text)) return parse_layout(text);
    json j = parse_json(text);
    if (j.contains("layout")) j = j["layout"];
    try {
      TreeLayout t;
      t.root = j.at("root").get<int>();
      t.parent = j.at("parent").get<std::vector<int>>();
      return t;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, std::string("bad layout object: ") + e.what());
    }
  }

  TreeDecomposition decomposition(const std::string& path) {
    std::string text = read_text(path);
    if (!is_json(text)) return parse_decomposition(text);
    json j = parse_json(text);
    if (j.contains("decomposition")) j = j["decomposition"];
    try {
      TreeDecomposition d;
      d.bags = j.at("bags").get<std::vector<std::vector<int>>>();
      for (const auto& e : j.at("tree_edges")) d.tree_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      d.root = j.value("root", -1);
      for (auto& bag : d.bags) std::sort(bag.begin(), bag.end());
      return d;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, std::string("bad decomposition object: ") + e.what());
    }
  }

  Colouring colouring(const std::string& path) {
    std::string text = read_text(path);
    if (!is_json(text)) {
      Colouring c = parse_colouring(text);
      for (int x : c.colour) c.palette_size = std::max(c.palette_size, x + 1);
      return c;
    }
    json j = parse_json(text);
    if (j.contains("colouring")) j = j["colouring"];
    try {
      Colouring c;
      c.colour = j.at("colour").get<std::vector<int>>();
      c.palette_size = j.at("palette_size").get<int>();
      return c;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, std::string("bad colouring object: ") + e.what());
    }
  }

  SearchTrace trace(const std::string& path) {
    std::string text = read_text(path);
    if (!is_json(text)) return parse_trace(text);
    json j = parse_json(text);
    std::ostringstream lines;
    try {
      for (const auto& e : j.at("trace"))
        lines << e.at("step").get<int>() << ' ' << e.at("kind").get<std::string>() << ' '
              << e.at("vertex").get<int>() << '\n';
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParse, std::string("bad trace array: ") + e.what());
    }
    return parse_trace(lines.str());
  }

  const Options& opt() const { return opt_; }

 private:
  const Options& opt_;
  std::istream& in_;
  bool stdin_used_ = false;
  std::optional<Graph> graph_;
};

json layout_json(const TreeLayout& t) { return {{"root", t.root}, {"parent", t.parent}}; }

json decomposition_json(const TreeDecomposition& d) {
  json edges = json::array();
  for (auto [s, t] : d.tree_edges) edges.push_back({s, t});
  return {{"bags", d.bags}, {"tree_edges", edges}, {"root", d.root}};
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"m", g.m()}, {"edges", edges}};
}

json trace_json(const SearchTrace& t) {
  json events = json::array();
  for (const auto& e : t.events)
    events.push_back({{"step", e.step},
                      {"kind", e.kind == SearchEvent::Kind::kPlace ? "place" : "remove"},
                      {"vertex", e.vertex}});
  return events;
}

json treewidth_witness_json(const TreewidthWitness& w) {
  return {{"type", "treewidth"}, {"lower_bound", w.lower_bound}, {"branch_sets", w.branch_sets}, {"exact", w.exact}};
}

json dipole_witness_json(const DipoleWitness& w) {
  return {{"type", "dipole"}, {"u", w.u}, {"v", w.v}, {"paths", w.paths}};
}

int require(int value, const char* flag) {
  if (value < 0) throw Error(ErrorKind::kInvalidArgument, std::string("missing or negative ") + flag);
  return value;
}

// Shared default when a command needs a layout and none was given.
TreeLayout layout_or_exact(Runner& r, const Graph& g) {
  if (!r.opt().layout.empty()) return r.layout(r.opt().layout);
  return exact_treebandwidth(g, r.opt().max_states).layout;
}

TreeDecomposition decomposition_or_provider(Runner& r, const Graph& g) {
  if (!r.opt().decomp.empty()) return r.decomposition(r.opt().decomp);
  return enforce_wellformed(g, lean_provider(g).decomposition);
}

ApproxOptions approx_options(const Options& o) {
  ApproxOptions a;
  if (o.max_states_set) a.minor_search_states = o.max_states;
  return a;
}

Outcome tbw_exact(Runner& r) {
  Graph g = r.graph();
  auto res = exact_treebandwidth(g, r.opt().max_states);
  return {{{"treebandwidth", res.value}, {"layout", layout_json(res.layout)}, {"states", res.states}}};
}

Outcome tbw_decide(Runner& r) {
  Graph g = r.graph();
  int k = require(r.opt().k, "-k");
  auto res = decide_treebandwidth(g, k, r.opt().max_states);
  if (res.yes)
    return {{{"answer", "yes"}, {"k", k}, {"layout", layout_json(res.layout)},
             {"bandwidth", bandwidth_of_layout(g, res.layout)}, {"states", res.states}}};
  return {{{"answer", "no"}, {"k", k}, {"witness", {{"type", "exhaustive"}, {"states", res.states}}}}, kExitNo};
}

Outcome tbw_approx(Runner& r) {
  Graph g = r.graph();
  int k = require(r.opt().k, "-k");
  auto res = approximate_treebandwidth(g, k, approx_options(r.opt()));
  json doc{{"k", k}, {"provider_width", res.provider_width}, {"provider_exact", res.provider_exact}};
  if (!res.accepted) {
    doc["answer"] = "rejected";
    doc["reason"] = reject_reason_name(res.reason);
    doc["witness_text"] = res.witness_text;
    switch (res.reason) {
      case RejectReason::kTreewidth: doc["witness"] = treewidth_witness_json(res.treewidth_witness); break;
      case RejectReason::kFan:
        doc["witness"] = {{"type", "fan"}, {"centre", res.fan_witness.centre},
                          {"branch_sets", res.fan_witness.branch_sets}};
        break;
      case RejectReason::kNeighbourhoodDepth:
        doc["witness"] = {{"type", "neighbourhood-treedepth"}, {"centre", res.depth_witness.centre},
                          {"treedepth", res.depth_witness.treedepth}};
        break;
      default: break;
    }
    return {doc, kExitNo};
  }
  doc["answer"] = "accepted";
  doc["layout"] = layout_json(res.layout);
  doc["bandwidth"] = res.bandwidth;
  doc["thresholds"] = {{"a", res.threshold_a}, {"b", res.threshold_b}, {"c", res.threshold_c}};
  doc["measured"] = {{"a", res.measured_a}, {"b", res.measured_b}, {"c", res.measured_c}};
  doc["relaxed"] = res.relaxed;
  doc["unchecked_centres"] = res.unchecked_centres;
  doc["fold_diameter"] = res.fold_diameter;
  doc["fold_diameter_bound"] = res.fold_diameter_bound;
  return {doc};
}

Outcome obstruct_fan(Runner& r) {
  Graph g = r.graph();
  auto f = fan_number(g, r.opt().max_states);
  return {{{"fan_number", f.value}, {"centre", f.centre}, {"branch_sets", f.branch_sets}}};
}

Outcome obstruct_dipole(Runner& r) {
  Graph g = r.graph();
  auto d = dipole_number(g);
  return {{{"dipole_number", d.value}, {"u", d.u}, {"v", d.v}, {"paths", d.paths}}};
}

Outcome decomp_validate(Runner& r) {
  Graph g = r.graph();
  if (r.opt().decomp.empty()) throw Error(ErrorKind::kInvalidArgument, "--decomp is required");
  auto d = r.decomposition(r.opt().decomp);
  std::optional<int> k;
  if (r.opt().k >= 0) k = r.opt().k;
  auto rep = validate_decomposition(g, d, k);
  json props = json::array();
  for (int i = 0; i < 8; ++i)
    props.push_back({{"name", "T" + std::to_string(i + 1)}, {"checked", rep.props[i].checked},
                     {"ok", rep.props[i].ok}, {"witness", rep.props[i].witness}});
  json doc{{"valid", rep.valid()}, {"wellformed", rep.wellformed()}, {"properties", props}, {"width", d.width()}};
  if (!rep.valid()) return {doc, kExitNo};
  doc["overlap"] = overlap_number(d);
  doc["max_subtree_diameter"] = max_vertex_subtree_diameter(g.n(), d);
  return {doc};
}

Outcome decomp_fold_fan(Runner& r) {
  Graph g = r.graph();
  auto d = decomposition_or_provider(r, g);
  auto measured = check_fan_conditions(g, d, INT_MAX, INT_MAX, INT_MAX);
  int a = r.opt().a >= 0 ? r.opt().a : std::max(1, measured.max_adhesion);
  int b = r.opt().b >= 0 ? r.opt().b : measured.max_torso_degree;
  int c = r.opt().c >= 0 ? r.opt().c : measured.max_path_count;
  auto res = fold_fan(g, d, a, b, c);
  return {{{"a", a}, {"b", b}, {"c", c},
           {"decomposition", decomposition_json(res.decomposition)},
           {"max_subtree_diameter", max_vertex_subtree_diameter(g.n(), res.decomposition)},
           {"diameter_bound", fan_fold_diameter_bound(a, c)},
           {"tasks", res.stats.tasks}}};
}

Outcome decomp_fold_dipole(Runner& r) {
  Graph g = r.graph();
  auto d = decomposition_or_provider(r, g);
  auto measured = check_dipole_conditions(g, d, INT_MAX, INT_MAX, INT_MAX);
  int heavy = 0;
  for (int w : measured.heavy_threshold_weights) heavy = std::max(heavy, w);
  int a = r.opt().a >= 0 ? r.opt().a : std::max(1, measured.max_adhesion);
  int b = r.opt().b >= 0 ? r.opt().b : heavy;
  int c = r.opt().c >= 0 ? r.opt().c : measured.max_pair_bags;
  auto res = fold_dipole(g, d, a, b, c);
  return {{{"a", a}, {"b", b}, {"c", c},
           {"decomposition", decomposition_json(res.decomposition)},
           {"width", res.decomposition.width()},
           {"overlap", overlap_number(res.decomposition)},
           {"overlap_bound", dipole_fold_overlap_bound(a, b, c)},
           {"tasks", res.stats.tasks}}};
}

Outcome decomp_overlap(Runner& r) {
  Graph g = r.graph();
  int k = require(r.opt().k, "-k");
  auto res = overlap_treewidth_pipeline(g, k, approx_options(r.opt()));
  json doc{{"k", k}, {"provider_width", res.provider_width}, {"provider_exact", res.provider_exact}};
  if (!res.accepted) {
    doc["answer"] = "rejected";
    doc["reason"] = reject_reason_name(res.reason);
    doc["witness_text"] = res.witness_text;
    doc["witness"] = res.reason == RejectReason::kDipole ? dipole_witness_json(res.dipole_witness)
                                                          : treewidth_witness_json(res.treewidth_witness);
    return {doc, kExitNo};
  }
  doc["answer"] = "accepted";
  doc["decomposition"] = decomposition_json(res.decomposition);
  doc["width"] = res.width;
  doc["overlap"] = res.overlap;
  doc["overlap_bound"] = res.overlap_bound;
  doc["relaxed"] = res.relaxed;
  return {doc};
}

Outcome spqr_build(Runner& r) {
  Graph g = r.graph();
  auto t = build_spqr(g);
  json nodes = json::array();
  for (const auto& node : t.nodes) {
    json edges = json::array();
    for (const auto& e : node.edges) edges.push_back({e.u, e.v, e.tree_edge});
    nodes.push_back({{"type", spqr_type_name(node.type)}, {"vertices", node.vertices}, {"edges", edges}});
  }
  json tree = json::array(), pairs = json::array();
  for (auto [s, u] : t.tree_edges) tree.push_back({s, u});
  for (auto [s, u] : t.pairs) pairs.push_back({s, u});
  return {{{"nodes", nodes}, {"tree_edges", tree}, {"pairs", pairs}}};
}

Outcome spqr_gem(Runner& r) {
  auto res = gem_free_check(r.graph());
  json doc{{"gem_free", res.gem_free}, {"answer", res.gem_free ? "yes" : "no"}};
  if (!res.gem_free) {
    doc["witness"] = {{"type", "gem"}, {"text", res.witness}};
    return {doc, kExitNo};
  }
  return {doc};
}

Outcome spqr_planar_check(Runner& r) {
  Graph g = r.graph();
  int k = require(r.opt().k, "-k");
  auto bc = biconnected_components(g);
  json doc{{"k", k}, {"ok", true}, {"max_r_degree", 0}, {"max_pair_path", 0}};
  for (const auto& vs : bc.block_vertices) {
    if (vs.size() < 3) continue;
    auto check = planar_fan_conditions(g.induced(vs), k);
    doc["max_r_degree"] = std::max(doc["max_r_degree"].get<int>(), check.max_r_degree);
    doc["max_pair_path"] = std::max(doc["max_pair_path"].get<int>(), check.max_pair_path);
    if (!check.ok && doc["ok"].get<bool>()) {
      doc["ok"] = false;
      doc["witness"] = {{"type", "planar-fan"}, {"block", vs}, {"text", check.witness}};
    }
  }
  return {doc, doc["ok"].get<bool>() ? kExitOk : kExitNo};
}

Outcome spqr_planar_layout(Runner& r) {
  Graph g = r.graph();
  int k = require(r.opt().k, "-k");
  auto res = planar_layout_construct(g, k);
  return {{{"k", k}, {"layout", layout_json(res.layout)}, {"bandwidth", res.bandwidth}}};
}

Outcome color_pcentered(Runner& r) {
  Graph g = r.graph();
  int p = require(r.opt().p, "-p");
  TreeLayout t = layout_or_exact(r, g);
  auto c = pcentered_from_layout(g, t, p);
  return {{{"p", p}, {"layout_bandwidth", bandwidth_of_layout(g, t)},
           {"colouring", {{"colour", c.colour}, {"palette_size", c.palette_size}}}}};
}

std::int64_t subset_budget(const Options& o) { return o.max_states_set ? o.max_states : 200'000'000; }

Outcome color_verify(Runner& r) {
  Graph g = r.graph();
  int p = require(r.opt().p, "-p");
  if (r.opt().colouring.empty()) throw Error(ErrorKind::kInvalidArgument, "--colouring is required");
  auto c = r.colouring(r.opt().colouring);
  auto res = verify_pcentered(g, c, p, subset_budget(r.opt()));
  json doc{{"p", p}, {"ok", res.ok}, {"subsets_checked", res.subsets_checked}};
  if (!res.ok) {
    doc["witness"] = {{"type", "uncentered-set"}, {"vertices", res.counterexample}};
    return {doc, kExitNo};
  }
  return {doc};
}

Outcome game_simulate(Runner& r) {
  Graph g = r.graph();
  TreeLayout t = layout_or_exact(r, g);
  auto tr = strategy_from_layout(g, t);
  return {{{"trace", trace_json(tr)}, {"max_occupation", tr.max_occupation}, {"monotone", tr.monotone},
           {"layout_bandwidth", bandwidth_of_layout(g, t)}}};
}

Outcome game_rebuild(Runner& r) {
  Graph g = r.graph();
  if (r.opt().trace.empty()) throw Error(ErrorKind::kInvalidArgument, "--trace is required");
  auto tr = r.trace(r.opt().trace);
  int bound = r.opt().bound;
  if (bound < 0) {
    int live = 0;
    bound = 0;
    for (const auto& e : tr.events) {
      live += e.kind == SearchEvent::Kind::kPlace ? 1 : -1;
      bound = std::max(bound, live);
    }
  }
  auto t = layout_from_strategy(g, tr, bound);
  return {{{"occupation_bound", bound}, {"layout", layout_json(t)}, {"bandwidth", bandwidth_of_layout(g, t)}}};
}

Outcome params_exact(Runner& r) {
  Graph g = r.graph();
  const std::vector<std::pair<std::string, Parameter>> all{{"treewidth", Parameter::kTreewidth},
                                                           {"treedepth", Parameter::kTreedepth},
                                                           {"bandwidth", Parameter::kBandwidth},
                                                           {"treebandwidth", Parameter::kTreebandwidthBrute}};
  json doc = json::object();
  bool found = false;
  for (const auto& [name, which] : all) {
    if (r.opt().param != "all" && r.opt().param != name) continue;
    found = true;
    try {
      doc[name] = exact_parameter(g, which).value;
    } catch (const Error& e) {
      // Only the catch-all mode tolerates per-parameter size limits.
      if (r.opt().param != "all" || e.kind() != ErrorKind::kSizeLimit) throw;
      doc[name] = {{"skipped", e.what()}};
    }
  }
  if (!found) throw Error(ErrorKind::kInvalidArgument, "unknown parameter " + r.opt().param);
  return {doc};
}

Outcome generate(Runner& r) {
  const Options& o = r.opt();
  Graph g;
  if (o.family == "random") {
    std::uint64_t seed = 1;
    if (const char* s = std::getenv("TREEBAND_SEED")) {
      try {
        seed = std::stoull(s);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kInvalidArgument, "TREEBAND_SEED is not a number");
      }
    }
    if (o.vertices < 0 || o.edge_prob < 0 || o.edge_prob > 1)
      throw Error(ErrorKind::kInvalidArgument, "random graphs need -n >= 0 and 0 <= --edge-prob <= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < o.vertices; ++u)
      for (int v = u + 1; v < o.vertices; ++v)
        if (std::generate_canonical<double, 53>(rng) < o.edge_prob) edges.push_back({u, v});
    g = Graph::from_edges(o.vertices, edges);
  } else {
    auto fam = family_from_name(o.family);
    if (!fam) throw Error(ErrorKind::kInvalidArgument, "unknown family " + o.family);
    g = generate_family(FamilySpec{*fam, o.family_params, std::nullopt});
  }
  return {{{"graph", graph_json(g)}, {"text", serialize_graph(g)}}};
}

json verify_witness(Runner& r, const Graph& g) {
  json j = Runner::parse_json(r.read_text(r.opt().witness));
  int k = r.opt().k;
  if (k < 0 && j.contains("k")) k = j["k"].get<int>();
  if (j.contains("witness")) j = j["witness"];
  json check{{"artifact", "witness"}};
  try {
    const std::string type = j.at("type").get<std::string>();
    check["type"] = type;
    if (type == "exhaustive") {
      require(k, "-k");
      check["ok"] = !decide_treebandwidth(g, k, r.opt().max_states).yes;
    } else if (type == "treewidth") {
      TreewidthWitness w{j.at("lower_bound").get<int>(), j.at("branch_sets").get<std::vector<std::vector<int>>>(),
                         j.at("exact").get<bool>()};
      check["ok"] = verify_treewidth_witness(g, w, require(k, "-k"));
    } else if (type == "fan") {
      FanWitness w{j.at("centre").get<int>(), j.at("branch_sets").get<std::vector<std::vector<int>>>()};
      check["ok"] = verify_fan_witness(g, w, require(k, "-k"));
    } else if (type == "neighbourhood-treedepth") {
      NeighbourhoodDepthWitness w{j.at("centre").get<int>(), j.at("treedepth").get<int>()};
      check["ok"] = verify_neighbourhood_depth_witness(g, w, require(k, "-k"));
    } else if (type == "dipole") {
      DipoleWitness w{j.at("u").get<int>(), j.at("v").get<int>(), j.at("paths").get<std::vector<std::vector<int>>>()};
      check["ok"] = verify_dipole_witness(g, w, require(k, "-k"));
    } else if (type == "gem") {
      check["ok"] = !gem_free_check(g).gem_free;
    } else if (type == "uncentered-set") {
      throw Error(ErrorKind::kInvalidArgument, "re-check colourings with --colouring");
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown witness type " + type);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("bad witness object: ") + e.what());
  }
  return check;
}

Outcome verify(Runner& r) {
  Graph g = r.graph();
  const Options& o = r.opt();
  json checks = json::array();
  if (!o.layout.empty()) {
    auto t = r.layout(o.layout);
    auto rep = validate_layout(g, t);
    json c{{"artifact", "layout"}, {"ok", rep.ok}};
    if (rep.ok) {
      c["bandwidth"] = bandwidth_of_layout(g, t);
      if (o.k >= 0) c["ok"] = c["bandwidth"].get<int>() <= o.k;
    } else {
      json bad = json::array();
      for (auto [u, v] : rep.violations) bad.push_back({u, v});
      c["violations"] = bad;
    }
    checks.push_back(c);
  }
  if (!o.decomp.empty()) {
    auto d = r.decomposition(o.decomp);
    auto rep = validate_decomposition(g, d);
    json c{{"artifact", "decomposition"}, {"ok", rep.valid()}, {"width", d.width()}};
    if (rep.valid()) c["overlap"] = overlap_number(d);
    checks.push_back(c);
  }
  if (!o.colouring.empty()) {
    auto col = r.colouring(o.colouring);
    auto res = verify_pcentered(g, col, require(o.p, "-p"), subset_budget(o));
    json c{{"artifact", "colouring"}, {"ok", res.ok}, {"palette_size", col.palette_size}};
    if (!res.ok) c["counterexample"] = res.counterexample;
    checks.push_back(c);
  }
  if (!o.witness.empty()) checks.push_back(verify_witness(r, g));
  if (checks.empty()) throw Error(ErrorKind::kInvalidArgument, "nothing to verify");
  bool ok = true;
  for (const auto& c : checks) ok = ok && c["ok"].get<bool>();
  return {{{"ok", ok}, {"checks", checks}}, ok ? kExitOk : kExitNo};
}

// Text rendering: scalars as "key: value", multi-line strings verbatim.
void render_text(const json& doc, std::ostream& out) {
  if (doc.contains("text") && doc["text"].is_string() && !doc.contains("error")) {
    out << doc["text"].get<std::string>();
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema" || key == "command") continue;
    if (value.is_string())
      out << key << ": " << value.get<std::string>() << '\n';
    else
      out << key << ": " << value.dump() << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::istream& input) {
  Options o;
  CLI::App app{"Tree-layout and decomposition toolkit"};
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::function<Outcome(Runner&)>>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  std::function<Outcome(Runner&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->add_option("input", o.input, "graph file, '-' for standard input");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-n", o.max_n, "refuse graphs with more vertices");
    sub->add_option("--max-states", o.max_states, "search budget")
        ->each([&](const std::string&) { o.max_states_set = true; });
    sub->add_option("--threads", o.threads, "OpenMP threads (0 keeps the default)");
    leaves.push_back({sub, std::move(fn)});
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  auto* tbw = group("tbw", "treebandwidth");
  leaf(tbw, "exact", "exact treebandwidth with an optimal layout", tbw_exact);
  leaf(tbw, "decide", "is treebandwidth at most k", tbw_decide)->add_option("-k", o.k)->required();
  leaf(tbw, "approx", "approximation with witnesses on reject", tbw_approx)->add_option("-k", o.k)->required();

  auto* ob = group("obstruct", "obstruction numbers");
  leaf(ob, "fan", "largest fan minor centre and rooted path model", obstruct_fan);
  leaf(ob, "dipole", "most internally disjoint paths between two vertices", obstruct_dipole);

  auto* dc = group("decomp", "tree decompositions");
  auto* dv = leaf(dc, "validate", "check properties T1..T8", decomp_validate);
  dv->add_option("--decomp", o.decomp)->required();
  dv->add_option("-k", o.k, "width bound for the leanness check");
  for (auto [name, fn] : {std::pair<const char*, Outcome (*)(Runner&)>{"fold-fan", decomp_fold_fan},
                          {"fold-dipole", decomp_fold_dipole}}) {
    auto* f = leaf(dc, name, "fold a decomposition (provider output when --decomp is absent)", fn);
    f->add_option("--decomp", o.decomp);
    f->add_option("-a", o.a, "adhesion bound (measured when absent)");
    f->add_option("-b", o.b);
    f->add_option("-c", o.c);
  }
  leaf(dc, "overlap", "overlap treewidth approximation", decomp_overlap)->add_option("-k", o.k)->required();

  auto* sp = group("spqr", "triconnected components and planar tools");
  leaf(sp, "build", "SPQR tree of a biconnected graph", spqr_build);
  leaf(sp, "gem", "gem-freeness test", spqr_gem);
  leaf(sp, "planar-check", "planar fan conditions per block", spqr_planar_check)->add_option("-k", o.k)->required();
  leaf(sp, "planar-layout", "layout of a planar graph", spqr_planar_layout)->add_option("-k", o.k)->required();

  auto* co = group("color", "p-centered colourings");
  auto* cp = leaf(co, "pcentered", "colouring from a layout", color_pcentered);
  cp->add_option("-p", o.p)->required();
  cp->add_option("--layout", o.layout);
  auto* cv = leaf(co, "verify", "check p-centeredness", color_verify);
  cv->add_option("-p", o.p)->required();
  cv->add_option("--colouring", o.colouring)->required();

  auto* gm = group("game", "searching game");
  leaf(gm, "simulate", "monotone strategy from a layout", game_simulate)->add_option("--layout", o.layout);
  auto* gr = leaf(gm, "rebuild", "layout from a strategy trace", game_rebuild);
  gr->add_option("--trace", o.trace)->required();
  gr->add_option("--bound", o.bound, "occupation bound (trace maximum when absent)");

  auto* pa = group("params", "exact parameters");
  leaf(pa, "exact", "treewidth, treedepth, bandwidth, treebandwidth", params_exact)
      ->add_option("--param", o.param)
      ->check(CLI::IsMember({"all", "treewidth", "treedepth", "bandwidth", "treebandwidth"}));

  auto* ve = leaf(&app, "verify", "re-check a layout, decomposition, colouring or witness", verify);
  ve->add_option("--layout", o.layout);
  ve->add_option("--decomp", o.decomp);
  ve->add_option("--colouring", o.colouring);
  ve->add_option("--witness", o.witness);
  ve->add_option("-k", o.k);
  ve->add_option("-p", o.p);

  // generate has no graph input; its positionals are the family and its parameters.
  auto* ge = app.add_subcommand("generate", "emit a family graph or a seeded random graph");
  ge->add_option("family", o.family)->required();
  ge->add_option("params", o.family_params);
  ge->add_option("-n", o.vertices, "vertices of a random graph");
  ge->add_option("--edge-prob", o.edge_prob, "edge probability of a random graph");
  ge->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  bool generate_format_set = false;
  ge->get_option("--format")->each([&](const std::string&) { generate_format_set = true; });
  leaves.push_back({ge, generate});

  auto emit = [&](json doc, const std::string& command, int code) {
    json full{{"schema", kSchema}, {"command", command}};
    full.update(doc);
    if (o.format == "text")
      render_text(full, out);
    else
      out << full.dump(2) << '\n';
    return code;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    json err{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
    return emit(err, "", kExitError);
  }

  std::string command;
  std::function<Outcome(Runner&)> fn;
  for (auto& [sub, f] : leaves)
    if (sub->parsed()) {
      fn = f;
      command = sub->get_parent() == &app ? sub->get_name() : sub->get_parent()->get_name() + " " + sub->get_name();
    }
  if (command == "generate" && !generate_format_set) o.format = "text";

  try {
    if (o.threads > 0) omp_set_num_threads(o.threads);
    Runner r(o, input);
    Outcome res = fn(r);
    return emit(res.doc, command, res.code);
  } catch (const Error& e) {
    return emit({{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}}, command, kExitError);
  } catch (const std::exception& e) {
    return emit({{"error", {{"kind", "internal"}, {"message", e.what()}}}}, command, kExitError);
  }
}

}  // namespace treeband::cli
