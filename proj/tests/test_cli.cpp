#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "treeband/graph.hpp"

using nlohmann::json;
using namespace treeband;

namespace {

struct Run {
  int code;
  std::string out;
  json doc() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  int code = cli::run(args, out, in);
  return {code, out.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("treeband_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli: exact treebandwidth of a path") {
  auto r = invoke({"tbw", "exact", "-"}, serialize_graph(path_graph(6)));
  REQUIRE(r.code == cli::kExitOk);
  auto j = r.doc();
  CHECK(j["schema"] == cli::kSchema);
  CHECK(j["treebandwidth"] == 1);
  TreeLayout t{j["layout"]["root"].get<int>(), j["layout"]["parent"].get<std::vector<int>>()};
  CHECK(oracle::layout_valid(path_graph(6), t.parent));
  CHECK(oracle::layout_bandwidth(path_graph(6), t.parent) == 1);
}

TEST_CASE("cli: decide says no on K4 with k=2 and exits 2") {
  auto r = invoke({"tbw", "decide", "-k", "2", "-"}, serialize_graph(complete_graph(4)));
  CHECK(r.code == cli::kExitNo);
  CHECK(r.doc()["answer"] == "no");
  CHECK(r.doc()["witness"]["type"] == "exhaustive");
  auto yes = invoke({"tbw", "decide", "-k", "3", "-"}, serialize_graph(complete_graph(4)));
  CHECK(yes.code == cli::kExitOk);
  CHECK(yes.doc()["answer"] == "yes");
}

TEST_CASE("cli: p-centered colouring of P6 uses pk+1 colours") {
  auto g = temp_file("p6.txt", serialize_graph(path_graph(6)));
  auto l = temp_file("p6_layout.json", invoke({"tbw", "exact", g}).out);
  auto r = invoke({"color", "pcentered", "-p", "2", "--layout", l, g});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.doc()["colouring"]["palette_size"] == 3);
  CHECK(r.doc()["colouring"]["colour"] == json({0, 1, 2, 0, 1, 2}));
  auto c = temp_file("p6_colouring.json", r.out);
  CHECK(invoke({"color", "verify", "-p", "2", "--colouring", c, g}).code == cli::kExitOk);
  CHECK(invoke({"verify", "--colouring", c, "-p", "2", "--layout", l, g}).code == cli::kExitOk);
  // One colour cannot be 2-centered on an edge.
  auto bad = temp_file("p6_bad.txt", "0 0\n1 0\n2 0\n3 0\n4 0\n5 0\n");
  auto v = invoke({"color", "verify", "-p", "2", "--colouring", bad, g});
  CHECK(v.code == cli::kExitNo);
  CHECK(v.doc()["witness"]["vertices"].size() >= 2);
}

TEST_CASE("cli: identical inputs give byte-identical output") {
  auto g = serialize_graph(wall_graph(3));
  for (std::vector<std::string> args :
       {std::vector<std::string>{"tbw", "approx", "-k", "3", "-"}, {"decomp", "overlap", "-k", "3", "-"},
        {"decomp", "fold-fan", "-"}, {"obstruct", "dipole", "-"}, {"spqr", "build", "-"}}) {
    auto a = invoke(args, g), b = invoke(args, g);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: rejects embed witnesses that verify re-checks") {
  auto fan = temp_file("f64.txt", serialize_graph(fan_graph(64)));
  auto r = invoke({"tbw", "approx", "-k", "2", fan});
  REQUIRE(r.code == cli::kExitNo);
  CHECK(r.doc()["reason"] == "fan");
  auto w = temp_file("f64_witness.json", r.out);
  CHECK(invoke({"verify", "--witness", w, fan}).code == cli::kExitOk);
  // The same sets are too short for k = 3.
  CHECK(invoke({"verify", "--witness", w, "-k", "3", fan}).code == cli::kExitNo);

  auto dip = temp_file("d64.txt", serialize_graph(dipole_subdivided_graph(64)));
  auto d = invoke({"decomp", "overlap", "-k", "2", dip});
  REQUIRE(d.code == cli::kExitNo);
  auto dj = d.doc();
  CHECK(dj["witness"]["paths"].size() == 64);
  dj["witness"]["paths"][1] = dj["witness"]["paths"][0];
  auto tampered = temp_file("d64_tampered.json", dj.dump());
  CHECK(invoke({"verify", "--witness", tampered, dip}).code == cli::kExitNo);

  auto k8 = temp_file("k8.txt", serialize_graph(complete_graph(8)));
  auto t = invoke({"tbw", "approx", "-k", "3", k8});
  REQUIRE(t.code == cli::kExitNo);
  CHECK(t.doc()["witness"]["type"] == "treewidth");
  CHECK(invoke({"verify", "--witness", temp_file("k8_w.json", t.out), k8}).code == cli::kExitOk);
}

TEST_CASE("cli: folded decompositions and layouts round-trip through verify") {
  auto w = temp_file("w3.txt", serialize_graph(wall_graph(3)));
  auto f = invoke({"decomp", "fold-fan", w});
  REQUIRE(f.code == cli::kExitOk);
  CHECK(f.doc()["max_subtree_diameter"].get<int>() <= f.doc()["diameter_bound"].get<int>());
  auto fd = temp_file("w3_fold.json", f.out);
  CHECK(invoke({"decomp", "validate", "--decomp", fd, w}).code == cli::kExitOk);
  auto p = invoke({"spqr", "planar-layout", "-k", "4", w});
  REQUIRE(p.code == cli::kExitOk);
  CHECK(invoke({"verify", "--layout", temp_file("w3_layout.json", p.out), w}).code == cli::kExitOk);

  auto p6 = temp_file("p6g.txt", serialize_graph(path_graph(6)));
  auto sim = invoke({"game", "simulate", p6});
  REQUIRE(sim.code == cli::kExitOk);
  CHECK(sim.doc()["max_occupation"] == 2);
  auto back = invoke({"game", "rebuild", "--trace", temp_file("p6_trace.json", sim.out), p6});
  REQUIRE(back.code == cli::kExitOk);
  CHECK(back.doc()["bandwidth"].get<int>() <= 1);
}

TEST_CASE("cli: errors exit 1 with a kind") {
  auto usage = invoke({"tbw", "exact", "--bogus"});
  CHECK(usage.code == cli::kExitError);
  CHECK(usage.doc()["error"]["kind"] == "usage");
  auto missing = invoke({"tbw", "exact", "/nonexistent/graph.txt"});
  CHECK(missing.code == cli::kExitError);
  CHECK(missing.doc()["error"]["kind"] == "invalid_argument");
  auto loop = invoke({"tbw", "exact", "-"}, "2 1\n0 0\n");
  CHECK(loop.doc()["error"]["kind"] == "parse");
  auto big = invoke({"tbw", "exact", "--max-n", "5", "-"}, serialize_graph(path_graph(6)));
  CHECK(big.doc()["error"]["kind"] == "size_limit");
  auto budget = invoke({"tbw", "decide", "-k", "2", "--max-states", "5", "-"}, serialize_graph(grid_graph(5, 5)));
  CHECK(budget.doc()["error"]["kind"] == "budget_exceeded");
  CHECK(invoke({"tbw"}).code == cli::kExitError);
}

TEST_CASE("cli: generate honours the seed and family names") {
  setenv("TREEBAND_SEED", "11", 1);
  auto a = invoke({"generate", "random", "-n", "9", "--edge-prob", "0.5"});
  auto b = invoke({"generate", "random", "-n", "9", "--edge-prob", "0.5"});
  setenv("TREEBAND_SEED", "12", 1);
  auto c = invoke({"generate", "random", "-n", "9", "--edge-prob", "0.5"});
  unsetenv("TREEBAND_SEED");
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(parse_graph(a.out).n() == 9);
  auto fan = invoke({"generate", "fan", "4"});
  CHECK(parse_graph(fan.out) == fan_graph(4));
  auto j = invoke({"generate", "fan", "4", "--format", "json"}).doc();
  CHECK(j["graph"]["m"] == 7);
}
