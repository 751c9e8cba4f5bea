#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treeband/error.hpp"
#include "treeband/searchgame.hpp"

using namespace treeband;

namespace {
std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}
}  // namespace

TEST_CASE("search strategies from layouts") {
  auto p3 = strategy_from_layout(path_graph(3), path_layout({0, 1, 2}));
  CHECK(p3.max_occupation == 2);
  CHECK(p3.monotone);
  auto one = strategy_from_layout(Graph(1), path_layout({0}));
  CHECK(one.max_occupation == 1);
  CHECK(one.events.size() == 1);
  auto k4 = strategy_from_layout(complete_graph(4), path_layout(iota_vec(4)));
  CHECK(k4.max_occupation == 4);
}

TEST_CASE("layouts rebuilt from strategies") {
  Graph p5 = path_graph(5);
  auto tr = strategy_from_layout(p5, path_layout({2, 1, 0, 3, 4}));
  auto back = layout_from_strategy(p5, tr, tr.max_occupation);
  CHECK(bandwidth_of_layout(p5, back) <= 1);
  auto single = layout_from_strategy(Graph(1), strategy_from_layout(Graph(1), path_layout({0})), 1);
  CHECK(single.root == 0);
  Graph c6 = cycle_graph(6);
  auto t = path_layout({0, 1, 5, 2, 4, 3});
  REQUIRE(bandwidth_of_layout(c6, t) == 2);
  auto c6_tr = strategy_from_layout(c6, t);
  CHECK(c6_tr.max_occupation <= 3);
  CHECK(bandwidth_of_layout(c6, layout_from_strategy(c6, c6_tr, 3)) <= 2);
  CHECK_THROWS_AS(layout_from_strategy(c6, c6_tr, 2), Error);
  // Text round-trip keeps the replay working.
  auto parsed = parse_trace(serialize_trace(c6_tr));
  CHECK(bandwidth_of_layout(c6, layout_from_strategy(c6, parsed, 3)) <= 2);
}

TEST_CASE("bad strategies are refused") {
  Graph p3 = path_graph(3);
  // Removing the middle searcher while the fugitive still sits next to it.
  auto bad = parse_trace("1 place 0\n1 remove 0\n2 place 1\n3 place 2\n");
  CHECK_THROWS_AS(layout_from_strategy(p3, bad, 3), Error);
  auto short_trace = parse_trace("1 place 1\n");
  CHECK_THROWS_AS(layout_from_strategy(p3, short_trace, 3), Error);
}

TEST_CASE("random layouts: occupation and round trip") {
  std::mt19937_64 rng(137);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = oracle::random_graph(2 + iter % 9, 0.35, rng);
    auto t = oracle::random_valid_layout(g, rng);
    int k = bandwidth_of_layout(g, t);
    auto tr = strategy_from_layout(g, t);
    CHECK(tr.monotone);
    CHECK(tr.max_occupation <= k + 1);
    auto back = layout_from_strategy(g, tr, k + 1);
    CHECK(validate_layout(g, back).ok);
    CHECK(bandwidth_of_layout(g, back) <= k);
  }
}
