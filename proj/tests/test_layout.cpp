#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treeband/decomp.hpp"
#include "treeband/error.hpp"
#include "treeband/layout.hpp"

using namespace treeband;

namespace {

TreeLayout star_layout(int leaves) {
  TreeLayout t;
  t.root = 0;
  t.parent.assign(leaves + 1, 0);
  t.parent[0] = -1;
  return t;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("validate_layout examples") {
  CHECK(validate_layout(complete_graph(3), path_layout({0, 1, 2})).ok);
  TreeLayout p3{1, {1, -1, 1}};
  CHECK(validate_layout(path_graph(3), p3).ok);
  TreeLayout bad{0, {-1, 0, 0}};
  auto r = validate_layout(complete_graph(3), bad);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0] == Edge{1, 2});
  CHECK_THROWS_AS(validate_layout(complete_graph(3), path_layout({0, 1})), Error);
  TreeLayout cyc{0, {-1, 2, 1}};
  CHECK_THROWS_AS(validate_layout(path_graph(3), cyc), Error);
}

TEST_CASE("bandwidth examples") {
  for (int n = 1; n <= 7; ++n) {
    CHECK(bandwidth_of_layout(path_graph(n), path_layout(iota_vec(n))) == (n > 1 ? 1 : 0));
    CHECK(bandwidth_of_layout(complete_graph(n), path_layout(iota_vec(n))) == n - 1);
  }
  CHECK(bandwidth_of_layout(star_graph(8), star_layout(8)) == 1);
  CHECK_THROWS_AS(bandwidth_of_layout(complete_graph(3), TreeLayout{0, {-1, 0, 0}}), Error);
  Graph empty(0);
  CHECK(bandwidth_of_layout(empty, TreeLayout{}) == 0);
}

TEST_CASE("linear bandwidth") {
  Graph c4 = cycle_graph(4);
  CHECK(linear_bandwidth(c4, linear_from_order({0, 1, 3, 2})) == 2);
  CHECK(oracle::bandwidth_by_permutations(c4) == 2);
  CHECK(linear_bandwidth(path_graph(6), linear_from_order(iota_vec(6))) == 1);
  CHECK(linear_bandwidth(complete_graph(3), linear_from_order({2, 0, 1})) == 2);
  // A linear layout read as a path layout keeps its bandwidth.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Graph g = oracle::random_graph(8, 0.35, rng);
    auto order = iota_vec(8);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(linear_bandwidth(g, linear_from_order(order)) == bandwidth_of_layout(g, path_layout(order)));
  }
}

TEST_CASE("layout from a tree partition") {
  Graph p5 = path_graph(5);
  TreePartition tp{{{0}, {1}, {2}, {3}, {4}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
  auto t = layout_from_tree_partition(p5, tp);
  CHECK(t == path_layout({0, 1, 2, 3, 4}));
  CHECK(bandwidth_of_layout(p5, t) == 1);
  Graph c4 = cycle_graph(4);
  TreePartition one{{{0, 1, 2, 3}}, {}};
  auto t4 = layout_from_tree_partition(c4, one);
  int bw = bandwidth_of_layout(c4, t4);
  CHECK(bw <= 2 * one.width());
  CHECK(bw == 3);
  TreePartition broken{{{0, 1}, {2, 3}}, {}};
  CHECK_THROWS_AS(layout_from_tree_partition(c4, broken), Error);

  // Random partitions from BFS layers of random connected graphs.
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = oracle::random_connected(4 + iter % 7, 0.35, rng);
    // Parts = BFS layers from vertex 0, a path-shaped partition.
    std::vector<int> dist(g.n(), -1);
    std::vector<int> q{0};
    dist[0] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int w : g.neighbours(q[i]))
        if (dist[w] < 0) {
          dist[w] = dist[q[i]] + 1;
          q.push_back(w);
        }
    int layers = *std::max_element(dist.begin(), dist.end()) + 1;
    TreePartition bfs;
    bfs.parts.assign(layers, {});
    for (int v = 0; v < g.n(); ++v) bfs.parts[dist[v]].push_back(v);
    for (int i = 0; i + 1 < layers; ++i) bfs.tree_edges.emplace_back(i, i + 1);
    REQUIRE(tree_partition_problem(g, bfs).empty());
    auto lt = layout_from_tree_partition(g, bfs);
    CHECK(validate_layout(g, lt).ok);
    CHECK(bandwidth_of_layout(g, lt) <= 2 * bfs.width());
  }
}

TEST_CASE("subdivision extension") {
  auto r = extend_layout_to_subdivision(path_graph(2), path_layout({0, 1}), {0, 1}, 1);
  CHECK(r.graph.n() == 3);
  CHECK(bandwidth_of_layout(r.graph, r.layout) == 1);

  auto k3 = extend_layout_to_subdivision(complete_graph(3), path_layout({0, 1, 2}), {0, 2}, 1);
  CHECK(bandwidth_of_layout(k3.graph, k3.layout) <= 3);

  Graph k4 = complete_graph(4);
  for (auto e : k4.edges()) {
    auto s = extend_layout_to_subdivision(k4, path_layout({0, 1, 2, 3}), e, 5);
    CHECK(validate_layout(s.graph, s.layout).ok);
    CHECK(bandwidth_of_layout(s.graph, s.layout) <= 4);
  }
  CHECK_THROWS_AS(extend_layout_to_subdivision(path_graph(3), path_layout({0, 1, 2}), {0, 2}, 1),
                  Error);

  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 500; ++iter) {
    Graph g = oracle::random_connected(3 + iter % 6, 0.5, rng);
    auto t = oracle::random_valid_layout(g, rng);
    auto es = g.edges();
    auto e = es[std::uniform_int_distribution<int>(0, es.size() - 1)(rng)];
    int times = 1 + iter % 5;
    auto s = extend_layout_to_subdivision(g, t, e, times);
    CHECK(s.graph.n() == g.n() + times);
    CHECK(s.graph.m() == g.m() + times);
    CHECK(oracle::layout_valid(s.graph, s.layout.parent));
    CHECK(bandwidth_of_layout(s.graph, s.layout) <= bandwidth_of_layout(g, t) + 1);
  }
}

TEST_CASE("treespan") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(treespan_of_layout(path_graph(n), path_layout(iota_vec(n))) == 1);
    CHECK(treespan_of_layout(complete_graph(n), path_layout(iota_vec(n))) == n - 1);
  }
  // The centre's pruned subtree keeps every leaf, since each leaf is itself
  // a neighbour of the centre.
  CHECK(treespan_of_layout(star_graph(5), star_layout(5)) == 5);
  // P_3 laid out as 1-0-2: the root keeps both descendants, 0 keeps only itself.
  CHECK(treespan_of_layout(path_graph(3), path_layout({1, 0, 2})) == 2);
}

TEST_CASE("edge treewidth") {
  for (int n = 2; n <= 6; ++n)
    CHECK(edge_treewidth_of_layout(path_graph(n), path_layout(iota_vec(n))).value == 1);
  auto k4 = edge_treewidth_of_layout(complete_graph(4), path_layout({0, 1, 2, 3}));
  // Cuts below vertices 1, 2, 3 cross 3, 4, 3 edges.
  CHECK(k4.per_vertex == std::vector<int>{0, 3, 4, 3});
  CHECK(k4.value == 4);
  CHECK(edge_treewidth_of_layout(star_graph(6), star_layout(6)).value == 1);
}

TEST_CASE("proper chordal completion") {
  auto p3 = proper_chordal_completion(path_graph(3), path_layout({0, 1, 2}));
  CHECK(p3.completion == path_graph(3));
  CHECK(p3.clique_minus_one == 1);
  auto c4 = proper_chordal_completion(cycle_graph(4), path_layout({0, 1, 3, 2}));
  CHECK(c4.clique_minus_one == 2);
  CHECK(c4.cliques_consecutive);
  auto k5 = proper_chordal_completion(complete_graph(5), path_layout(iota_vec(5)));
  CHECK(k5.completion == complete_graph(5));
  CHECK(k5.clique_minus_one == 4);

  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    Graph g = oracle::random_connected(3 + iter % 8, 0.4, rng);
    auto t = oracle::random_valid_layout(g, rng);
    auto c = proper_chordal_completion(g, t);
    CHECK(c.clique_minus_one == bandwidth_of_layout(g, t));
    CHECK(c.cliques_consecutive);
  }
}

TEST_CASE("maximal cliques") {
  auto cl = maximal_cliques(cycle_graph(4));
  CHECK(cl.size() == 4);
  CHECK(maximal_cliques(complete_graph(4)).size() == 1);
  CHECK(maximal_cliques(Graph(3)).size() == 3);
}

TEST_CASE("treewidth never exceeds layout bandwidth") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = oracle::random_connected(3 + iter % 8, 0.4, rng);
    auto t = oracle::random_valid_layout(g, rng);
    CHECK(exact_treewidth(g) <= bandwidth_of_layout(g, t));
  }
}

TEST_CASE("layout serialization round-trips") {
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 50; ++iter) {
    Graph g = oracle::random_connected(1 + iter % 9, 0.4, rng);
    auto t = oracle::random_valid_layout(g, rng);
    auto text = serialize_layout(t);
    CHECK(parse_layout(text) == t);
    CHECK(serialize_layout(parse_layout(text)) == text);
  }
  CHECK(parse_layout("root none\n").empty());
  CHECK_THROWS_AS(parse_layout("root 0\n1 2\n"), Error);
  CHECK_THROWS_AS(parse_layout("0 1\n"), Error);
}

TEST_CASE("chaining component layouts") {
  Graph g = disjoint_union(path_graph(2), path_graph(3));
  auto parts = connected_components(g);
  std::vector<std::pair<std::vector<int>, TreeLayout>> pieces;
  pieces.emplace_back(parts[0], path_layout({0, 1}));
  pieces.emplace_back(parts[1], path_layout({1, 0, 2}));
  auto t = chain_layouts(g.n(), pieces);
  CHECK(t.root == 0);
  CHECK(t.parent[3] == 0);  // root of the second piece below the first root
  CHECK(validate_layout(g, t).ok);
}
