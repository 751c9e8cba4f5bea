#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "treeband/conditions.hpp"
#include "treeband/error.hpp"

using namespace treeband;

namespace {

TreeDecomposition path_decomposition_of_path(int n) {
  TreeDecomposition d;
  for (int i = 0; i + 1 < n; ++i) d.bags.push_back({i, i + 1});
  for (int i = 0; i + 1 < n - 1; ++i) d.tree_edges.push_back({i, i + 1});
  return d;
}

TreeDecomposition random_decomposition(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> order(g.n());
  for (int i = 0; i < g.n(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return decomposition_from_elimination_order(g, order);
}

bool holds(const std::vector<int>& bag, int v) { return std::find(bag.begin(), bag.end(), v) != bag.end(); }

// Plain parent-walking view of a rooted decomposition tree.
struct Walk {
  RootedTree rt;
  int lca(int a, int b) const {
    while (rt.depth[a] > rt.depth[b]) a = rt.parent[a];
    while (rt.depth[b] > rt.depth[a]) b = rt.parent[b];
    while (a != b) a = rt.parent[a], b = rt.parent[b];
    return a;
  }
  std::vector<int> path(int a, int b) const {
    int l = lca(a, b);
    std::vector<int> p, q;
    for (; a != l; a = rt.parent[a]) p.push_back(a);
    for (; b != l; b = rt.parent[b]) q.push_back(b);
    p.push_back(l);
    p.insert(p.end(), q.rbegin(), q.rend());
    return p;
  }
};

// Intro nodes of the edges at x, by the closest-to-root rule.
std::set<int> edge_intros(const Graph& g, const TreeDecomposition& d, const Walk& w, int x) {
  auto top = [&](int v) {
    int best = -1;
    for (int t = 0; t < d.num_nodes(); ++t)
      if (holds(d.bags[t], v) && (best < 0 || w.rt.depth[t] < w.rt.depth[best])) best = t;
    return best;
  };
  std::set<int> out;
  for (int y : g.neighbours(x)) {
    int a = top(x), b = top(y);
    out.insert(w.rt.depth[a] >= w.rt.depth[b] ? a : b);
  }
  return out;
}

// Largest number of bags on one path that count for some vertex.
int naive_path_count(const Graph& g, const TreeDecomposition& d) {
  Walk w{root_tree(d.num_nodes(), d.tree_edges, decomposition_root(d))};
  auto adj = d.adjacency();
  int best = 0;
  for (int v = 0; v < g.n(); ++v) {
    auto m = edge_intros(g, d, w, v);
    if (m.empty()) continue;
    // side_has[p][w]: the component of T - p holding w meets m.
    auto side_has = [&](int p, int start) {
      std::vector<char> seen(d.num_nodes(), 0);
      seen[p] = 1;
      std::vector<int> stack{start};
      seen[start] = 1;
      while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        if (m.count(t)) return true;
        for (int s : adj[t])
          if (!seen[s]) seen[s] = 1, stack.push_back(s);
      }
      return false;
    };
    for (int s = 0; s < d.num_nodes(); ++s)
      for (int t = 0; t < d.num_nodes(); ++t) {
        auto p = w.path(s, t);
        int count = 0;
        for (int node : p) {
          bool hit = m.count(node) > 0;
          for (int nb : adj[node])
            if (!hit && std::find(p.begin(), p.end(), nb) == p.end() && side_has(node, nb)) hit = true;
          count += hit;
        }
        best = std::max(best, count);
      }
  }
  return best;
}

int naive_weight(const Graph& g, const TreeDecomposition& d, int t, const std::vector<int>& u) {
  auto adj = d.adjacency();
  const auto& around = adj[t];
  int inside = 0;
  std::vector<int> out;
  for (int x : u) (holds(d.bags[t], x) ? inside++ : (out.push_back(x), 0));
  int best = 1 << 30;
  for (unsigned mask = 0; mask < (1u << around.size()); ++mask) {
    std::vector<char> blocked(g.n(), 0);
    for (std::size_t i = 0; i < around.size(); ++i)
      if (mask >> i & 1)
        for (int x : adhesion(d, t, around[i])) blocked[x] = 1;
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack;
    for (int x : d.bags[t])
      if (!blocked[x]) seen[x] = 1, stack.push_back(x);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : g.neighbours(x))
        if (!blocked[y] && !seen[y]) seen[y] = 1, stack.push_back(y);
    }
    bool ok = std::none_of(out.begin(), out.end(), [&](int x) { return seen[x]; });
    if (ok) best = std::min(best, __builtin_popcount(mask));
  }
  return inside + best;
}

}  // namespace

TEST_CASE("intro map follows the closest-to-root rule") {
  auto g = path_graph(4);
  auto d = path_decomposition_of_path(4);
  TreeQueryIndex idx(d.num_nodes(), d.tree_edges, decomposition_root(d));
  auto im = intro_map(g, d, idx);
  CHECK(im.vertex_intro == std::vector<int>{0, 0, 1, 2});
  CHECK(im.edge_intro == std::vector<int>{0, 1, 2});
  TreeDecomposition bad{{{0, 1}, {2, 3}}, {{0, 1}}, -1};
  CHECK_THROWS_AS(intro_map(g, bad, TreeQueryIndex(2, bad.tree_edges, 0)), Error);
}

TEST_CASE("neighbourhood trees on small examples") {
  // Star with bags {0, leaf} in a path.
  auto star = star_graph(5);
  TreeDecomposition d;
  for (int i = 1; i <= 5; ++i) d.bags.push_back({0, i});
  for (int i = 0; i + 1 < 5; ++i) d.tree_edges.push_back({i, i + 1});
  auto nt = neighbourhood_trees(star, d, 10, 10);
  CHECK(nt.trees[0].nodes.size() == 5);
  CHECK(nt.trees[0].diameter == 4);
  for (int leaf = 1; leaf <= 5; ++leaf) CHECK(nt.trees[leaf].nodes.size() == 1);
  CHECK_FALSE(neighbourhood_trees(star, d, 10, 3).diameters_ok);

  auto iso = Graph(3);
  TreeDecomposition one{{{0, 1, 2}}, {}, -1};
  CHECK(neighbourhood_trees(iso, one, 0, 0).trees[1].nodes.empty());

  auto p4 = path_graph(4);
  auto np = neighbourhood_trees(p4, path_decomposition_of_path(4), 2, 1);
  for (const auto& t : np.trees) {
    CHECK(t.nodes.size() <= 2);
    CHECK(t.diameter <= 1);
  }
  CHECK(np.diameters_ok);
}

TEST_CASE("neighbourhood trees match a definitional closure") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 3 + static_cast<int>(rng() % 9);
    auto g = oracle::random_connected(n, 0.35, rng);
    auto d = random_decomposition(g, rng);
    Walk w{root_tree(d.num_nodes(), d.tree_edges, decomposition_root(d))};
    auto nt = neighbourhood_trees(g, d, n, n);
    for (int x = 0; x < n; ++x) {
      auto set = edge_intros(g, d, w, x);
      for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> cur(set.begin(), set.end());
        for (int a : cur)
          for (int b : cur)
            if (set.insert(w.lca(a, b)).second) grew = true;
      }
      std::set<int> got(nt.trees[x].nodes.begin(), nt.trees[x].nodes.end());
      REQUIRE(got == set);
      for (auto [p, c] : nt.trees[x].edges) {
        int up = w.rt.parent[c];
        while (!set.count(up)) up = w.rt.parent[up];
        REQUIRE(up == p);
      }
      REQUIRE(nt.trees[x].edges.size() + (set.empty() ? 0 : 1) == set.size());
    }
  }
}

TEST_CASE("fan conditions on small examples") {
  auto p = path_graph(9);
  CHECK(check_fan_conditions(p, path_decomposition_of_path(9), 2, 2, 2).ok);

  auto k4 = complete_graph(4);
  TreeDecomposition one{{{0, 1, 2, 3}}, {}, -1};
  auto r = check_fan_conditions(k4, one, 0, 3, 5);
  CHECK(r.ok);
  CHECK(r.max_torso_degree == 3);
  CHECK_FALSE(check_fan_conditions(k4, one, 0, 2, 5).torso_ok);

  auto fan = fan_graph(9);
  auto fd = enforce_wellformed(fan, exact_tree_decomposition(fan));
  auto f = check_fan_conditions(fan, fd, 2, 4, 3);
  CHECK(f.adhesion_ok);
  CHECK_FALSE(f.path_ok);
  CHECK(f.witness_vertex == 0);
  CHECK(f.max_path_count >= 7);
}

TEST_CASE("fan path counts match enumeration of all paths") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto g = oracle::random_connected(n, 0.4, rng);
    auto d = random_decomposition(g, rng);
    auto r = check_fan_conditions(g, d, n, n, 1000);
    REQUIRE(r.max_path_count == naive_path_count(g, d));
  }
}

TEST_CASE("weight examples and exhaustive agreement") {
  auto p = path_graph(5);
  auto d = path_decomposition_of_path(5);  // bags {0,1} {1,2} {2,3} {3,4}
  CHECK(weight_w(p, d, 1, {1, 2}).value == 2);
  CHECK(weight_w(p, d, 1, {}).value == 0);
  // Star decomposition: centre bag {0,1,2}, leaves {1,3}, {2,4}.
  auto g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
  TreeDecomposition star{{{0, 1, 2}, {1, 3}, {2, 4}}, {{0, 1}, {0, 2}}, 0};
  auto w = weight_w(g, star, 0, {0, 3});
  CHECK(w.value == 2);
  CHECK(w.exact);
  CHECK(w.adhesion_to == std::vector<int>{1});
  CHECK(weight_w(g, star, 0, {3, 4}).value == 2);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto gr = oracle::random_connected(n, 0.35, rng);
    auto dd = random_decomposition(gr, rng);
    int t = static_cast<int>(rng() % dd.num_nodes());
    std::vector<int> u;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) u.push_back(v);
    REQUIRE(weight_w(gr, dd, t, u).value == naive_weight(gr, dd, t, u));
  }
}

TEST_CASE("dipole conditions") {
  auto p = path_graph(8);
  auto r = check_dipole_conditions(p, path_decomposition_of_path(8), 2, 2, 2);
  CHECK(r.ok);
  CHECK(r.max_pair_bags == 0);

  // Subdivided K_{2,5}: poles 0 and 1 share every bag.
  auto k25 = dipole_subdivided_graph(5);
  TreeDecomposition d;
  for (int i = 0; i < 5; ++i) d.bags.push_back({0, 1, 2 + i});
  for (int i = 0; i + 1 < 5; ++i) d.tree_edges.push_back({i, i + 1});
  // Every adhesion is {0,1}, so one adhesion cuts off the far neighbours:
  // the poles weigh 2, as does each subdivision vertex.
  auto bad = check_dipole_conditions(k25, d, 2, 1, 5);
  CHECK_FALSE(bad.heavy_ok);
  CHECK(bad.witness.find("{0,1,") != std::string::npos);
  CHECK(weight_w(k25, d, 2, k25.neighbours(0)).value == 2);
  CHECK(check_dipole_conditions(k25, d, 2, 2, 5).heavy_ok);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 6);
    auto g = oracle::random_connected(n, 0.4, rng);
    auto dd = random_decomposition(g, rng);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        auto sep = separating_bags(g, dd, u, v);
        REQUIRE(sep.found);
        REQUIRE(bags_hit_all_paths(g, dd, sep.nodes, g.neighbours(u), g.neighbours(v)));
      }
  }
}
