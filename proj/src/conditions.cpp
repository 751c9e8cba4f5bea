#include "treeband/conditions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "treeband/error.hpp"

namespace treeband {

namespace {

bool in_bag(const std::vector<int>& bag, int v) { return std::binary_search(bag.begin(), bag.end(), v); }

TreeQueryIndex make_index(const TreeDecomposition& d) {
  return TreeQueryIndex(d.num_nodes(), d.tree_edges, decomposition_root(d));
}

// Vertices reachable from `from` in G minus `blocked`; blocked[v] != 0 removes v.
std::vector<char> reach(const Graph& g, const std::vector<int>& from, const std::vector<char>& blocked) {
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack;
  for (int v : from)
    if (!blocked[v] && !seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbours(v))
      if (!blocked[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

std::string list_text(const std::vector<int>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

}  // namespace

int decomposition_root(const TreeDecomposition& d) {
  if (d.num_nodes() == 0) return -1;
  if (d.root >= 0) return d.root;
  for (int t = 0; t < d.num_nodes(); ++t)
    if (in_bag(d.bags[t], 0)) return t;
  return 0;
}

IntroMap intro_map(const Graph& g, const TreeDecomposition& d, const TreeQueryIndex& index) {
  IntroMap im;
  im.vertex_intro.assign(g.n(), -1);
  for (int t = 0; t < d.num_nodes(); ++t)
    for (int x : d.bags[t]) {
      if (x < 0 || x >= g.n()) throw Error(ErrorKind::kPrecondition, "bag vertex out of range");
      int& cur = im.vertex_intro[x];
      if (cur < 0 || index.depth(t) < index.depth(cur)) cur = t;
    }
  for (int x = 0; x < g.n(); ++x)
    if (im.vertex_intro[x] < 0) throw Error(ErrorKind::kPrecondition, "vertex " + std::to_string(x) + " is in no bag");
  im.edges = g.edges();
  im.introduced.assign(d.num_nodes(), {});
  for (int i = 0; i < static_cast<int>(im.edges.size()); ++i) {
    auto [x, y] = im.edges[i];
    int tx = im.vertex_intro[x], ty = im.vertex_intro[y];
    int t = index.depth(tx) >= index.depth(ty) ? tx : ty;
    if (!in_bag(d.bags[t], x) || !in_bag(d.bags[t], y))
      throw Error(ErrorKind::kPrecondition,
                  "edge " + std::to_string(x) + "-" + std::to_string(y) + " is not covered where it is introduced");
    im.edge_intro.push_back(t);
    im.introduced[t].push_back(i);
  }
  return im;
}

NeighbourhoodTrees neighbourhood_trees(const Graph& g, const TreeDecomposition& d, int b, int c) {
  NeighbourhoodTrees res;
  res.trees.resize(g.n());
  if (d.num_nodes() == 0) return res;
  auto index = make_index(d);
  auto im = intro_map(g, d, index);
  std::vector<std::vector<int>> intro_of(g.n());  // per vertex: intro nodes of its edges
  for (int i = 0; i < static_cast<int>(im.edges.size()); ++i) {
    intro_of[im.edges[i].first].push_back(im.edge_intro[i]);
    intro_of[im.edges[i].second].push_back(im.edge_intro[i]);
  }
  auto by_discovery = [&](int a, int b2) { return index.discovery(a) < index.discovery(b2); };

  for (int x = 0; x < g.n(); ++x) {
    auto& tree = res.trees[x];
    tree.owner = x;
    auto nodes = intro_of[x];
    std::sort(nodes.begin(), nodes.end(), by_discovery);
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    // LCAs of neighbours in discovery order close the set under branching.
    const std::size_t base = nodes.size();
    for (std::size_t i = 0; i + 1 < base; ++i) nodes.push_back(index.lca(nodes[i], nodes[i + 1]));
    std::sort(nodes.begin(), nodes.end(), by_discovery);
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    tree.nodes = nodes;
    std::vector<int> stack;
    for (int t : nodes) {
      while (!stack.empty() && !index.is_ancestor(stack.back(), t)) stack.pop_back();
      if (!stack.empty()) tree.edges.push_back({stack.back(), t});
      stack.push_back(t);
    }
    if (nodes.size() > 1) {
      std::map<int, int> local;
      for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
      std::vector<std::vector<int>> adj(nodes.size());
      for (auto [p, q] : tree.edges) {
        adj[local[p]].push_back(local[q]);
        adj[local[q]].push_back(local[p]);
      }
      auto farthest = [&](int s, int& dist) {
        std::vector<int> dd(nodes.size(), -1);
        std::vector<int> queue{s};
        dd[s] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i)
          for (int w : adj[queue[i]])
            if (dd[w] < 0) {
              dd[w] = dd[queue[i]] + 1;
              queue.push_back(w);
            }
        dist = dd[queue.back()];
        return queue.back();
      };
      int dist = 0;
      int far = farthest(0, dist);
      farthest(far, dist);
      tree.diameter = dist;
    }
    res.max_diameter = std::max(res.max_diameter, tree.diameter);
    if (tree.diameter > c && res.diameters_ok) {
      res.diameters_ok = false;
      res.witness = "T^" + std::to_string(x) + " has diameter " + std::to_string(tree.diameter);
    }
  }

  // Counters, deepest nodes first: below[t] says T^x reaches into subtree(t).
  auto rt = root_tree(d.num_nodes(), d.tree_edges, decomposition_root(d));
  auto vn = vertex_nodes(g.n(), d);
  std::vector<int> introduced_here(g.n(), 0);
  for (int x = 0; x < g.n(); ++x) {
    std::vector<int> order = vn[x];
    std::sort(order.begin(), order.end(), [&](int a, int b2) { return rt.depth[a] > rt.depth[b2]; });
    std::map<int, int> own;  // node -> edges at x introduced there
    for (int t : intro_of[x]) ++own[t];
    std::map<int, int> below;
    for (int t : order) {
      int counter = own.count(t) ? own[t] : 0;
      for (int s : rt.children[t])
        if (below.count(s) && below[s]) ++counter;
      below[t] = counter > 0;
      if (static_cast<int>(d.bags[t].size()) > b + 1) {
        res.max_counter = std::max(res.max_counter, counter);
        if (counter > b && res.counters_ok) {
          res.counters_ok = false;
          if (res.witness.empty())
            res.witness = "C[" + std::to_string(x) + "] = " + std::to_string(counter) + " at node " + std::to_string(t);
        }
      }
    }
  }
  return res;
}

FanConditionReport check_fan_conditions(const Graph& g, const TreeDecomposition& d, int a, int b, int c) {
  FanConditionReport rep;
  const int nodes = d.num_nodes();
  if (nodes == 0) return rep;
  auto adj = d.adjacency();
  for (auto [s, t] : d.tree_edges) {
    int size = static_cast<int>(adhesion(d, s, t).size());
    rep.max_adhesion = std::max(rep.max_adhesion, size);
    if (size > a && rep.adhesion_ok) {
      rep.adhesion_ok = false;
      rep.witness = "adhesion " + std::to_string(s) + "-" + std::to_string(t) + " has size " + std::to_string(size);
    }
  }

  // Condition 1 on every torso.
  std::vector<int> mark(g.n(), -1);
  int stamp = 0;
  for (int t = 0; t < nodes; ++t) {
    std::vector<std::vector<int>> adhesions;
    for (int s : adj[t]) adhesions.push_back(adhesion(d, t, s));
    for (int v : d.bags[t]) {
      ++stamp;
      int count = 0;
      auto add = [&](int w) {
        if (w != v && mark[w] != stamp) {
          mark[w] = stamp;
          ++count;
        }
      };
      for (int w : g.neighbours(v))
        if (in_bag(d.bags[t], w)) add(w);
      for (const auto& ad : adhesions)
        if (in_bag(ad, v))
          for (int w : ad) add(w);
      rep.max_torso_degree = std::max(rep.max_torso_degree, count);
      if (count > b && rep.torso_ok) {
        rep.torso_ok = false;
        rep.witness_vertex = v;
        rep.witness_nodes = {t};
        if (rep.witness.empty())
          rep.witness = "vertex " + std::to_string(v) + " has " + std::to_string(count) + " torso neighbours in node " +
                        std::to_string(t);
      }
    }
  }

  // Condition 2. A node t on a path counts for v when it introduces an edge
  // at v or has a neighbour off the path whose side introduces one. Only
  // nodes with a nonzero chance of counting are visited; they form a subtree.
  auto index = make_index(d);
  auto im = intro_map(g, d, index);
  std::vector<std::vector<int>> intro_of(g.n());
  for (int i = 0; i < static_cast<int>(im.edges.size()); ++i) {
    intro_of[im.edges[i].first].push_back(im.edge_intro[i]);
    intro_of[im.edges[i].second].push_back(im.edge_intro[i]);
  }
  auto rt = root_tree(nodes, d.tree_edges, index.root());
  std::vector<int> sub(nodes);
  std::vector<char> in_m(nodes);
  std::vector<std::vector<int>> marked(nodes);
  for (int v = 0; v < g.n(); ++v) {
    if (intro_of[v].empty()) continue;
    std::fill(in_m.begin(), in_m.end(), 0);
    for (int t : intro_of[v]) in_m[t] = 1;
    const int total = std::accumulate(in_m.begin(), in_m.end(), 0);
    for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
      int t = *it;
      sub[t] = in_m[t];
      for (int s : rt.children[t]) sub[t] += sub[s];
    }
    std::vector<int> zone;
    std::vector<char> in_zone(nodes, 0);
    for (int t = 0; t < nodes; ++t) {
      marked[t].clear();
      for (int w : adj[t]) {
        bool side = rt.parent[w] == t ? sub[w] > 0 : total - sub[t] > 0;
        if (side) marked[t].push_back(w);
      }
      if (in_m[t] || !marked[t].empty()) {
        in_zone[t] = 1;
        zone.push_back(t);
      }
    }
    auto counts = [&](int t, int p, int q) {
      if (in_m[t]) return 1;
      for (int w : marked[t])
        if (w != p && w != q) return 1;
      return 0;
    };
    // From every start, walk all paths; value = inner counts + endpoint count.
    for (int s : zone) {
      struct Frame { int node, prev, acc; };
      std::vector<Frame> stack{{s, -1, 0}};
      while (!stack.empty()) {
        auto [t, p, acc] = stack.back();
        stack.pop_back();
        int value = acc + counts(t, p, -1);
        if (value > rep.max_path_count) {
          rep.max_path_count = value;
          if (value > c) {
            rep.witness_vertex = v;
            rep.witness_nodes = {s, t};
          }
        }
        for (int q : adj[t])
          if (q != p && in_zone[q]) stack.push_back({q, t, acc + counts(t, p, q)});
      }
    }
  }
  if (rep.max_path_count > c) {
    rep.path_ok = false;
    if (rep.witness.empty())
      rep.witness = "path " + std::to_string(rep.witness_nodes[0]) + ".." + std::to_string(rep.witness_nodes[1]) +
                    " meets " + std::to_string(rep.max_path_count) + " bags relevant to vertex " +
                    std::to_string(rep.witness_vertex);
  }
  rep.ok = rep.adhesion_ok && rep.torso_ok && rep.path_ok;
  return rep;
}

Weight weight_w(const Graph& g, const TreeDecomposition& d, int t, const std::vector<int>& u_set) {
  if (t < 0 || t >= d.num_nodes()) throw Error(ErrorKind::kInvalidArgument, "node out of range");
  Weight w;
  const auto& bag = d.bags[t];
  std::vector<int> outside;
  for (int u : u_set) {
    if (u < 0 || u >= g.n()) throw Error(ErrorKind::kInvalidArgument, "vertex out of range");
    if (in_bag(bag, u))
      ++w.value;
    else
      outside.push_back(u);
  }
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
  if (outside.empty()) return w;

  auto adj = d.adjacency();
  const auto& around = adj[t];
  const int deg = static_cast<int>(around.size());
  std::vector<std::vector<int>> adhesions;
  for (int s : around) adhesions.push_back(adhesion(d, t, s));

  auto hits = [&](const std::vector<int>& chosen) {
    std::vector<char> blocked(g.n(), 0);
    for (int i : chosen)
      for (int x : adhesions[i]) blocked[x] = 1;
    auto seen = reach(g, bag, blocked);
    for (int u : outside)
      if (seen[u]) return false;
    return true;
  };

  // Adhesions towards a side holding part of U always work: upper bound.
  auto rt = root_tree(d.num_nodes(), d.tree_edges, t);
  std::vector<char> holds(g.n(), 0);
  for (int u : outside) holds[u] = 1;
  std::vector<int> side_has(d.num_nodes(), 0);
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    int s = *it;
    for (int x : d.bags[s])
      if (holds[x]) side_has[s] = 1;
    for (int ch : rt.children[s]) side_has[s] |= side_has[ch];
  }
  std::vector<int> upper;
  for (int i = 0; i < deg; ++i)
    if (side_has[around[i]]) upper.push_back(i);

  auto finish = [&](const std::vector<int>& chosen) {
    w.value += static_cast<int>(chosen.size());
    for (int i : chosen) w.adhesion_to.push_back(around[i]);
  };
  if (deg > 20) {
    w.exact = false;
    finish(upper);
    return w;
  }
  const int limit = static_cast<int>(upper.size());
  for (int size = 0; size < limit; ++size) {
    // Subsets of `size` adhesions in lexicographic order.
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      if (hits(pick)) {
        finish(pick);
        return w;
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == deg - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  finish(upper);
  return w;
}

bool bags_hit_all_paths(const Graph& g, const TreeDecomposition& d, const std::vector<int>& nodes,
                        const std::vector<int>& from, const std::vector<int>& to) {
  std::vector<char> blocked(g.n(), 0);
  for (int t : nodes)
    for (int x : d.bags[t]) blocked[x] = 1;
  auto seen = reach(g, from, blocked);
  for (int y : to)
    if (seen[y]) return false;
  return true;
}

SeparatingBags separating_bags(const Graph& g, const TreeDecomposition& d, int u, int v) {
  SeparatingBags res;
  const auto& xs = g.neighbours(u);
  const auto& ys = g.neighbours(v);
  if (xs.empty() || ys.empty()) {
    res.found = true;
    return res;
  }
  auto cut = menger(g, xs, ys);
  // Greedy cover of the separator by bags.
  std::vector<char> left(g.n(), 0);
  int remaining = 0;
  for (int x : cut.separator) {
    left[x] = 1;
    ++remaining;
  }
  while (remaining > 0) {
    int best = -1, best_gain = 0;
    for (int t = 0; t < d.num_nodes(); ++t) {
      int gain = 0;
      for (int x : d.bags[t]) gain += left[x];
      if (gain > best_gain) {
        best_gain = gain;
        best = t;
      }
    }
    if (best < 0) return res;  // some separator vertex lies in no bag
    res.nodes.push_back(best);
    for (int x : d.bags[best])
      if (left[x]) {
        left[x] = 0;
        --remaining;
      }
  }
  // A larger separator inside one or two bags can beat the cover.
  const int nodes = d.num_nodes();
  if (res.nodes.size() > 1)
    for (int t = 0; t < nodes; ++t)
      if (bags_hit_all_paths(g, d, {t}, xs, ys)) {
        res.nodes = {t};
        break;
      }
  if (res.nodes.size() > 2 && nodes <= 60)
    for (int s = 0; s < nodes && res.nodes.size() > 2; ++s)
      for (int t = s + 1; t < nodes; ++t)
        if (bags_hit_all_paths(g, d, {s, t}, xs, ys)) {
          res.nodes = {s, t};
          break;
        }
  std::sort(res.nodes.begin(), res.nodes.end());
  res.found = bags_hit_all_paths(g, d, res.nodes, xs, ys);
  return res;
}

DipoleConditionReport check_dipole_conditions(const Graph& g, const TreeDecomposition& d, int a, int b, int c) {
  DipoleConditionReport rep;
  const int nodes = d.num_nodes();
  rep.heavy_threshold_weights.assign(nodes, 0);
  for (auto [s, t] : d.tree_edges) {
    int size = static_cast<int>(adhesion(d, s, t).size());
    rep.max_adhesion = std::max(rep.max_adhesion, size);
    if (size > a && rep.adhesion_ok) {
      rep.adhesion_ok = false;
      rep.witness = "adhesion " + std::to_string(s) + "-" + std::to_string(t) + " has size " + std::to_string(size);
    }
  }
  for (int t = 0; t < nodes; ++t) {
    std::vector<int> heavy;
    for (int v = 0; v < g.n(); ++v) {
      if (g.degree(v) == 0) continue;
      auto w = weight_w(g, d, t, g.neighbours(v));
      if (!w.exact) rep.exact = false;
      rep.heavy_threshold_weights[t] = std::max(rep.heavy_threshold_weights[t], w.value);
      if (w.value > b) heavy.push_back(v);
    }
    rep.max_heavy_per_bag = std::max(rep.max_heavy_per_bag, static_cast<int>(heavy.size()));
    if (heavy.size() > 1 && rep.heavy_ok) {
      rep.heavy_ok = false;
      if (rep.witness.empty())
        rep.witness = "node " + std::to_string(t) + " has heavy vertices " + list_text(heavy);
    }
  }
  std::map<Edge, int> shared;
  for (const auto& bag : d.bags)
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j) ++shared[{bag[i], bag[j]}];
  for (const auto& [pair, count] : shared) {
    if (count < 2) continue;
    auto sep = separating_bags(g, d, pair.first, pair.second);
    int used = sep.found ? static_cast<int>(sep.nodes.size()) : nodes + 1;
    rep.max_pair_bags = std::max(rep.max_pair_bags, used);
    if (used > c && rep.pair_ok) {
      rep.pair_ok = false;
      if (rep.witness.empty())
        rep.witness = "pair " + std::to_string(pair.first) + "," + std::to_string(pair.second) + " needs " +
                      std::to_string(used) + " bags to separate their neighbourhoods";
    }
  }
  rep.ok = rep.adhesion_ok && rep.heavy_ok && rep.pair_ok;
  return rep;
}

}  // namespace treeband
