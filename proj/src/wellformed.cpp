#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "treeband/decomp.hpp"

namespace treeband {

namespace {

// Working copy with cheap node removal: dead nodes are dropped on finish().
struct Work {
  const Graph& g;
  std::vector<std::vector<int>> bags;
  std::vector<std::vector<int>> adj;
  std::vector<char> alive;

  Work(const Graph& graph, const TreeDecomposition& d) : g(graph), bags(d.bags), adj(d.adjacency()) {
    alive.assign(bags.size(), 1);
  }

  int add(std::vector<int> bag) {
    bags.push_back(std::move(bag));
    adj.emplace_back();
    alive.push_back(1);
    return static_cast<int>(bags.size()) - 1;
  }
  void link(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  void unlink(int a, int b) {
    adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
  }

  bool is_hub(int s) const {
    if (bags[s].empty()) return false;
    int eq = 0;
    for (int t : adj[s])
      if (is_subset_sorted(bags[s], bags[t])) ++eq;
    return eq >= 3;
  }

  std::vector<int> side(int s, int t) const {
    std::vector<int> out{t}, from{s};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (int y : adj[out[i]])
        if (y != from[i]) {
          out.push_back(y);
          from.push_back(out[i]);
        }
    return out;
  }

  std::vector<int> side_union(const std::vector<int>& nodes) const {
    std::vector<char> in(g.n(), 0);
    for (int x : nodes)
      for (int v : bags[x]) in[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
      if (in[v]) out.push_back(v);
    return out;
  }

  // Merge a subset bag into a neighbour, unless it is a hub with a strictly
  // larger neighbour.
  bool contract_once() {
    for (int s = 0; s < static_cast<int>(bags.size()); ++s) {
      if (!alive[s]) continue;
      for (int t : adj[s]) {
        if (!is_subset_sorted(bags[s], bags[t])) continue;
        if (bags[s] != bags[t] && is_hub(s)) continue;
        auto nbrs = adj[s];
        for (int x : nbrs) unlink(s, x);
        for (int x : nbrs)
          if (x != t) link(t, x);
        alive[s] = 0;
        return true;
      }
    }
    return false;
  }

  // Replace the side of t towards t2 by one copy per component of its residue.
  bool split_once() {
    for (int t = 0; t < static_cast<int>(bags.size()); ++t) {
      if (!alive[t]) continue;
      for (int t2 : adj[t]) {
        if (is_subset_sorted(bags[t2], bags[t])) continue;
        auto nodes = side(t, t2);
        auto un = side_union(nodes);
        std::vector<int> residue;
        std::set_difference(un.begin(), un.end(), bags[t].begin(), bags[t].end(),
                            std::back_inserter(residue));
        auto comps = components_of(residue);
        if (comps.size() < 2) continue;
        std::map<int, int> local;
        for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
        std::vector<Edge> inner;
        for (int x : nodes)
          for (int y : adj[x])
            if (x < y && local.count(y)) inner.emplace_back(x, y);
        unlink(t, t2);
        for (int x : nodes) {
          auto nb = adj[x];
          for (int y : nb) unlink(x, y);
          alive[x] = 0;
        }
        for (const auto& comp : comps) {
          std::vector<char> keep(g.n(), 0);
          for (int v : comp) {
            keep[v] = 1;
            for (int w : g.neighbours(v)) keep[w] = 1;
          }
          std::vector<int> ids;
          for (int x : nodes) {
            std::vector<int> bag;
            for (int v : bags[x])
              if (keep[v]) bag.push_back(v);
            ids.push_back(add(std::move(bag)));
          }
          for (auto [x, y] : inner) link(ids[local[x]], ids[local[y]]);
          link(t, ids[0]);
        }
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> components_of(const std::vector<int>& vs) const {
    std::vector<char> in(g.n(), 0), seen(g.n(), 0);
    for (int v : vs) in[v] = 1;
    std::vector<std::vector<int>> out;
    for (int s : vs) {
      if (seen[s]) continue;
      std::vector<int> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (int w : g.neighbours(comp[i]))
          if (in[w] && !seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  // Drop an adhesion vertex from a side where it has no neighbour beyond the adhesion.
  bool prune_once() {
    for (int t = 0; t < static_cast<int>(bags.size()); ++t) {
      if (!alive[t]) continue;
      for (int t2 : adj[t]) {
        auto a = intersect_sorted(bags[t], bags[t2]);
        if (a.empty()) continue;
        auto nodes = side(t, t2);
        auto un = side_union(nodes);
        std::vector<char> beyond(g.n(), 0);
        for (int v : un) beyond[v] = 1;
        for (int v : a) beyond[v] = 0;
        for (int v : a) {
          bool has = false;
          for (int w : g.neighbours(v)) has = has || beyond[w];
          if (has) continue;
          for (int x : nodes) {
            auto& b = bags[x];
            auto it = std::lower_bound(b.begin(), b.end(), v);
            if (it != b.end() && *it == v) b.erase(it);
          }
          return true;
        }
      }
    }
    return false;
  }

  // Gather neighbours of s sharing an adhesion (other than bags[s]) under a hub.
  bool group_once() {
    for (int s = 0; s < static_cast<int>(bags.size()); ++s) {
      if (!alive[s]) continue;
      std::map<std::vector<int>, std::vector<int>> by_adhesion;
      for (int t : adj[s]) by_adhesion[intersect_sorted(bags[s], bags[t])].push_back(t);
      for (auto& [a, group] : by_adhesion) {
        if (group.size() < 2 || a == bags[s] || a.empty()) continue;
        int z = add(a);
        for (int t : group) {
          unlink(s, t);
          link(z, t);
        }
        link(s, z);
        return true;
      }
    }
    return false;
  }

  TreeDecomposition finish() const {
    TreeDecomposition d;
    std::vector<int> id(bags.size(), -1);
    for (std::size_t x = 0; x < bags.size(); ++x)
      if (alive[x]) {
        id[x] = d.num_nodes();
        d.bags.push_back(bags[x]);
      }
    for (std::size_t x = 0; x < bags.size(); ++x)
      if (alive[x])
        for (int y : adj[x])
          if (static_cast<int>(x) < y) d.tree_edges.emplace_back(id[x], id[y]);
    std::sort(d.tree_edges.begin(), d.tree_edges.end());
    return d;
  }
};

// Nodes sorted by bag. Bags are distinct here, so this fixes the numbering.
TreeDecomposition canonical_order(const TreeDecomposition& d) {
  std::vector<int> order(d.num_nodes());
  for (int i = 0; i < d.num_nodes(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d.bags[a] < d.bags[b]; });
  std::vector<int> id(d.num_nodes());
  TreeDecomposition c;
  for (int i = 0; i < d.num_nodes(); ++i) {
    id[order[i]] = i;
    c.bags.push_back(d.bags[order[i]]);
  }
  for (auto [a, b] : d.tree_edges) c.tree_edges.emplace_back(std::min(id[a], id[b]), std::max(id[a], id[b]));
  std::sort(c.tree_edges.begin(), c.tree_edges.end());
  return c;
}

std::string canonical_key(const TreeDecomposition& c) {
  std::string key;
  for (const auto& b : c.bags) {
    for (int v : b) key += std::to_string(v) + ",";
    key += ";";
  }
  key += "|";
  for (auto [a, b] : c.tree_edges) key += std::to_string(a) + "-" + std::to_string(b) + ";";
  return key;
}

}  // namespace

TreeDecomposition enforce_wellformed(const Graph& g, const TreeDecomposition& d) {
  check_decomposition_structure(g.n(), d);
  std::optional<Work> w(std::in_place, g, d);
  // Splits can chase each other around a cut vertex whose blocks cannot all
  // be made connected (the T4/T6 clash). Before each split the work is
  // renumbered canonically, so the run is a function of the state; a repeated
  // state then marks a cycle, and stopping there keeps the result a fixed point.
  std::set<std::string> before_split;
  for (int step = 0; step < 100000; ++step) {
    if (w->contract_once() || w->group_once() || w->prune_once()) continue;
    auto c = canonical_order(w->finish());
    if (!before_split.insert(canonical_key(c)).second) break;
    w.emplace(g, c);
    if (!w->split_once()) break;
  }
  auto out = canonical_order(w->finish());
  if (d.root >= 0 && out.num_nodes() > 0) out.root = 0;
  return out;
}

}  // namespace treeband
