#include <algorithm>
#include <set>

#include "treeband/error.hpp"
#include "treeband/spqr.hpp"

namespace treeband {

TreePartition tree_partition_construct(const Graph& g, const std::vector<int>& root_set) {
  const int n = g.n();
  TreePartition tp;
  if (n == 0) return tp;
  std::vector<int> layer(n, -1);
  std::vector<int> queue;
  for (int v : root_set) {
    if (v < 0 || v >= n) throw Error(ErrorKind::kInvalidArgument, "root vertex out of range");
    if (layer[v] < 0) {
      layer[v] = 0;
      queue.push_back(v);
    }
  }
  // Components the root set misses start from their least vertex.
  for (std::size_t qi = 0;; ++qi) {
    if (qi == queue.size()) {
      int s = 0;
      while (s < n && layer[s] >= 0) ++s;
      if (s == n) break;
      layer[s] = 0;
      queue.push_back(s);
    }
    int v = queue[qi];
    for (int w : g.neighbours(v))
      if (layer[w] < 0) {
        layer[w] = layer[v] + 1;
        queue.push_back(w);
      }
  }
  const int depth = *std::max_element(layer.begin(), layer.end());
  // Layer 0 is one part. Deeper parts: components of G[layers >= i] cut
  // down to layer i; the parent is the part one layer up that touches it.
  std::vector<int> part_of(n, -1);
  tp.parts.emplace_back();
  for (int v = 0; v < n; ++v)
    if (layer[v] == 0) {
      part_of[v] = 0;
      tp.parts[0].push_back(v);
    }
  for (int i = 1; i <= depth; ++i) {
    std::vector<int> comp(n, -1);
    for (int s = 0; s < n; ++s) {
      if (layer[s] != i || comp[s] >= 0) continue;
      std::vector<int> stack{s}, members;
      comp[s] = s;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (layer[v] == i) members.push_back(v);
        for (int w : g.neighbours(v))
          if (layer[w] >= i && comp[w] < 0) {
            comp[w] = s;
            stack.push_back(w);
          }
      }
      std::sort(members.begin(), members.end());
      const int id = static_cast<int>(tp.parts.size());
      int up = -1;
      for (int v : members) {
        part_of[v] = id;
        for (int w : g.neighbours(v))
          if (layer[w] == i - 1) up = part_of[w];
      }
      tp.parts.push_back(members);
      tp.tree_edges.push_back({up, id});
    }
  }
  if (auto why = tree_partition_problem(g, tp); !why.empty())
    throw Error(ErrorKind::kInvalidStructure, "tree-partition construction failed: " + why);
  return tp;
}

namespace {

// Layout of one skeleton on local ids, rooted at x with y as its only child.
TreeLayout node_layout(const SpqrNode& node, int x, int y) {
  Graph skel = skeleton_graph(node);
  const int m = skel.n();
  TreeLayout t;
  t.parent.assign(m, -1);
  t.root = x;
  switch (node.type) {
    case SpqrType::kP:
      t.parent[y] = x;
      break;
    case SpqrType::kS: {
      // Walk the cycle x, y, ... then interleave from both ends: bandwidth 2.
      std::vector<int> cyc{x, y};
      while (static_cast<int>(cyc.size()) < m) {
        int last = cyc.back(), before = cyc[cyc.size() - 2];
        for (int w : skel.neighbours(last))
          if (w != before) {
            cyc.push_back(w);
            break;
          }
      }
      std::vector<int> order{x, y};
      for (int lo = 2, hi = m - 1; lo <= hi;) {
        order.push_back(cyc[hi--]);
        if (lo <= hi) order.push_back(cyc[lo++]);
      }
      t = path_layout(order);
      break;
    }
    case SpqrType::kR: {
      std::set<int> root_set{x, y};
      for (int v : {x, y})
        for (int w : skel.neighbours(v)) root_set.insert(w);
      auto tp = tree_partition_construct(skel, {root_set.begin(), root_set.end()});
      t = layout_from_tree_partition(skel, tp, {x, y});
      break;
    }
  }
  return t;
}

struct Gluer {
  const Graph& g;
  std::vector<int> parent, depth;
  std::vector<char> placed;

  explicit Gluer(const Graph& graph)
      : g(graph), parent(graph.n(), -1), depth(graph.n(), 0), placed(graph.n(), 0) {}

  void put(int v, int above) {
    parent[v] = above;
    depth[v] = above < 0 ? 0 : depth[above] + 1;
    placed[v] = 1;
  }

  // Copies a local layout top-down; already placed vertices keep their spot.
  void copy(const TreeLayout& local, const std::vector<int>& ids) {
    auto children = layout_children(local);
    std::vector<int> order{local.root};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int c : children[order[i]]) order.push_back(c);
    for (int v : order) {
      if (placed[ids[v]]) continue;
      put(ids[v], ids[local.parent[v]]);
    }
  }

  // Block with at least 3 vertices whose vertex `top` is already placed.
  void place_block(const std::vector<int>& ids, int top) {
    Graph block = g.induced(ids);
    auto local_of = [&](int v) {
      return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    auto t = build_spqr(block);
    const int nodes = static_cast<int>(t.nodes.size());
    std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (node, tree edge)
    for (int e = 0; e < static_cast<int>(t.tree_edges.size()); ++e) {
      adj[t.tree_edges[e].first].push_back({t.tree_edges[e].second, e});
      adj[t.tree_edges[e].second].push_back({t.tree_edges[e].first, e});
    }
    const int ltop = local_of(top);
    int start = 0;
    while (!std::binary_search(t.nodes[start].vertices.begin(), t.nodes[start].vertices.end(), ltop)) ++start;
    // (node, incoming tree edge); the root node has none.
    std::vector<std::pair<int, int>> stack{{start, -1}};
    std::vector<char> seen(nodes, 0);
    seen[start] = 1;
    while (!stack.empty()) {
      auto [node_id, via] = stack.back();
      stack.pop_back();
      const auto& node = t.nodes[node_id];
      int gx, gy;
      if (via < 0) {
        gx = top;
        int ly = -1;
        for (const auto& e : node.edges)
          if (e.u == ltop || e.v == ltop) {
            int other = e.u == ltop ? e.v : e.u;
            if (ly < 0 || other < ly) ly = other;
          }
        gy = ids[ly];
      } else {
        int a = ids[t.pairs[via].first], b = ids[t.pairs[via].second];
        gx = depth[a] <= depth[b] ? a : b;
        gy = gx == a ? b : a;
      }
      auto pos = [&](int global) {
        int l = local_of(global);
        return static_cast<int>(std::lower_bound(node.vertices.begin(), node.vertices.end(), l) - node.vertices.begin());
      };
      TreeLayout local = node_layout(node, pos(gx), pos(gy));
      std::vector<int> global_ids;
      for (int l : node.vertices) global_ids.push_back(ids[l]);
      copy(local, global_ids);
      for (auto [next, e] : adj[node_id])
        if (!seen[next]) {
          seen[next] = 1;
          stack.push_back({next, e});
        }
    }
  }
};

}  // namespace

PlanarLayout planar_layout_construct(const Graph& g, int k) {
  const int n = g.n();
  PlanarLayout res;
  if (n == 0) return res;
  auto bc = biconnected_components(g);
  const int blocks = static_cast<int>(bc.blocks.size());
  for (int b = 0; b < blocks; ++b) {
    const auto& vs = bc.block_vertices[b];
    if (vs.size() < 3) continue;
    auto check = planar_fan_conditions(g.induced(vs), k);
    if (!check.ok) throw Error(ErrorKind::kPrecondition, "fan conditions fail on a block: " + check.witness);
  }
  std::vector<std::vector<int>> blocks_at(n);
  for (int b = 0; b < blocks; ++b)
    for (int v : bc.block_vertices[b]) blocks_at[v].push_back(b);

  Gluer glue(g);
  std::vector<char> block_done(blocks, 0);
  int first_root = -1;
  for (const auto& comp : connected_components(g)) {
    // Components carry no edges between them: hang each below the first root.
    int r = comp[0];
    glue.put(r, first_root);
    if (first_root < 0) first_root = r;
    std::vector<std::pair<int, int>> queue;  // (block, top vertex)
    for (int b : blocks_at[r]) {
      block_done[b] = 1;
      queue.push_back({b, r});
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [b, top] = queue[qi];
      const auto& vs = bc.block_vertices[b];
      if (vs.size() == 2) {
        int other = vs[0] == top ? vs[1] : vs[0];
        glue.put(other, top);
      } else {
        glue.place_block(vs, top);
      }
      for (int v : vs)
        for (int nb : blocks_at[v])
          if (!block_done[nb]) {
            block_done[nb] = 1;
            queue.push_back({nb, v});
          }
    }
  }
  res.layout.root = first_root;
  res.layout.parent = glue.parent;
  if (!validate_layout(g, res.layout).ok)
    throw Error(ErrorKind::kInvalidStructure, "planar layout construction produced an invalid layout");
  res.bandwidth = bandwidth_of_layout(g, res.layout);
  return res;
}

}  // namespace treeband
