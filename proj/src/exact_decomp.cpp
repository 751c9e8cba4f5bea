#include <algorithm>
#include <limits>

#include "treeband/decomp.hpp"
#include "treeband/error.hpp"

namespace treeband {

namespace {

// Neighbours outside S + v reachable from v through S.
int reach_outside(const Graph& g, Mask s, int v) {
  Mask comp = bit(v), frontier = bit(v), seen_out = 0;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= g.nbr_mask(lowest(f));
    seen_out |= next & ~s & ~bit(v);
    next &= s & ~comp;
    comp |= next;
    frontier = next;
  }
  return popcount(seen_out);
}

}  // namespace

std::vector<int> optimal_elimination_order(const Graph& g, int max_n) {
  const int n = g.n();
  if (n > max_n || n > 25)
    throw Error(ErrorKind::kSizeLimit, "exact treewidth limited to n <= " + std::to_string(std::min(max_n, 25)));
  if (n == 0) return {};
  const std::size_t total = std::size_t{1} << n;
  // tw[S]: best width when S is eliminated first; last[S]: last vertex of S.
  std::vector<std::uint8_t> tw(total), last(total);
  tw[0] = 0;
  for (std::size_t s = 1; s < total; ++s) {
    int best = std::numeric_limits<int>::max(), arg = -1;
    for (Mask r = s; r; r &= r - 1) {
      int v = lowest(r);
      Mask rest = s & ~bit(v);
      int val = std::max<int>(tw[rest], reach_outside(g, rest, v));
      if (val < best) {
        best = val;
        arg = v;
      }
    }
    tw[s] = static_cast<std::uint8_t>(best);
    last[s] = static_cast<std::uint8_t>(arg);
  }
  std::vector<int> order(n);
  Mask s = total - 1;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = last[s];
    s &= ~bit(order[i]);
  }
  return order;
}

int exact_treewidth(const Graph& g, int max_n) {
  if (g.n() == 0) return -1;
  return decomposition_from_elimination_order(g, optimal_elimination_order(g, max_n)).width();
}

std::vector<int> min_fill_elimination_order(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<char> gone(n, 0);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = 0;
    int best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (!gone[w] && adj[v][w]) nb.push_back(w);
      long long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) fill += !adj[nb[i]][nb[j]];
      int deg = static_cast<int>(nb.size());
      if (best < 0 || fill < best_fill || (fill == best_fill && deg < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = deg;
      }
    }
    std::vector<int> nb;
    for (int w = 0; w < n; ++w)
      if (!gone[w] && adj[best][w]) nb.push_back(w);
    for (int a : nb)
      for (int b : nb)
        if (a != b) adj[a][b] = 1;
    gone[best] = 1;
    order.push_back(best);
  }
  return order;
}

TreeDecomposition decomposition_from_elimination_order(const Graph& g,
                                                       const std::vector<int>& order) {
  const int n = g.n();
  TreeDecomposition d;
  if (n == 0) return d;
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> later(n);  // fill-graph neighbours eliminated later
  for (auto [u, v] : g.edges()) {
    if (pos[u] < pos[v])
      later[u].push_back(v);
    else
      later[v].push_back(u);
  }
  std::vector<int> parent_vertex(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    auto& l = later[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (l.empty()) continue;
    int next = *std::min_element(l.begin(), l.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    parent_vertex[v] = next;
    for (int w : l)
      if (w != next) later[next].push_back(w);
  }
  // Node i holds the bag of order[i].
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    auto bag = later[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(std::move(bag));
  }
  int prev_root = -1;
  for (int i = n - 1; i >= 0; --i) {
    int v = order[i];
    if (parent_vertex[v] >= 0) {
      d.tree_edges.emplace_back(pos[parent_vertex[v]], i);
    } else {
      if (prev_root >= 0) d.tree_edges.emplace_back(prev_root, i);
      prev_root = i;
    }
  }
  return contract_subset_bags(d);
}

TreeDecomposition exact_tree_decomposition(const Graph& g, int max_n) {
  if (g.n() > max_n)
    throw Error(ErrorKind::kSizeLimit, "exact tree decomposition limited to n <= " + std::to_string(max_n));
  return decomposition_from_elimination_order(g, optimal_elimination_order(g, max_n));
}

ProvidedDecomposition lean_provider(const Graph& g, const ProviderOptions& opt) {
  ProvidedDecomposition out;
  TreeDecomposition& d = out.decomposition;
  const int n = g.n();
  if (n == 0) return out;
  auto bct = biconnected_components(g);
  const int nb = static_cast<int>(bct.blocks.size());
  // Per block decomposition, nodes appended to d.
  std::vector<int> first_node(nb);
  std::vector<std::vector<int>> block_nodes(nb);
  for (int b = 0; b < nb; ++b) {
    const auto& vs = bct.block_vertices[b];
    Graph h = g.induced(vs);
    TreeDecomposition local;
    if (h.n() <= opt.exact_block_limit) {
      local = exact_tree_decomposition(h, opt.exact_block_limit);
    } else {
      out.exact_width = false;
      local = decomposition_from_elimination_order(h, min_fill_elimination_order(h));
    }
    const int base = d.num_nodes();
    first_node[b] = base;
    for (auto& bag : local.bags) {
      std::vector<int> mapped;
      for (int x : bag) mapped.push_back(vs[x]);
      std::sort(mapped.begin(), mapped.end());
      block_nodes[b].push_back(d.num_nodes());
      d.bags.push_back(std::move(mapped));
    }
    for (auto [s, t] : local.tree_edges) d.tree_edges.emplace_back(base + s, base + t);
  }
  // Glue blocks through cutvertices by walking the block-cut tree.
  const int nc = static_cast<int>(bct.cutvertices.size());
  std::vector<std::vector<int>> bct_adj(nb + nc);
  for (auto [b, c] : bct.tree_edges) {
    bct_adj[b].push_back(c);
    bct_adj[c].push_back(b);
  }
  auto node_with = [&](int b, int v) {
    for (int t : block_nodes[b])
      if (std::binary_search(d.bags[t].begin(), d.bags[t].end(), v)) return t;
    return -1;
  };
  std::vector<int> bct_parent(nb + nc, -2);
  std::vector<char> covered(n, 0);
  int prev_component_node = -1;
  auto link_component = [&](int node) {
    if (prev_component_node >= 0) d.tree_edges.emplace_back(prev_component_node, node);
    prev_component_node = node;
  };
  for (int b0 = 0; b0 < nb; ++b0) {
    if (bct_parent[b0] != -2) continue;
    bct_parent[b0] = -1;
    link_component(first_node[b0]);
    std::vector<int> q{b0};
    for (std::size_t i = 0; i < q.size(); ++i) {
      int x = q[i];
      for (int y : bct_adj[x]) {
        if (bct_parent[y] != -2) continue;
        bct_parent[y] = x;
        q.push_back(y);
        if (y < nb) {  // block y hangs below cutvertex x, which hangs below block bct_parent[x]
          int cut = bct.cutvertices[x - nb];
          d.tree_edges.emplace_back(node_with(bct_parent[x], cut), node_with(y, cut));
        }
      }
    }
  }
  for (const auto& vs : bct.block_vertices)
    for (int v : vs) covered[v] = 1;
  for (int v = 0; v < n; ++v)
    if (!covered[v]) {
      d.bags.push_back({v});
      link_component(d.num_nodes() - 1);
    }
  d = enforce_wellformed(g, contract_subset_bags(d));
  out.width = d.width();
  int max_bag = out.width + 1;
  if (max_bag <= opt.lean_check_max_bag && d.num_nodes() <= opt.lean_check_max_nodes) {
    auto rep = validate_decomposition(g, d, out.width);
    out.lean = rep.props[7].ok;
  }
  return out;
}

}  // namespace treeband
