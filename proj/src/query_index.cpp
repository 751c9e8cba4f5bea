#include "treeband/query_index.hpp"

#include "treeband/error.hpp"

namespace treeband {

TreeQueryIndex::TreeQueryIndex(int nodes, const std::vector<Edge>& edges, int root) : root_(root) {
  if (nodes <= 0 || root < 0 || root >= nodes || static_cast<int>(edges.size()) != nodes - 1)
    throw Error(ErrorKind::kInvalidArgument, "query index needs a tree with a valid root");
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b)
      throw Error(ErrorKind::kInvalidArgument, "query index: bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  depth_.assign(nodes, -1);
  parent_.assign(nodes, -1);
  tin_.assign(nodes, 0);
  tout_.assign(nodes, 0);
  first_.assign(nodes, 0);
  // Iterative DFS; next_child[v] walks adj[v].
  std::vector<std::size_t> next_child(nodes, 0);
  std::vector<int> stack{root};
  depth_[root] = 0;
  int clock = 0;
  tin_[root] = clock++;
  first_[root] = 0;
  euler_.push_back(root);
  while (!stack.empty()) {
    int v = stack.back();
    if (next_child[v] < adj[v].size()) {
      int w = adj[v][next_child[v]++];
      if (w == parent_[v]) continue;
      if (depth_[w] >= 0) throw Error(ErrorKind::kInvalidArgument, "query index: edges contain a cycle");
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      tin_[w] = clock++;
      first_[w] = static_cast<int>(euler_.size());
      euler_.push_back(w);
      stack.push_back(w);
    } else {
      tout_[v] = clock++;
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back());
    }
  }
  for (int d : depth_)
    if (d < 0) throw Error(ErrorKind::kInvalidArgument, "query index: tree is disconnected");
  const int m = static_cast<int>(euler_.size());
  log2_.assign(m + 1, 0);
  for (int i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  table_.push_back(euler_);
  for (int j = 1; (1 << j) <= m; ++j) {
    const auto& prev = table_[j - 1];
    std::vector<int> row(m - (1 << j) + 1);
    for (int i = 0; i + (1 << j) <= m; ++i) {
      int a = prev[i], b = prev[i + (1 << (j - 1))];
      row[i] = depth_[a] <= depth_[b] ? a : b;
    }
    table_.push_back(std::move(row));
  }
}

int TreeQueryIndex::lca(int a, int b) const {
  int l = first_[a], r = first_[b];
  if (l > r) std::swap(l, r);
  int j = log2_[r - l + 1];
  int x = table_[j][l], y = table_[j][r - (1 << j) + 1];
  return depth_[x] <= depth_[y] ? x : y;
}

int TreeQueryIndex::branching(int a, int b, int c) const {
  // A repeated node leaves a pair, whose branching node is its LCA.
  if (a == b || a == c) return lca(b == a ? c : b, a);
  if (b == c) return lca(a, b);
  int best = lca(a, b);
  for (int x : {lca(a, c), lca(b, c)})
    if (depth_[x] > depth_[best]) best = x;
  return best;
}

}  // namespace treeband
