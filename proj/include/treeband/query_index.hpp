#pragma once

#include <vector>

#include "treeband/graph.hpp"

namespace treeband {

// Constant-time depth, ancestor, LCA and branching-node queries on a rooted
// tree. LCA uses an Euler tour with a sparse table of minimum depths.
class TreeQueryIndex {
 public:
  TreeQueryIndex() = default;
  // Error(kInvalidArgument) unless edges form a tree on 0..nodes-1.
  TreeQueryIndex(int nodes, const std::vector<Edge>& edges, int root);

  int size() const { return static_cast<int>(depth_.size()); }
  int root() const { return root_; }
  int depth(int a) const { return depth_[a]; }
  int parent(int a) const { return parent_[a]; }
  // DFS discovery and finish times; discovery order is the canonical order.
  int discovery(int a) const { return tin_[a]; }
  int finish(int a) const { return tout_[a]; }
  bool is_ancestor(int a, int b) const { return tin_[a] <= tin_[b] && tout_[b] <= tout_[a]; }
  int lca(int a, int b) const;
  // Deepest of the three pairwise LCAs for distinct nodes; with a repeat
  // it is the LCA of the two distinct ones.
  int branching(int a, int b, int c) const;
  int distance(int a, int b) const { return depth_[a] + depth_[b] - 2 * depth_[lca(a, b)]; }

 private:
  int root_ = -1;
  std::vector<int> depth_, parent_, tin_, tout_, first_;
  std::vector<int> euler_;
  std::vector<std::vector<int>> table_;  // table_[j][i]: shallowest of euler_[i .. i+2^j)
  std::vector<int> log2_;
};

}  // namespace treeband
