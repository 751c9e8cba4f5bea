#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeband/graph.hpp"

namespace treeband {

// Rooted tree on exactly the vertex set of a graph. parent[root] == -1.
// An empty layout (no vertices) has root == -1 and an empty parent vector.
struct TreeLayout {
  int root = -1;
  std::vector<int> parent;

  int size() const { return static_cast<int>(parent.size()); }
  bool empty() const { return parent.empty(); }
  bool operator==(const TreeLayout& o) const { return root == o.root && parent == o.parent; }
};

// Throws Error(kInvalidStructure) unless t is a rooted tree spanning 0..n-1.
void check_layout_structure(int n, const TreeLayout& t);
std::vector<int> layout_depths(const TreeLayout& t);
std::vector<std::vector<int>> layout_children(const TreeLayout& t);  // sorted
// True when a is an ancestor of b (a == b counts).
bool layout_is_ancestor(const TreeLayout& t, const std::vector<int>& depth, int a, int b);

struct LayoutReport {
  bool ok = true;
  std::vector<Edge> violations;  // edges joining incomparable vertices
};
LayoutReport validate_layout(const Graph& g, const TreeLayout& t);

// Max depth difference over edges. Throws Error(kPrecondition) if invalid.
int bandwidth_of_layout(const Graph& g, const TreeLayout& t);

// position[v] in 1..n.
struct LinearLayout {
  std::vector<int> position;
};
int linear_bandwidth(const Graph& g, const LinearLayout& s);
// order[0] is the root, order[i+1] the child of order[i].
TreeLayout path_layout(const std::vector<int>& order);
LinearLayout linear_from_order(const std::vector<int>& order);

// Links per-component layouts root-under-previous-root, components taken
// in the given order. Each entry is (vertices, layout on local ids).
TreeLayout chain_layouts(int n, const std::vector<std::pair<std::vector<int>, TreeLayout>>& parts);

struct TreePartition {
  std::vector<std::vector<int>> parts;  // node -> vertices
  std::vector<Edge> tree_edges;         // edges between nodes
  int width() const;
};
// Empty string when valid, else a reason.
std::string tree_partition_problem(const Graph& g, const TreePartition& tp);

// Roots the partition tree at the node holding root_prefix[0] (or the minimum
// vertex id), orders each part ascending except that root_prefix vertices come
// first in the root part, and hangs every part below the last vertex of its
// parent part. Bandwidth <= 2 * width - 1.
TreeLayout layout_from_tree_partition(const Graph& g, const TreePartition& tp,
                                      const std::vector<int>& root_prefix = {});

struct SubdivisionResult {
  Graph graph;
  TreeLayout layout;
  std::vector<int> new_vertices;  // along the path from the upper endpoint
};
// Replaces edge (x, y) by a path through `times` new vertices n..n+times-1.
SubdivisionResult extend_layout_to_subdivision(const Graph& g, const TreeLayout& t, Edge edge,
                                               int times);

int treespan_of_layout(const Graph& g, const TreeLayout& t);

struct EdgeTreewidth {
  int value = 0;
  std::vector<int> per_vertex;  // edges leaving the subtree at v upwards
};
EdgeTreewidth edge_treewidth_of_layout(const Graph& g, const TreeLayout& t);

struct ChordalCompletion {
  Graph completion;
  int clique_minus_one = 0;
  std::vector<std::vector<int>> maximal_cliques;
  bool cliques_consecutive = true;  // each maximal clique is a vertical path segment
};
ChordalCompletion proper_chordal_completion(const Graph& g, const TreeLayout& t);

// Bron-Kerbosch with pivoting; each clique sorted, list sorted.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

// "root r" (or "root none"), then "child parent" lines sorted by child.
std::string serialize_layout(const TreeLayout& t);
TreeLayout parse_layout(std::string_view text);

}  // namespace treeband
