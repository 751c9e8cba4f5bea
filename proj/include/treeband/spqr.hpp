#pragma once

#include <string>
#include <vector>

#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

enum class SpqrType { kS, kP, kR };
const char* spqr_type_name(SpqrType t);

struct SkeletonEdge {
  int u = -1, v = -1;  // global vertex ids
  int tree_edge = -1;  // virtual edge: index into SpqrTree::tree_edges; real: -1
};

struct SpqrNode {
  SpqrType type = SpqrType::kR;
  std::vector<int> vertices;  // sorted global ids
  std::vector<SkeletonEdge> edges;
};

struct SpqrTree {
  std::vector<SpqrNode> nodes;
  std::vector<Edge> tree_edges;  // node pairs
  std::vector<Edge> pairs;       // separation pair of each tree edge, sorted
};

// Recursive splitting at the lexicographically smallest separation pair,
// followed by merging adjacent S-S and P-P nodes. Error(kPrecondition) when
// g is not 2-connected or has fewer than 3 vertices.
SpqrTree build_spqr(const Graph& g);

// Empty when the tree meets the structural rules: S skeletons are cycles of
// length >= 3, P skeletons are bonds with >= 3 edges, R skeletons are simple
// and 3-connected, no S-S or P-P neighbours, each virtual edge appears in
// exactly its two endpoint nodes, each real edge of g appears exactly once.
std::string spqr_problem(const Graph& g, const SpqrTree& t);

// Skeleton as a simple graph on node.vertices (local ids by position).
Graph skeleton_graph(const SpqrNode& node);

std::string serialize_spqr(const SpqrTree& t);

struct GemCheck {
  bool gem_free = true;
  std::string witness;  // describes the violated condition
};
// Per block: every R skeleton has maximum degree <= 3, and no vertex lies in
// two nodes that are P or R.
GemCheck gem_free_check(const Graph& g);

struct PlanarFanCheck {
  bool ok = true;
  int max_r_degree = 0;
  int max_pair_path = 0;  // most tree edges containing one vertex on a path
  std::string witness;
};
// On a 2-connected graph taken to be planar: R skeleton degrees < k and,
// for every x, at most 2k+1 tree edges containing x along any tree path.
PlanarFanCheck planar_fan_conditions(const Graph& g, int k);

// BFS layers from root_set (plus the least vertex of every component it
// misses), each layer split by the components of the graph beyond it.
// root_set forms the root part.
TreePartition tree_partition_construct(const Graph& g, const std::vector<int>& root_set);

struct PlanarLayout {
  TreeLayout layout;
  int bandwidth = 0;
};
// Glues per-node layouts along the block-cut tree and SPQR trees. Throws
// Error(kPrecondition) when planar_fan_conditions(block, k) fails on a block.
PlanarLayout planar_layout_construct(const Graph& g, int k);

}  // namespace treeband
