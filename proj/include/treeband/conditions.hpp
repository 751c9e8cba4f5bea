#pragma once

#include <string>
#include <vector>

#include "treeband/decomp.hpp"
#include "treeband/graph.hpp"
#include "treeband/query_index.hpp"

namespace treeband {

// Root used for a decomposition: d.root when set, else the first node whose
// bag holds vertex 0, else node 0.
int decomposition_root(const TreeDecomposition& d);

// vertex_intro[x]: node closest to the root whose bag holds x.
// edge_intro[i]: the deeper of the two endpoint intros, for g.edges()[i].
struct IntroMap {
  std::vector<int> vertex_intro;
  std::vector<Edge> edges;
  std::vector<int> edge_intro;
  std::vector<std::vector<int>> introduced;  // per node: indices into edges
};
// Error(kPrecondition) if the decomposition is not valid for g.
IntroMap intro_map(const Graph& g, const TreeDecomposition& d, const TreeQueryIndex& index);

// T^x: nodes introducing an edge at x, closed under branching nodes, with
// each node linked to its nearest ancestor in the set. The counter C[x] at t
// is the number of child subtrees whose T^x reaches t plus the edges at x
// introduced by t. Bags of at most b+1 vertices meet the torso bound anyway.
struct NeighbourhoodTree {
  int owner = -1;
  std::vector<int> nodes;  // decomposition nodes, in discovery order
  std::vector<Edge> edges;
  int diameter = 0;        // in edges of T^x; 0 for empty or single-node trees
};
struct NeighbourhoodTrees {
  std::vector<NeighbourhoodTree> trees;  // indexed by vertex
  bool counters_ok = true;   // C[x] <= b on bags with more than b+1 vertices
  bool diameters_ok = true;  // diameter(T^x) <= c
  int max_counter = 0;
  int max_diameter = 0;
  std::string witness;
};
NeighbourhoodTrees neighbourhood_trees(const Graph& g, const TreeDecomposition& d, int b, int c);

struct FanConditionReport {
  bool ok = true;
  bool adhesion_ok = true;  // every adhesion has size <= a
  bool torso_ok = true;     // every vertex has <= b torso neighbours in every bag
  bool path_ok = true;      // every path of T meets <= c relevant bags per vertex
  int max_adhesion = 0;
  int max_torso_degree = 0;
  int max_path_count = 0;
  int witness_vertex = -1;
  std::vector<int> witness_nodes;  // the bag (torso) or the path (endpoints) at fault
  std::string witness;
};
// Condition 2 per vertex v: on a path P, a bag counts when it introduces an
// edge at v or has a neighbour off P whose side introduces one. Every path
// is enumerated, so this is quadratic in the number of nodes per vertex.
FanConditionReport check_fan_conditions(const Graph& g, const TreeDecomposition& d, int a, int b, int c);

struct Weight {
  int value = 0;
  bool exact = true;
  std::vector<int> adhesion_to;  // neighbours t' of t whose adhesions were chosen
};
// |bag(t) ∩ U| plus the fewest adhesions at t whose union meets every path
// from bag(t) to U - bag(t). Exhaustive when t has <= 20 neighbours, else
// every adhesion leading to U is taken and exact is false.
Weight weight_w(const Graph& g, const TreeDecomposition& d, int t, const std::vector<int>& u_set);

// Bags whose union meets every N(u)-N(v) path: a minimum separator covered
// greedily by bags. Empty optional-like result (found=false) if none fit.
struct SeparatingBags {
  bool found = false;
  std::vector<int> nodes;
};
SeparatingBags separating_bags(const Graph& g, const TreeDecomposition& d, int u, int v);
bool bags_hit_all_paths(const Graph& g, const TreeDecomposition& d, const std::vector<int>& nodes,
                        const std::vector<int>& from, const std::vector<int>& to);

struct DipoleConditionReport {
  bool ok = true;
  bool adhesion_ok = true;
  bool heavy_ok = true;  // at most one vertex per bag with w(t, N(v)) > b
  bool pair_ok = true;   // pairs sharing >= 2 bags have <= c separating bags
  bool exact = true;     // every weight was computed exactly
  int max_adhesion = 0;
  int max_heavy_per_bag = 0;
  int max_pair_bags = 0;
  std::vector<int> heavy_threshold_weights;  // per node: largest weight seen
  std::string witness;
};
DipoleConditionReport check_dipole_conditions(const Graph& g, const TreeDecomposition& d, int a, int b, int c);

}  // namespace treeband
