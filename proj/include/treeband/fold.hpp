#pragma once

#include <vector>

#include "treeband/decomp.hpp"
#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

// Folding keeps one output node per input node plus a new root holding the
// initial adhesion. Each recursive step takes a subtree cut off by at most
// two adhesions, pulls a selected set of its bags (closed under branching
// nodes) up to the bag holding the already placed vertices, and recurses on
// what is left. A placed vertex is dropped from a remainder only once every
// edge it has into that remainder sits in a pulled bag, so the output is a
// valid decomposition for any selection.
struct FoldStats {
  int tasks = 0;            // recursive steps performed
  int max_pulled = 0;       // largest pulled set in one step
  int max_placed = 0;       // largest set of already placed vertices in one step
  int recursion_depth = 0;
};

struct FoldResult {
  TreeDecomposition decomposition;  // rooted; root holds the initial adhesion
  FoldStats stats;
};

// Pulls, for every placed vertex x and unplaced neighbour y, the bag holding
// both that is nearest the incident adhesion. Error(kPrecondition) unless d is
// a valid decomposition of g passing check_fan_conditions(a, b, c). Meant for
// enforce_wellformed output, but only validity is required.
FoldResult fold_fan(const Graph& g, const TreeDecomposition& d, int a, int b, int c);

// Pulls, for every pair of placed vertices, bags covering a minimum separator
// of their neighbourhoods inside the subtree. Error(kPrecondition) unless d is
// a valid decomposition of g passing check_dipole_conditions(a, b, c).
FoldResult fold_dipole(const Graph& g, const TreeDecomposition& d, int a, int b, int c);

// Diameter bound for every vertex's bag subtree after fold_fan.
int fan_fold_diameter_bound(int a, int c);

// Pulled bags per dipole step: c separating bags for each pair of at most 2a
// placed vertices, two boundary nodes, then branching nodes (< twice that).
int dipole_fold_step_bound(int a, int c);
// Overlap bound after fold_dipole: a pair sits in one first pulled tree, then
// in at most s remainders between two pulled bags and at most b remainders
// on one adhesion (each holds a neighbour of the light vertex of the pair
// and costs it one adhesion of weight), each pulling at most s bags.
long long dipole_fold_overlap_bound(int a, int b, int c);

// Tree layout from a decomposition: walk the nodes from the root and hang the
// bag's not yet placed vertices, ascending, as a chain below the last vertex
// placed on the way down.
TreeLayout collapse_to_layout(const Graph& g, const TreeDecomposition& d);

}  // namespace treeband
