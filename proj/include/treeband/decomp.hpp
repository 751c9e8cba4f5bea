#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeband/graph.hpp"

namespace treeband {

// Tree decomposition: node i has bag bags[i] (sorted); tree_edges join nodes.
// root is optional (-1 = unrooted).
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<Edge> tree_edges;
  int root = -1;

  int num_nodes() const { return static_cast<int>(bags.size()); }
  int width() const;  // max bag size - 1; -1 when there are no bags
  std::vector<std::vector<int>> adjacency() const;  // sorted neighbour lists
};

// Throws Error(kInvalidStructure) if the node graph is not a tree, a bag holds
// an id outside 0..n-1, or a bag is unsorted/has duplicates.
void check_decomposition_structure(int n, const TreeDecomposition& d);

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b);
bool is_subset_sorted(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> adhesion(const TreeDecomposition& d, int s, int t);

// Node-to-parent map when rooted at r (parent[r] = -1), and a BFS order.
struct RootedTree {
  int root = -1;
  std::vector<int> parent;
  std::vector<int> order;  // BFS order from the root
  std::vector<int> depth;
  std::vector<std::vector<int>> children;
};
RootedTree root_tree(int nodes, const std::vector<Edge>& edges, int root);

struct PropertyCheck {
  bool checked = false;
  bool ok = true;
  std::string witness;  // first failure, human readable
};

struct DecompositionReport {
  std::array<PropertyCheck, 8> props;  // T1..T8 at index 0..7
  bool valid() const { return props[0].ok && props[1].ok; }
  bool wellformed() const { return valid() && props[2].ok && props[3].ok && props[4].ok && props[5].ok; }
};

// T1-T6 always; T7 and T8 only when k is supplied. T8 is the strict form:
// whenever mu(X1, X2) < min(|X1|, |X2|) and mu <= k for X_i inside bag t_i,
// some edge on the t1-t2 path has an adhesion of size <= mu that is a minimal
// separator. Exhaustive; meant for small inputs.
DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& d,
                                           std::optional<int> k = std::nullopt);

// A set S is a minimal separator when G - S has at least two full components.
bool is_minimal_separator(const Graph& g, const std::vector<int>& s);

// Merges subset bags, splits subtrees with disconnected residues, drops
// adhesion vertices lacking a neighbour on one side, then gathers equal
// adhesions around a hub bag. Some graphs (K_{2,3} at width 2) admit no
// decomposition of the same width satisfying all of T3-T6; the hub grouping
// wins and the residue conflict is left for the report to show.
TreeDecomposition enforce_wellformed(const Graph& g, const TreeDecomposition& d);

// Same bags and the same bag-to-bag edges (valid when bags are distinct).
bool same_decomposition_up_to_isomorphism(const TreeDecomposition& a, const TreeDecomposition& b);

// Removes nodes whose bag is contained in a neighbour's bag.
TreeDecomposition contract_subset_bags(const TreeDecomposition& d);

// Exact treewidth of g (n <= max_n) by dynamic programming over vertex subsets.
int exact_treewidth(const Graph& g, int max_n = 20);
std::vector<int> optimal_elimination_order(const Graph& g, int max_n = 20);
std::vector<int> min_fill_elimination_order(const Graph& g);
TreeDecomposition decomposition_from_elimination_order(const Graph& g, const std::vector<int>& order);

// Minimum-width decomposition; n <= max_n or Error(kSizeLimit).
TreeDecomposition exact_tree_decomposition(const Graph& g, int max_n = 20);

// Decomposition glued along the block-cut tree: blocks with at most
// exact_block_limit vertices are solved exactly, larger ones by min-fill.
struct ProvidedDecomposition {
  TreeDecomposition decomposition;
  bool exact_width = true;        // every block solved exactly
  std::optional<bool> lean;       // T8 verdict when it was checked
  int width = -1;
};
struct ProviderOptions {
  int exact_block_limit = 20;
  int lean_check_max_bag = 6;     // skip T8 when a bag exceeds this
  int lean_check_max_nodes = 40;
};
ProvidedDecomposition lean_provider(const Graph& g, const ProviderOptions& opt = {});

// Maximum, over vertex pairs, of the number of bags containing both.
int overlap_number(const TreeDecomposition& d);
int overlap_number_serial(const TreeDecomposition& d);

// Nodes whose bag contains v, as a per-vertex list.
std::vector<std::vector<int>> vertex_nodes(int n, const TreeDecomposition& d);

// Largest tree distance between two nodes containing v, over all v.
int max_vertex_subtree_diameter(int n, const TreeDecomposition& d);

// "td <nodes> <width+1> <n>", "b <id> v..." per node (ids from 1, vertices
// 0-based), then "<s> <t>" edge lines with 1-based node ids, optional
// "root <id>" last.
std::string serialize_decomposition(const TreeDecomposition& d, int n);
TreeDecomposition parse_decomposition(std::string_view text, int* n_out = nullptr);

}  // namespace treeband
