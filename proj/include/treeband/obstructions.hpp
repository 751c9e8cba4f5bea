#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treeband/graph.hpp"

namespace treeband {

struct RootedPathMinor {
  bool found = false;
  std::vector<std::vector<int>> branch_sets;  // consecutive sets are adjacent
  std::int64_t states = 0;
};

// Is there a U-rooted P_k minor: k disjoint connected sets, each meeting U,
// consecutive ones adjacent? Exact search over (used vertices, current set)
// states with memoised failures. Throws Error(kBudgetExceeded) past
// max_states and Error(kSizeLimit) for n > 64.
RootedPathMinor rooted_path_minor(const Graph& g, const std::vector<int>& u_set, int k,
                                  std::int64_t max_states = 5'000'000);
bool check_rooted_path_model(const Graph& g, const std::vector<int>& u_set,
                             const std::vector<std::vector<int>>& branch_sets);

// Elimination forest for td(G, U): parent over the deleted vertices
// (-1 outside the forest or at a root).
struct EliminationForest {
  std::vector<int> parent;
  std::vector<char> in_forest;
  int height = 0;
};
struct RootedTreedepth {
  int value = 0;
  EliminationForest forest;
};

// td(G,U) by the recursive definition, memoised on component bitsets.
// Components larger than max_component throw Error(kSizeLimit).
RootedTreedepth rooted_treedepth(const Graph& g, const std::vector<int>& u_set,
                                 int max_component = 18);
// Empty string when forest certifies height for U, else a reason.
std::string elimination_forest_problem(const Graph& g, const std::vector<int>& u_set,
                                       const EliminationForest& f);

struct FanNumber {
  int value = 0;
  int centre = -1;
  std::vector<std::vector<int>> branch_sets;  // rooted path in G - centre
};
// Largest k such that F_k is a topological minor, via the largest
// N(v)-rooted path minor in G - v over all v.
FanNumber fan_number(const Graph& g, std::int64_t max_states = 5'000'000);

struct DipoleNumber {
  int value = 0;
  int u = -1, v = -1;
  std::vector<std::vector<int>> paths;
};
// Maximum number of internally disjoint u-v paths over pairs u != v.
DipoleNumber dipole_number(const Graph& g);
DipoleNumber dipole_number_serial(const Graph& g);

// max over v of td(G, N[v]).
int neighbourhood_treedepth(const Graph& g, int* argmax = nullptr);

}  // namespace treeband
