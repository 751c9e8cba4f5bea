#pragma once

#include <cstdint>
#include <optional>

#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

struct Decision {
  bool yes = false;
  TreeLayout layout;  // on yes: valid, bandwidth <= k
  std::int64_t states = 0;
};

// Exact search over configurations (component, window of the last <= k
// placed vertices, oldest first). Error(kBudgetExceeded) past max_states.
Decision decide_treebandwidth(const Graph& g, int k, std::int64_t max_states = 20'000'000);

struct ExactTbw {
  int value = 0;
  TreeLayout layout;
  std::int64_t states = 0;
};
// Increasing k from max(treewidth, 1 if any edge) when treewidth is
// computable (n <= 20), from 0 or 1 otherwise.
ExactTbw exact_treebandwidth(const Graph& g, std::int64_t max_states = 20'000'000);

}  // namespace treeband
