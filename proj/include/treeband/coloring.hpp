#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

struct Colouring {
  std::vector<int> colour;  // per vertex, in 0..palette_size-1
  int palette_size = 0;
};

// colour(v) = depth(v) mod (p*k + 1) with k the bandwidth of t.
Colouring pcentered_from_layout(const Graph& g, const TreeLayout& t, int p);

struct PCenteredCheck {
  bool ok = true;
  std::vector<int> counterexample;  // a connected set with <= p colours, none unique
  std::int64_t subsets_checked = 0;
};

// Walks every connected vertex set once (sets are grown from their minimum
// vertex). Colours only depend on the vertex set, and a connected subgraph
// spans a connected induced set, so induced sets suffice. Throws
// Error(kBudgetExceeded) past max_subsets. The OpenMP version splits the work
// by minimum vertex; results match the serial one.
PCenteredCheck verify_pcentered(const Graph& g, const Colouring& c, int p,
                                std::int64_t max_subsets = 200'000'000);
PCenteredCheck verify_pcentered_serial(const Graph& g, const Colouring& c, int p,
                                       std::int64_t max_subsets = 200'000'000);

// One "v colour" line per vertex.
std::string serialize_colouring(const Colouring& c);
Colouring parse_colouring(std::string_view text);

}  // namespace treeband
