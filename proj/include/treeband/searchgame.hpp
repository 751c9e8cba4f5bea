#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

// The whole game tree against a visible fugitive, flattened depth-first.
// A branch starts when the fugitive commits to a component; the removals that
// this choice allows come right before the branch's first placement. `step`
// is the placement count along the branch (1-based). Removals are local to a
// branch and undone when the search backtracks.
struct SearchEvent {
  enum class Kind { kPlace, kRemove };
  Kind kind = Kind::kPlace;
  int vertex = -1;
  int step = 0;
};

struct SearchTrace {
  std::vector<SearchEvent> events;
  // Per placement event (same order as the kPlace events): the territory the
  // fugitive held when the searcher landed.
  std::vector<std::vector<int>> territory;
  // occupation[v]: longest number of steps a searcher stayed on v, over branches.
  std::vector<int> occupation;
  int max_occupation = 0;
  bool monotone = true;  // no removed searcher ever neighbours the territory again
};

// Places a searcher on the topmost layout vertex of the fugitive's territory.
SearchTrace strategy_from_layout(const Graph& g, const TreeLayout& t);

// Replays the trace; each placement becomes the child of the previous
// placement on its branch. Throws Error(kPrecondition) when the trace is not
// monotone, does not win, places outside the territory, or keeps a searcher
// longer than occupation_bound steps.
TreeLayout layout_from_strategy(const Graph& g, const SearchTrace& trace, int occupation_bound);

// "<step> place v" / "<step> remove v" lines.
std::string serialize_trace(const SearchTrace& trace);
SearchTrace parse_trace(std::string_view text);

}  // namespace treeband
