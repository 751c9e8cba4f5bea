#include "treeband/searchgame.hpp"

#include <algorithm>
#include <sstream>

#include "treeband/error.hpp"

namespace treeband {

namespace {

using Kind = SearchEvent::Kind;

// Components of g restricted to `within`, ordered by minimum vertex.
std::vector<std::vector<int>> parts_within(const Graph& g, const std::vector<char>& within) {
  std::vector<char> seen(g.n(), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n(); ++s) {
    if (!within[s] || seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : g.neighbours(comp[i]))
        if (within[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

struct Simulator {
  const Graph& g;
  const std::vector<int>& depth;
  SearchTrace trace;
  std::vector<int> placed_step;  // per vertex, -1 when no searcher
  std::vector<int> on_board;     // vertices with a searcher, in placement order
  std::vector<char> cleared;     // searcher removed on this branch

  Simulator(const Graph& graph, const std::vector<int>& d)
      : g(graph), depth(d), placed_step(graph.n(), -1), cleared(graph.n(), 0) {
    trace.occupation.assign(graph.n(), 0);
  }

  bool touches(int x, const std::vector<int>& territory) const {
    for (int w : g.neighbours(x))
      if (std::binary_search(territory.begin(), territory.end(), w)) return true;
    return false;
  }

  // Fugitive has just committed to `territory`; step = placements so far.
  void branch(const std::vector<int>& territory, int step) {
    std::vector<int> removed;
    for (int x : on_board)
      if (!touches(x, territory)) removed.push_back(x);
    for (int x : removed) {
      trace.events.push_back({Kind::kRemove, x, step});
      trace.occupation[x] = std::max(trace.occupation[x], step - placed_step[x] + 1);
      on_board.erase(std::find(on_board.begin(), on_board.end(), x));
      cleared[x] = 1;
    }
    for (int x = 0; x < g.n(); ++x)
      if (cleared[x] && touches(x, territory)) trace.monotone = false;
    // Topmost vertex of the territory in the layout.
    int v = territory[0];
    for (int x : territory)
      if (depth[x] < depth[v]) v = x;
    trace.events.push_back({Kind::kPlace, v, step + 1});
    trace.territory.push_back(territory);
    placed_step[v] = step + 1;
    on_board.push_back(v);
    std::vector<char> rest(g.n(), 0);
    for (int x : territory)
      if (x != v) rest[x] = 1;
    auto parts = parts_within(g, rest);
    if (parts.empty()) {
      // Fugitive caught; the remaining searchers are lifted after this step.
      for (int x : on_board) trace.occupation[x] = std::max(trace.occupation[x], step + 1 - placed_step[x] + 1);
    }
    for (const auto& part : parts) {
      auto saved_board = on_board;
      auto saved_cleared = cleared;
      branch(part, step + 1);
      on_board = std::move(saved_board);
      cleared = std::move(saved_cleared);
    }
    on_board.erase(std::find(on_board.begin(), on_board.end(), v));
    placed_step[v] = -1;
  }
};

}  // namespace

SearchTrace strategy_from_layout(const Graph& g, const TreeLayout& t) {
  if (!validate_layout(g, t).ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  auto depth = layout_depths(t);
  Simulator sim(g, depth);
  std::vector<char> all(g.n(), 1);
  for (const auto& part : parts_within(g, all)) sim.branch(part, 0);
  for (int x : sim.trace.occupation) sim.trace.max_occupation = std::max(sim.trace.max_occupation, x);
  return sim.trace;
}

namespace {

struct Replayer {
  const Graph& g;
  const SearchTrace& trace;
  int bound;
  std::size_t next = 0;
  std::vector<int> parent;
  std::vector<int> placed_step;
  std::vector<int> on_board;
  std::vector<char> cleared;

  Replayer(const Graph& graph, const SearchTrace& tr, int b)
      : g(graph), trace(tr), bound(b), parent(graph.n(), -2), placed_step(graph.n(), -1), cleared(graph.n(), 0) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::kPrecondition, "strategy rejected: " + why);
  }

  bool touches(int x, const std::vector<int>& territory) const {
    for (int w : g.neighbours(x))
      if (std::binary_search(territory.begin(), territory.end(), w)) return true;
    return false;
  }

  void lift(int x, int step) {
    if (step - placed_step[x] + 1 > bound)
      fail("searcher on " + std::to_string(x) + " stays longer than " + std::to_string(bound) + " steps");
  }

  void branch(const std::vector<int>& territory, int step, int above) {
    while (next < trace.events.size() && trace.events[next].kind == Kind::kRemove) {
      const auto& e = trace.events[next++];
      auto it = std::find(on_board.begin(), on_board.end(), e.vertex);
      if (it == on_board.end()) fail("removing vertex " + std::to_string(e.vertex) + " without a searcher");
      if (touches(e.vertex, territory)) fail("removing " + std::to_string(e.vertex) + " lets the fugitive escape");
      lift(e.vertex, step);
      on_board.erase(it);
      cleared[e.vertex] = 1;
    }
    // Searchers that stay without need still count towards occupation.
    for (int x = 0; x < g.n(); ++x)
      if (cleared[x] && touches(x, territory)) fail("strategy is not monotone at vertex " + std::to_string(x));
    if (next >= trace.events.size()) fail("trace ends while the fugitive is free");
    const auto& e = trace.events[next++];
    int v = e.vertex;
    if (v < 0 || v >= g.n() || !std::binary_search(territory.begin(), territory.end(), v))
      fail("placement on " + std::to_string(v) + " outside the territory");
    if (parent[v] != -2) fail("vertex " + std::to_string(v) + " placed twice");
    parent[v] = above;
    placed_step[v] = step + 1;
    on_board.push_back(v);
    for (int x : on_board) lift(x, step + 1);
    std::vector<char> rest(g.n(), 0);
    for (int x : territory)
      if (x != v) rest[x] = 1;
    for (const auto& part : parts_within(g, rest)) {
      auto saved_board = on_board;
      auto saved_cleared = cleared;
      branch(part, step + 1, v);
      on_board = std::move(saved_board);
      cleared = std::move(saved_cleared);
    }
    on_board.erase(std::find(on_board.begin(), on_board.end(), v));
  }
};

}  // namespace

TreeLayout layout_from_strategy(const Graph& g, const SearchTrace& trace, int occupation_bound) {
  Replayer rp(g, trace, occupation_bound);
  std::vector<char> all(g.n(), 1);
  auto parts = parts_within(g, all);
  // Component roots are chained one below the other; no edges run between
  // components, so this adds nothing to the bandwidth.
  int above = -1;
  for (const auto& part : parts) {
    int first_event = static_cast<int>(rp.next);
    rp.branch(part, 0, above);
    int root = -1;
    for (std::size_t i = first_event; i < rp.next; ++i)
      if (trace.events[i].kind == Kind::kPlace) {
        root = trace.events[i].vertex;
        break;
      }
    // Deepest vertex of this component's layout becomes the hook for the next.
    above = root;
    int deepest = root, best = 0;
    for (int x : part) {
      int d = 0;
      for (int y = x; y != root; y = rp.parent[y]) ++d;
      if (d > best) {
        best = d;
        deepest = x;
      }
    }
    above = deepest;
  }
  if (rp.next != trace.events.size()) throw Error(ErrorKind::kPrecondition, "strategy rejected: trailing events");
  TreeLayout t;
  t.parent = rp.parent;
  for (int v = 0; v < g.n(); ++v)
    if (t.parent[v] == -1) t.root = v;
  return t;
}

std::string serialize_trace(const SearchTrace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.events)
    out << e.step << (e.kind == Kind::kPlace ? " place " : " remove ") << e.vertex << '\n';
  return out.str();
}

SearchTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  SearchTrace trace;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    SearchEvent e;
    std::string word, extra;
    if (!(ls >> e.step >> word >> e.vertex) || (ls >> extra) || (word != "place" && word != "remove"))
      throw Error(ErrorKind::kParse, "trace line " + std::to_string(lineno) + ": expected '<step> place|remove v'");
    e.kind = word == "place" ? Kind::kPlace : Kind::kRemove;
    trace.events.push_back(e);
  }
  return trace;
}

}  // namespace treeband
