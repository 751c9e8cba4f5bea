#include "treeband/solver.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "treeband/decomp.hpp"
#include "treeband/error.hpp"

namespace treeband {

namespace {

// A configuration is a component C of G minus the placed vertices together
// with the last <= k placed vertices on the current root path (oldest first).
// Placing u in C pushes u; once the window is longer than k its oldest vertex
// w leaves. Everything placed later lands at least k+1 levels below w, so w
// must have no neighbour left in C - u. Neighbours of C among placed vertices
// are always inside the window, by the same check applied earlier.
struct ConfigurationSearch {
  const Graph& g;
  int k;
  std::int64_t budget;
  std::unordered_map<std::string, int> memo;  // -1 = no, else the vertex placed

  static std::string key(Mask c, const std::vector<int>& window) {
    std::string s(reinterpret_cast<const char*>(&c), sizeof(c));
    for (int w : window) s.push_back(static_cast<char>(w));
    return s;
  }

  bool advance(Mask c, int u, std::vector<int>& window) const {
    window.push_back(u);
    Mask rest = c & ~bit(u);
    while (static_cast<int>(window.size()) > k) {
      if (g.nbr_mask(window.front()) & rest) return false;
      window.erase(window.begin());
    }
    return true;
  }

  bool solve(Mask c, const std::vector<int>& window) {
    auto id = key(c, window);
    auto it = memo.find(id);
    if (it != memo.end()) return it->second >= 0;
    if (static_cast<std::int64_t>(memo.size()) >= budget)
      throw Error(ErrorKind::kBudgetExceeded, "configuration budget exceeded");
    int answer = -1;
    for (Mask m = c; m && answer < 0; m &= m - 1) {
      int u = lowest(m);
      std::vector<int> next = window;
      if (!advance(c, u, next)) continue;
      bool all = true;
      for (Mask part : components_within(g, c & ~bit(u)))
        if (!solve(part, next)) {
          all = false;
          break;
        }
      if (all) answer = u;
    }
    memo[id] = answer;
    return answer >= 0;
  }

  void replay(Mask c, const std::vector<int>& window, int above, std::vector<int>& parent) const {
    int u = memo.at(key(c, window));
    parent[u] = above;
    std::vector<int> next = window;
    advance(c, u, next);
    for (Mask part : components_within(g, c & ~bit(u))) replay(part, next, u, parent);
  }
};

}  // namespace

Decision decide_treebandwidth(const Graph& g, int k, std::int64_t max_states) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be nonnegative");
  if (!g.fits_mask()) throw Error(ErrorKind::kSizeLimit, "configuration search needs n <= 64");
  ConfigurationSearch s{g, k, max_states, {}};
  Decision d;
  auto comps = components_within(g, g.all_mask());
  for (Mask c : comps)
    if (!s.solve(c, {})) {
      d.states = static_cast<std::int64_t>(s.memo.size());
      return d;
    }
  d.yes = true;
  d.layout.parent.assign(g.n(), -1);
  // Components have no edges between them; later ones hang below the first root.
  int root = -1;
  for (Mask c : comps) {
    s.replay(c, {}, root, d.layout.parent);
    if (root == -1) root = s.memo.at(ConfigurationSearch::key(c, {}));
  }
  d.layout.root = root;
  d.states = static_cast<std::int64_t>(s.memo.size());
  if (!validate_layout(g, d.layout).ok || bandwidth_of_layout(g, d.layout) > k)
    throw Error(ErrorKind::kInvalidStructure, "configuration search produced a bad layout");
  return d;
}

ExactTbw exact_treebandwidth(const Graph& g, std::int64_t max_states) {
  int k = g.m() > 0 ? 1 : 0;
  if (g.n() <= 20) k = std::max(k, exact_treewidth(g));
  ExactTbw res;
  for (;; ++k) {
    auto d = decide_treebandwidth(g, k, max_states);
    res.states += d.states;
    if (d.yes) {
      res.value = k;
      res.layout = d.layout;
      return res;
    }
  }
}

}  // namespace treeband
