#include "treeband/obstructions.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "treeband/error.hpp"

namespace treeband {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Mask, Mask>& p) const {
    return std::hash<Mask>()(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
  }
};

// Vertices reachable from `from` through `free` (the start set included).
Mask reach(const Graph& g, Mask from, Mask free) {
  Mask seen = from, frontier = from;
  while (frontier) {
    Mask next = 0;
    for (Mask m = frontier; m; m &= m - 1) next |= g.nbr_mask(lowest(m));
    next &= free & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

struct PathMinorSearch {
  const Graph& g;
  Mask u;
  int k;
  std::int64_t budget;
  std::int64_t states = 0;
  std::vector<std::unordered_set<std::pair<Mask, Mask>, PairHash>> dead;  // per branch-set index
  std::vector<Mask> sets;  // closed branch sets

  PathMinorSearch(const Graph& graph, Mask u_mask, int kk, std::int64_t b)
      : g(graph), u(u_mask), k(kk), budget(b), dead(kk + 1) {}

  Mask nbrs(Mask s) const {
    Mask out = 0;
    for (Mask m = s; m; m &= m - 1) out |= g.nbr_mask(lowest(m));
    return out & ~s;
  }

  // `used` holds the closed sets and the open set `cur`, which is set i.
  bool extend(Mask used, Mask cur, int i) {
    bool rooted = cur & u;
    if (rooted && i == k) {
      sets.push_back(cur);
      return true;
    }
    if (dead[i].count({used, cur})) return false;
    if (++states > budget) throw Error(ErrorKind::kBudgetExceeded, "rooted path minor search budget exceeded");
    Mask free = g.all_mask() & ~used;
    Mask around = nbrs(cur) & free;
    // Enough roots must stay reachable for the remaining sets.
    int need = k - i + (rooted ? 0 : 1);
    if (popcount(reach(g, cur, free | cur) & u & ~(rooted ? cur : Mask{0})) < need) {
      dead[i].insert({used, cur});
      return false;
    }
    if (rooted) {
      // Close the set and open the next one, roots first.
      for (int pass = 0; pass < 2; ++pass)
        for (Mask m = around & (pass == 0 ? u : ~u); m; m &= m - 1) {
          int w = lowest(m);
          sets.push_back(cur);
          if (extend(used | bit(w), bit(w), i + 1)) return true;
          sets.pop_back();
        }
    }
    for (int pass = 0; pass < 2; ++pass)
      for (Mask m = around & (pass == 0 ? u : ~u); m; m &= m - 1) {
        int w = lowest(m);
        if (extend(used | bit(w), cur | bit(w), i)) return true;
      }
    dead[i].insert({used, cur});
    return false;
  }
};

}  // namespace

RootedPathMinor rooted_path_minor(const Graph& g, const std::vector<int>& u_set, int k,
                                  std::int64_t max_states) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "path length must be at least 1");
  if (!g.fits_mask()) throw Error(ErrorKind::kSizeLimit, "rooted path minor search needs n <= 64");
  Mask u = vector_to_mask(u_set);
  RootedPathMinor res;
  if (popcount(u) < k) return res;
  PathMinorSearch s(g, u, k, max_states);
  // Branch set 1 can start at one of its roots.
  for (Mask m = u; m; m &= m - 1) {
    int v = lowest(m);
    s.sets.clear();
    if (s.extend(bit(v), bit(v), 1)) {
      res.found = true;
      for (Mask b : s.sets) res.branch_sets.push_back(mask_to_vector(b));
      break;
    }
  }
  res.states = s.states;
  if (res.found && !check_rooted_path_model(g, u_set, res.branch_sets))
    throw Error(ErrorKind::kInvalidStructure, "rooted path minor model failed verification");
  return res;
}

bool check_rooted_path_model(const Graph& g, const std::vector<int>& u_set,
                             const std::vector<std::vector<int>>& branch_sets) {
  Mask u = vector_to_mask(u_set), used = 0;
  Mask prev = 0;
  for (const auto& b : branch_sets) {
    Mask s = vector_to_mask(b);
    if (!s || (s & used) || !(s & u)) return false;
    if (reach(g, bit(lowest(s)), s) != s) return false;
    if (prev) {
      Mask around = 0;
      for (Mask m = prev; m; m &= m - 1) around |= g.nbr_mask(lowest(m));
      if (!(around & s)) return false;
    }
    used |= s;
    prev = s;
  }
  return true;
}

namespace {

struct TreedepthSearch {
  const Graph& g;
  Mask u;
  int limit;
  std::unordered_map<Mask, std::pair<int, int>> memo;  // component -> (value, chosen vertex)

  int solve(Mask comp) {
    if (!(comp & u)) return 0;
    if (popcount(comp) > limit)
      throw Error(ErrorKind::kSizeLimit, "rooted treedepth component exceeds " + std::to_string(limit) + " vertices");
    auto it = memo.find(comp);
    if (it != memo.end()) return it->second.first;
    int best = popcount(comp) + 1, choice = -1;
    // A rooted component needs at least 1; a lone root needs exactly 1.
    for (Mask m = comp; m; m &= m - 1) {
      int v = lowest(m);
      int worst = 0;
      for (Mask part : components_within(g, comp & ~bit(v))) {
        worst = std::max(worst, solve(part));
        if (worst + 1 >= best) break;
      }
      if (worst + 1 < best) {
        best = worst + 1;
        choice = v;
        if (best == 1) break;
      }
    }
    memo[comp] = {best, choice};
    return best;
  }

  void build(Mask comp, int above, EliminationForest& f) {
    if (!(comp & u)) return;
    int v = memo.at(comp).second;
    f.in_forest[v] = 1;
    f.parent[v] = above;
    for (Mask part : components_within(g, comp & ~bit(v))) build(part, v, f);
  }
};

}  // namespace

RootedTreedepth rooted_treedepth(const Graph& g, const std::vector<int>& u_set, int max_component) {
  if (!g.fits_mask()) throw Error(ErrorKind::kSizeLimit, "rooted treedepth needs n <= 64");
  TreedepthSearch s{g, vector_to_mask(u_set), max_component, {}};
  RootedTreedepth res;
  res.forest.parent.assign(g.n(), -1);
  res.forest.in_forest.assign(g.n(), 0);
  for (Mask comp : components_within(g, g.all_mask())) {
    res.value = std::max(res.value, s.solve(comp));
    s.build(comp, -1, res.forest);
  }
  res.forest.height = res.value;
  return res;
}

std::string elimination_forest_problem(const Graph& g, const std::vector<int>& u_set,
                                       const EliminationForest& f) {
  const int n = g.n();
  if (static_cast<int>(f.parent.size()) != n || static_cast<int>(f.in_forest.size()) != n)
    return "forest size does not match the graph";
  std::vector<int> depth(n, 0);
  int height = 0;
  for (int v = 0; v < n; ++v) {
    if (!f.in_forest[v]) continue;
    int d = 0;
    for (int x = v; x != -1; x = f.parent[x]) {
      if (!f.in_forest[x] || ++d > n) return "parent chain of " + std::to_string(v) + " is broken";
    }
    depth[v] = d;
    height = std::max(height, d);
  }
  if (height != f.height) return "height is " + std::to_string(height) + ", claimed " + std::to_string(f.height);
  for (int x : u_set)
    if (!f.in_forest[x]) return "root vertex " + std::to_string(x) + " missing from the forest";
  auto is_anc = [&](int a, int b) {
    for (int x = b; x != -1; x = f.parent[x])
      if (x == a) return true;
    return false;
  };
  for (auto [a, b] : g.edges())
    if (f.in_forest[a] && f.in_forest[b] && !is_anc(a, b) && !is_anc(b, a))
      return "edge {" + std::to_string(a) + "," + std::to_string(b) + "} joins incomparable vertices";
  // Each leftover component must attach to a single root-leaf path.
  std::vector<char> rest(n, 0);
  for (int v = 0; v < n; ++v) rest[v] = !f.in_forest[v];
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (!rest[s] || seen[s]) continue;
    std::vector<int> comp{s}, attach;
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : g.neighbours(comp[i])) {
        if (rest[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        } else if (!rest[w]) {
          attach.push_back(w);
        }
      }
    for (int a : attach)
      for (int b : attach)
        if (!is_anc(a, b) && !is_anc(b, a))
          return "component of " + std::to_string(s) + " touches two branches";
  }
  return "";
}

FanNumber fan_number(const Graph& g, std::int64_t max_states) {
  FanNumber best;
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 0) continue;
    std::vector<int> old_ids;
    Graph h = g.remove_vertex(v, &old_ids);
    std::vector<int> roots;
    for (int i = 0; i < h.n(); ++i)
      if (g.adjacent(v, old_ids[i])) roots.push_back(i);
    // Only lengths beyond the current best matter; grow while found.
    for (int k = std::max(best.value + 1, 1); k <= static_cast<int>(roots.size()); ++k) {
      auto r = rooted_path_minor(h, roots, k, max_states);
      if (!r.found) break;
      best.value = k;
      best.centre = v;
      best.branch_sets.clear();
      for (auto& b : r.branch_sets) {
        for (int& x : b) x = old_ids[x];
        best.branch_sets.push_back(b);
      }
    }
  }
  return best;
}

namespace {

DipoleNumber best_pair(const std::vector<DipoleNumber>& per_u) {
  DipoleNumber best;
  for (const auto& d : per_u)
    if (d.value > best.value) best = d;
  return best;
}

DipoleNumber from_vertex(const Graph& g, int u) {
  DipoleNumber best;
  for (int v = u + 1; v < g.n(); ++v) {
    // The number of paths is at most the smaller degree.
    if (std::min(g.degree(u), g.degree(v)) <= best.value) continue;
    auto r = internally_disjoint_paths(g, u, v);
    if (r.value > best.value) best = {r.value, u, v, r.paths};
  }
  return best;
}

}  // namespace

DipoleNumber dipole_number_serial(const Graph& g) {
  if (g.n() < 2) throw Error(ErrorKind::kInvalidArgument, "dipole number needs two vertices");
  std::vector<DipoleNumber> per_u(g.n());
  for (int u = 0; u < g.n(); ++u) per_u[u] = from_vertex(g, u);
  return best_pair(per_u);
}

DipoleNumber dipole_number(const Graph& g) {
  if (g.n() < 2) throw Error(ErrorKind::kInvalidArgument, "dipole number needs two vertices");
  std::vector<DipoleNumber> per_u(g.n());
#pragma omp parallel for schedule(dynamic)
  for (int u = 0; u < g.n(); ++u) per_u[u] = from_vertex(g, u);
  return best_pair(per_u);
}

int neighbourhood_treedepth(const Graph& g, int* argmax) {
  int best = 0, at = -1;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> closed{v};
    for (int w : g.neighbours(v)) closed.push_back(w);
    int td = rooted_treedepth(g, closed).value;
    if (td > best) {
      best = td;
      at = v;
    }
  }
  if (argmax) *argmax = at;
  return best;
}

}  // namespace treeband
