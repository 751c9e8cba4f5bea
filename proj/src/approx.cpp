#include "treeband/approx.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "treeband/conditions.hpp"
#include "treeband/error.hpp"
#include "treeband/fold.hpp"
#include "treeband/obstructions.hpp"

namespace treeband {

namespace {

std::vector<int> closed_neighbourhood(const Graph& g, int v) {
  std::vector<int> u = g.neighbours(v);
  u.push_back(v);
  std::sort(u.begin(), u.end());
  return u;
}

bool connected_within(const Graph& g, const std::vector<int>& set) {
  if (set.empty()) return false;
  std::vector<char> in(g.n(), 0), seen(g.n(), 0);
  for (int v : set) in[v] = 1;
  std::vector<int> stack{set[0]};
  seen[set[0]] = 1;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : g.neighbours(v))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return count == static_cast<int>(set.size());
}

// Path bound from the section argument: f(1) = q, f(s+1) = f(s)·2q(s+1),
// q = 2^t, evaluated at s = t and saturated.
long long path_count_threshold(int t) {
  const long long cap = INT_MAX;
  if (t >= 30) return cap;
  long long q = 1LL << t;
  long long f = q;
  for (int s = 1; s < t && f < cap; ++s) {
    long long step = 2 * q * (s + 1);
    f = f > cap / step ? cap : f * step;
  }
  return std::min(f, cap);
}

std::string sets_text(const std::vector<std::vector<int>>& sets) {
  std::string s;
  for (const auto& b : sets) {
    s += "{";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    s += "}";
  }
  return s;
}

}  // namespace

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "none";
    case RejectReason::kTreewidth: return "treewidth";
    case RejectReason::kFan: return "fan";
    case RejectReason::kNeighbourhoodDepth: return "neighbourhood-treedepth";
    case RejectReason::kDipole: return "dipole";
  }
  return "unknown";
}

TreewidthWitness minor_degree_witness(const Graph& g) {
  const int n = g.n();
  TreewidthWitness w;
  std::vector<std::set<int>> adj(n);
  std::vector<std::vector<int>> sets(n);
  std::vector<char> alive(n, 1);
  for (int v = 0; v < n; ++v) {
    adj[v].insert(g.neighbours(v).begin(), g.neighbours(v).end());
    sets[v] = {v};
  }
  for (int left = n; left > 0; --left) {
    int v = -1;
    for (int x = 0; x < n; ++x)
      if (alive[x] && (v < 0 || adj[x].size() < adj[v].size())) v = x;
    const int degree = static_cast<int>(adj[v].size());
    if (degree > w.lower_bound) {
      w.lower_bound = degree;
      w.branch_sets.clear();
      for (int x = 0; x < n; ++x)
        if (alive[x]) w.branch_sets.push_back(sets[x]);
    }
    if (degree == 0) {
      alive[v] = 0;
      continue;
    }
    // Contract v into the neighbour sharing the fewest neighbours with it.
    int into = -1;
    std::size_t best_common = 0;
    for (int u : adj[v]) {
      std::size_t common = 0;
      for (int x : adj[u]) common += adj[v].count(x);
      if (into < 0 || common < best_common) {
        into = u;
        best_common = common;
      }
    }
    for (int x : adj[v]) {
      adj[x].erase(v);
      if (x != into) {
        adj[x].insert(into);
        adj[into].insert(x);
      }
    }
    adj[v].clear();
    sets[into].insert(sets[into].end(), sets[v].begin(), sets[v].end());
    std::sort(sets[into].begin(), sets[into].end());
    alive[v] = 0;
  }
  return w;
}

bool verify_treewidth_witness(const Graph& g, const TreewidthWitness& w, int k) {
  if (w.branch_sets.empty()) {
    if (!w.exact) return false;
    try {
      auto p = lean_provider(g);
      return p.exact_width && p.width > k;
    } catch (const Error&) {
      return false;
    }
  }
  const int n = g.n();
  std::vector<int> owner(n, -1);
  const int sets = static_cast<int>(w.branch_sets.size());
  for (int i = 0; i < sets; ++i) {
    for (int v : w.branch_sets[i]) {
      if (v < 0 || v >= n || owner[v] >= 0) return false;
      owner[v] = i;
    }
    if (!connected_within(g, w.branch_sets[i])) return false;
  }
  std::vector<std::set<int>> minor(sets);
  for (auto [a, b] : g.edges())
    if (owner[a] >= 0 && owner[b] >= 0 && owner[a] != owner[b]) {
      minor[owner[a]].insert(owner[b]);
      minor[owner[b]].insert(owner[a]);
    }
  for (const auto& nb : minor)
    if (static_cast<int>(nb.size()) <= k) return false;
  return sets > 0;
}

int fan_witness_length(int k) { return k >= 30 ? INT_MAX : (k + 1) << k; }

bool verify_fan_witness(const Graph& g, const FanWitness& w, int k) {
  if (w.centre < 0 || w.centre >= g.n()) return false;
  if (static_cast<long long>(w.branch_sets.size()) < fan_witness_length(k)) return false;
  std::vector<int> old_ids;
  Graph h = g.remove_vertex(w.centre, &old_ids);
  std::vector<int> local(g.n(), -1);
  for (int i = 0; i < static_cast<int>(old_ids.size()); ++i) local[old_ids[i]] = i;
  std::vector<int> roots;
  for (int x : g.neighbours(w.centre)) roots.push_back(local[x]);
  std::vector<std::vector<int>> sets;
  for (const auto& b : w.branch_sets) {
    std::vector<int> s;
    for (int v : b) {
      if (v < 0 || v >= g.n() || local[v] < 0) return false;
      s.push_back(local[v]);
    }
    sets.push_back(s);
  }
  return check_rooted_path_model(h, roots, sets);
}

bool verify_neighbourhood_depth_witness(const Graph& g, const NeighbourhoodDepthWitness& w, int k) {
  if (w.centre < 0 || w.centre >= g.n()) return false;
  try {
    int td = rooted_treedepth(g, closed_neighbourhood(g, w.centre)).value;
    return td == w.treedepth && td > 2 * k + 1;
  } catch (const Error&) {
    return false;
  }
}

int dipole_threshold(int k) { return std::max(k + 1, k * k - k + 1); }

bool verify_dipole_witness(const Graph& g, const DipoleWitness& w, int k) {
  const int n = g.n();
  if (w.u < 0 || w.v < 0 || w.u >= n || w.v >= n || w.u == w.v) return false;
  if (static_cast<int>(w.paths.size()) <= dipole_threshold(k)) return false;
  std::vector<char> used(n, 0);
  int direct = 0;
  for (const auto& p : w.paths) {
    if (p.size() < 2 || p.front() != w.u || p.back() != w.v) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i + 1] < 0 || p[i + 1] >= n || !g.adjacent(p[i], p[i + 1])) return false;
    if (p.size() == 2 && ++direct > 1) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      if (p[i] == w.u || p[i] == w.v || used[p[i]]) return false;
      used[p[i]] = 1;
    }
  }
  return true;
}

TbwApproxResult approximate_treebandwidth(const Graph& g, int k, const ApproxOptions& opt) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be nonnegative");
  TbwApproxResult res;
  auto prov = lean_provider(g, opt.provider);
  res.provider_width = prov.width;
  res.provider_exact = prov.exact_width;
  if (prov.width > k) {
    // tbw >= tw: an exact width above k settles it.
    auto w = minor_degree_witness(g);
    if (w.lower_bound > k || prov.exact_width) {
      if (w.lower_bound <= k) {
        w.branch_sets.clear();
        w.lower_bound = prov.width;
      }
      w.exact = prov.exact_width;
      res.reason = RejectReason::kTreewidth;
      res.treewidth_witness = w;
      res.witness_text = "treewidth " + std::string(w.branch_sets.empty() ? "(exact) " : "(minor) ") +
                         "at least " + std::to_string(w.lower_bound) + " > " + std::to_string(k);
      return res;
    }
  }
  auto d = enforce_wellformed(g, prov.decomposition);

  // Neighbourhood condition: td(G, N[v]) <= 2k+1 whenever tbw <= k.
  const int path_length = fan_witness_length(k);
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) >= path_length) {
      // A rooted path lives in one component of G - v holding enough roots.
      std::vector<int> old_ids;
      Graph h = g.remove_vertex(v, &old_ids);
      std::vector<int> local(g.n(), -1);
      for (int i = 0; i < static_cast<int>(old_ids.size()); ++i) local[old_ids[i]] = i;
      std::vector<char> is_root(h.n(), 0);
      for (int x : g.neighbours(v)) is_root[local[x]] = 1;
      for (const auto& comp : connected_components(h)) {
        int roots_here = 0;
        for (int x : comp) roots_here += is_root[x];
        if (roots_here < path_length) continue;
        Graph part = h.induced(comp);
        std::vector<int> roots;
        for (int i = 0; i < static_cast<int>(comp.size()); ++i)
          if (is_root[comp[i]]) roots.push_back(i);
        try {
          auto m = rooted_path_minor(part, roots, path_length, opt.minor_search_states);
          if (!m.found) continue;
          FanWitness fw{v, {}};
          for (const auto& b : m.branch_sets) {
            std::vector<int> s;
            for (int x : b) s.push_back(old_ids[comp[x]]);
            std::sort(s.begin(), s.end());
            fw.branch_sets.push_back(s);
          }
          if (verify_fan_witness(g, fw, k)) {
            res.reason = RejectReason::kFan;
            res.fan_witness = fw;
            res.witness_text = "N(" + std::to_string(v) + ")-rooted path minor with " +
                               std::to_string(fw.branch_sets.size()) + " branch sets: " + sets_text(fw.branch_sets);
            return res;
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kBudgetExceeded && e.kind() != ErrorKind::kSizeLimit) throw;
          ++res.unchecked_centres;
        }
      }
    }
    if (g.degree(v) > 2 * k) {  // td(G, N[v]) <= |N[v]| - 1 otherwise
      try {
        auto td = rooted_treedepth(g, closed_neighbourhood(g, v), opt.treedepth_component_limit);
        if (td.value > 2 * k + 1) {
          res.reason = RejectReason::kNeighbourhoodDepth;
          res.depth_witness = {v, td.value};
          res.witness_text = "td(G, N[" + std::to_string(v) + "]) = " + std::to_string(td.value) + " > " +
                             std::to_string(2 * k + 1);
          return res;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kSizeLimit) throw;
        ++res.unchecked_centres;
      }
    }
  }

  res.threshold_a = k + 1;
  res.threshold_b = k;
  res.threshold_c = path_count_threshold(2 * k + 1);
  auto measured = check_fan_conditions(g, d, INT_MAX, INT_MAX, INT_MAX);
  res.measured_a = std::max(1, measured.max_adhesion);
  res.measured_b = measured.max_torso_degree;
  res.measured_c = measured.max_path_count;
  res.relaxed = res.measured_a > res.threshold_a || res.measured_b > res.threshold_b ||
                res.measured_c > res.threshold_c;

  auto folded = fold_fan(g, d, res.measured_a, res.measured_b, res.measured_c);
  res.folded = std::move(folded.decomposition);
  res.fold_diameter = max_vertex_subtree_diameter(g.n(), res.folded);
  res.fold_diameter_bound = fan_fold_diameter_bound(res.measured_a, res.measured_c);
  res.layout = collapse_to_layout(g, res.folded);
  auto check = validate_layout(g, res.layout);
  if (!check.ok) throw Error(ErrorKind::kInvalidStructure, "collapsed layout is invalid");
  res.bandwidth = bandwidth_of_layout(g, res.layout);
  res.accepted = true;
  return res;
}

OtwResult overlap_treewidth_pipeline(const Graph& g, int k, const ApproxOptions& opt) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be nonnegative");
  OtwResult res;
  auto prov = lean_provider(g, opt.provider);
  res.provider_width = prov.width;
  res.provider_exact = prov.exact_width;
  if (prov.width > k) {
    auto w = minor_degree_witness(g);
    if (w.lower_bound > k || prov.exact_width) {
      if (w.lower_bound <= k) {
        w.branch_sets.clear();
        w.lower_bound = prov.width;
      }
      w.exact = prov.exact_width;
      res.reason = RejectReason::kTreewidth;
      res.treewidth_witness = w;
      res.witness_text = "treewidth at least " + std::to_string(w.lower_bound) + " > " + std::to_string(k);
      return res;
    }
  }
  auto d = enforce_wellformed(g, prov.decomposition);
  res.threshold_a = k + 1;
  res.threshold_c = dipole_threshold(k) + 2;
  res.threshold_b = 2 * res.threshold_c;
  auto check = check_dipole_conditions(g, d, res.threshold_a, res.threshold_b, res.threshold_c);
  if (!check.ok) {
    auto dn = dipole_number(g);
    if (dn.value > dipole_threshold(k)) {
      DipoleWitness w{dn.u, dn.v, dn.paths};
      if (verify_dipole_witness(g, w, k)) {
        res.reason = RejectReason::kDipole;
        res.dipole_witness = w;
        res.witness_text = std::to_string(dn.value) + " internally disjoint paths between " + std::to_string(dn.u) +
                           " and " + std::to_string(dn.v) + " > " + std::to_string(dipole_threshold(k));
        return res;
      }
    }
    res.relaxed = true;
  }
  auto measured = check_dipole_conditions(g, d, INT_MAX, INT_MAX, INT_MAX);
  res.measured_a = std::max(1, measured.max_adhesion);
  for (int w : measured.heavy_threshold_weights) res.measured_b = std::max(res.measured_b, w);
  res.measured_c = measured.max_pair_bags;
  auto folded = fold_dipole(g, d, res.measured_a, res.measured_b, res.measured_c);
  res.decomposition = std::move(folded.decomposition);
  res.width = res.decomposition.width();
  res.overlap = overlap_number(res.decomposition);
  res.overlap_bound = dipole_fold_overlap_bound(res.measured_a, res.measured_b, res.measured_c);
  res.accepted = true;
  return res;
}

}  // namespace treeband
