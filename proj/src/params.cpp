#include "treeband/params.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "treeband/error.hpp"
#include "treeband/obstructions.hpp"

namespace treeband {

const char* parameter_name(Parameter p) {
  switch (p) {
    case Parameter::kTreewidth: return "treewidth";
    case Parameter::kTreedepth: return "treedepth";
    case Parameter::kBandwidth: return "bandwidth";
    case Parameter::kTreebandwidthBrute: return "treebandwidth-bruteforce";
  }
  return "?";
}

std::vector<int> tree_from_prufer(const std::vector<int>& seq, int n, int root) {
  std::vector<int> parent(n, -1);
  if (n == 1) return parent;
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<std::vector<int>> adj(n);
  // Linear-time decoding with a moving pointer to the smallest leaf.
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    adj[leaf].push_back(x);
    adj[x].push_back(leaf);
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  int last = n - 1;
  adj[leaf].push_back(last);
  adj[last].push_back(leaf);
  std::vector<int> stack{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
  }
  return parent;
}

namespace {

constexpr int kSmallLimit = 8;
constexpr int kMediumLimit = 18;

// Bandwidth of a parent array, or INT_MAX when some edge joins incomparable
// vertices. Depths come from walking the parent chain.
int parent_array_bandwidth(const Graph& g, const std::vector<int>& parent, int cutoff) {
  const int n = g.n();
  std::vector<int> depth(n, -1);
  for (int v = 0; v < n; ++v) {
    int d = 0;
    for (int x = v; parent[x] != -1; x = parent[x]) ++d;
    depth[v] = d;
  }
  int worst = 0;
  for (auto [a, b] : g.edges()) {
    int lo = depth[a] > depth[b] ? a : b, hi = lo == a ? b : a;
    int x = lo;
    while (depth[x] > depth[hi]) x = parent[x];
    if (x != hi) return INT_MAX;
    worst = std::max(worst, depth[lo] - depth[hi]);
    if (worst >= cutoff) return worst;
  }
  return worst;
}

// Evaluates every (sequence, root) whose sequence index lies in [lo, hi).
void scan_prufer(const Graph& g, long long lo, long long hi, int& best, std::vector<int>& best_parent) {
  const int n = g.n();
  std::vector<int> seq(std::max(0, n - 2));
  for (long long code = lo; code < hi; ++code) {
    long long c = code;
    for (int i = 0; i < n - 2; ++i) {
      seq[i] = static_cast<int>(c % n);
      c /= n;
    }
    for (int root = 0; root < n; ++root) {
      auto parent = tree_from_prufer(seq, n, root);
      int bw = parent_array_bandwidth(g, parent, best);
      if (bw < best) {
        best = bw;
        best_parent = parent;
      }
    }
  }
}

ExactParameter finish_tbw(const Graph& g, int best, const std::vector<int>& parent) {
  ExactParameter res;
  res.value = best;
  res.layout.parent = parent;
  for (int v = 0; v < g.n(); ++v)
    if (parent[v] == -1) res.layout.root = v;
  return res;
}

long long sequence_count(int n) {
  long long total = 1;
  for (int i = 0; i < n - 2; ++i) total *= n;
  return total;
}

void check_brute_input(const Graph& g) {
  if (g.n() > kSmallLimit) throw Error(ErrorKind::kSizeLimit, "brute-force treebandwidth needs n <= 8");
}

}  // namespace

ExactParameter brute_force_treebandwidth_serial(const Graph& g) {
  check_brute_input(g);
  if (g.n() == 0) return {};
  int best = INT_MAX;
  std::vector<int> parent;
  scan_prufer(g, 0, sequence_count(g.n()), best, parent);
  return finish_tbw(g, best, parent);
}

ExactParameter brute_force_treebandwidth(const Graph& g) {
  check_brute_input(g);
  if (g.n() == 0) return {};
  const long long total = sequence_count(g.n());
  const int chunks = static_cast<int>(std::min<long long>(total, 256));
  std::vector<int> best(chunks, INT_MAX);
  std::vector<std::vector<int>> parent(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c)
    scan_prufer(g, total * c / chunks, total * (c + 1) / chunks, best[c], parent[c]);
  // Lowest chunk among the minima: the same certificate as the serial scan.
  int at = static_cast<int>(std::min_element(best.begin(), best.end()) - best.begin());
  return finish_tbw(g, best[at], parent[at]);
}

namespace {

// Bandwidth by placing vertices left to right with pruning: a placed vertex
// whose unplaced neighbours would land too far away kills the branch.
struct BandwidthSearch {
  const Graph& g;
  int bound;
  std::vector<int> order, pos;

  bool place(int i) {
    const int n = g.n();
    if (i == n) return true;
    for (int v = 0; v < n; ++v) {
      if (pos[v] != -1) continue;
      bool ok = true;
      for (int w : g.neighbours(v))
        if (pos[w] != -1 && i - pos[w] > bound) ok = false;
      // Every placed vertex with unplaced neighbours must still reach them.
      if (ok)
        for (int x : order)
          if (pos[x] + bound < i + 1)
            for (int w : g.neighbours(x))
              if (pos[w] == -1 && w != v) ok = false;
      if (!ok) continue;
      pos[v] = i;
      order.push_back(v);
      if (place(i + 1)) return true;
      order.pop_back();
      pos[v] = -1;
    }
    return false;
  }
};

}  // namespace

ExactParameter exact_parameter(const Graph& g, Parameter which) {
  const int n = g.n();
  ExactParameter res;
  switch (which) {
    case Parameter::kTreewidth: {
      if (n > kMediumLimit) throw Error(ErrorKind::kSizeLimit, "exact treewidth needs n <= 18");
      res.decomposition = exact_tree_decomposition(g, kMediumLimit);
      res.value = std::max(0, res.decomposition.width());
      return res;
    }
    case Parameter::kTreedepth: {
      if (n > kMediumLimit) throw Error(ErrorKind::kSizeLimit, "exact treedepth needs n <= 18");
      std::vector<int> all(n);
      std::iota(all.begin(), all.end(), 0);
      auto td = rooted_treedepth(g, all, kMediumLimit);
      res.value = td.value;
      std::vector<int> roots;
      for (int v = 0; v < n; ++v)
        if (td.forest.parent[v] == -1) roots.push_back(v);
      // Later component roots hang below the first one, so on a disconnected
      // graph the layout is one level taller than the forest it came from.
      res.layout.parent = td.forest.parent;
      res.layout.root = roots.empty() ? -1 : roots[0];
      for (std::size_t i = 1; i < roots.size(); ++i) res.layout.parent[roots[i]] = roots[0];
      return res;
    }
    case Parameter::kBandwidth: {
      if (n > kSmallLimit) throw Error(ErrorKind::kSizeLimit, "exact bandwidth needs n <= 8");
      for (int b = 0;; ++b) {
        BandwidthSearch s{g, b, {}, std::vector<int>(n, -1)};
        if (s.place(0)) {
          res.value = b;
          res.order = s.order;
          return res;
        }
      }
    }
    case Parameter::kTreebandwidthBrute:
      return brute_force_treebandwidth(g);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown parameter");
}

}  // namespace treeband
