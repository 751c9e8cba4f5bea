#include "treeband/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "treeband/error.hpp"

namespace treeband {

void check_layout_structure(int n, const TreeLayout& t) {
  if (t.size() != n)
    throw Error(ErrorKind::kInvalidStructure, "layout covers " + std::to_string(t.size()) +
                                                  " vertices, graph has " + std::to_string(n));
  if (n == 0) {
    if (t.root != -1) throw Error(ErrorKind::kInvalidStructure, "empty layout with a root");
    return;
  }
  if (t.root < 0 || t.root >= n || t.parent[t.root] != -1)
    throw Error(ErrorKind::kInvalidStructure, "layout root missing or has a parent");
  for (int v = 0; v < n; ++v) {
    if (v == t.root) continue;
    if (t.parent[v] < 0 || t.parent[v] >= n || t.parent[v] == v)
      throw Error(ErrorKind::kInvalidStructure, "vertex " + std::to_string(v) + " has bad parent");
  }
  // Every vertex must reach the root; colour 2 = known to reach.
  std::vector<char> state(n, 0);
  state[t.root] = 2;
  for (int v = 0; v < n; ++v) {
    std::vector<int> trail;
    int x = v;
    while (state[x] == 0) {
      state[x] = 1;
      trail.push_back(x);
      x = t.parent[x];
    }
    if (state[x] == 1) throw Error(ErrorKind::kInvalidStructure, "layout parent map has a cycle");
    for (int y : trail) state[y] = 2;
  }
}

std::vector<int> layout_depths(const TreeLayout& t) {
  const int n = t.size();
  std::vector<int> depth(n, -1);
  if (n == 0) return depth;
  depth[t.root] = 0;
  for (int v = 0; v < n; ++v) {
    std::vector<int> trail;
    int x = v;
    while (depth[x] < 0) {
      trail.push_back(x);
      x = t.parent[x];
    }
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) depth[*it] = depth[t.parent[*it]] + 1;
  }
  return depth;
}

std::vector<std::vector<int>> layout_children(const TreeLayout& t) {
  std::vector<std::vector<int>> ch(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0) ch[t.parent[v]].push_back(v);
  return ch;
}

bool layout_is_ancestor(const TreeLayout& t, const std::vector<int>& depth, int a, int b) {
  if (depth[a] > depth[b]) return false;
  while (depth[b] > depth[a]) b = t.parent[b];
  return a == b;
}

LayoutReport validate_layout(const Graph& g, const TreeLayout& t) {
  check_layout_structure(g.n(), t);
  auto depth = layout_depths(t);
  LayoutReport r;
  for (auto [u, v] : g.edges()) {
    bool ok = depth[u] <= depth[v] ? layout_is_ancestor(t, depth, u, v)
                                   : layout_is_ancestor(t, depth, v, u);
    if (!ok) r.violations.emplace_back(u, v);
  }
  r.ok = r.violations.empty();
  return r;
}

int bandwidth_of_layout(const Graph& g, const TreeLayout& t) {
  auto rep = validate_layout(g, t);
  if (!rep.ok)
    throw Error(ErrorKind::kPrecondition,
                "invalid tree-layout: edge (" + std::to_string(rep.violations[0].first) + "," +
                    std::to_string(rep.violations[0].second) + ") joins incomparable vertices");
  auto depth = layout_depths(t);
  int bw = 0;
  for (auto [u, v] : g.edges()) bw = std::max(bw, std::abs(depth[u] - depth[v]));
  return bw;
}

int linear_bandwidth(const Graph& g, const LinearLayout& s) {
  if (static_cast<int>(s.position.size()) != g.n())
    throw Error(ErrorKind::kInvalidStructure, "linear layout size mismatch");
  std::vector<char> used(g.n() + 1, 0);
  for (int p : s.position) {
    if (p < 1 || p > g.n() || used[p])
      throw Error(ErrorKind::kInvalidStructure, "linear layout is not a bijection onto 1..n");
    used[p] = 1;
  }
  int bw = 0;
  for (auto [u, v] : g.edges()) bw = std::max(bw, std::abs(s.position[u] - s.position[v]));
  return bw;
}

TreeLayout path_layout(const std::vector<int>& order) {
  TreeLayout t;
  t.parent.assign(order.size(), -1);
  if (order.empty()) return t;
  t.root = order[0];
  for (std::size_t i = 1; i < order.size(); ++i) t.parent[order[i]] = order[i - 1];
  return t;
}

LinearLayout linear_from_order(const std::vector<int>& order) {
  LinearLayout s;
  s.position.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) s.position[order[i]] = static_cast<int>(i) + 1;
  return s;
}

TreeLayout chain_layouts(int n, const std::vector<std::pair<std::vector<int>, TreeLayout>>& parts) {
  TreeLayout t;
  t.parent.assign(n, -1);
  int prev_root = -1;
  for (const auto& [vs, local] : parts) {
    if (vs.empty()) continue;
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
      t.parent[vs[i]] = local.parent[i] >= 0 ? vs[local.parent[i]] : -1;
    int r = vs[local.root];
    if (prev_root < 0)
      t.root = r;
    else
      t.parent[r] = prev_root;
    prev_root = r;
  }
  return t;
}

int TreePartition::width() const {
  int w = 0;
  for (const auto& p : parts) w = std::max<int>(w, p.size());
  return w;
}

std::string tree_partition_problem(const Graph& g, const TreePartition& tp) {
  const int k = static_cast<int>(tp.parts.size());
  if (g.n() == 0) return k == 0 ? "" : "nonempty partition of empty graph";
  if (k == 0) return "no parts";
  if (static_cast<int>(tp.tree_edges.size()) != k - 1) return "partition tree has wrong edge count";
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : tp.tree_edges) {
    if (a < 0 || b < 0 || a >= k || b >= k || a == b) return "bad partition tree edge";
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(k, 0);
  std::vector<int> st{0};
  seen[0] = 1;
  int reached = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        st.push_back(y);
      }
  }
  if (reached != k) return "partition tree is disconnected";
  std::vector<int> owner(g.n(), -1);
  for (int i = 0; i < k; ++i)
    for (int v : tp.parts[i]) {
      if (v < 0 || v >= g.n()) return "part vertex out of range";
      if (owner[v] >= 0) return "vertex " + std::to_string(v) + " in two parts";
      owner[v] = i;
    }
  for (int v = 0; v < g.n(); ++v)
    if (owner[v] < 0) return "vertex " + std::to_string(v) + " in no part";
  for (auto [u, v] : g.edges()) {
    int a = owner[u], b = owner[v];
    if (a != b && std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end())
      return "edge (" + std::to_string(u) + "," + std::to_string(v) + ") spans non-adjacent parts";
  }
  return "";
}

TreeLayout layout_from_tree_partition(const Graph& g, const TreePartition& tp,
                                      const std::vector<int>& root_prefix) {
  if (auto why = tree_partition_problem(g, tp); !why.empty())
    throw Error(ErrorKind::kPrecondition, "invalid tree-partition: " + why);
  TreeLayout t;
  t.parent.assign(g.n(), -1);
  if (g.n() == 0) return t;
  const int k = static_cast<int>(tp.parts.size());
  std::vector<int> owner(g.n());
  for (int i = 0; i < k; ++i)
    for (int v : tp.parts[i]) owner[v] = i;
  const int root_node = owner[root_prefix.empty() ? 0 : root_prefix[0]];
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : tp.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto ordered = [&](int node) {
    std::vector<int> vs;
    if (node == root_node)
      for (int v : root_prefix)
        if (owner[v] == node && std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    std::vector<int> rest = tp.parts[node];
    std::sort(rest.begin(), rest.end());
    for (int v : rest)
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    return vs;
  };
  // BFS over partition nodes; anchor = last vertex placed for that node.
  std::vector<int> anchor(k, -2);
  std::vector<int> queue{root_node};
  anchor[root_node] = -1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int node = queue[qi];
    int above = anchor[node];
    for (int v : ordered(node)) {
      if (above < 0)
        t.root = v;
      else
        t.parent[v] = above;
      above = v;
    }
    std::sort(adj[node].begin(), adj[node].end());
    for (int nb : adj[node])
      if (anchor[nb] == -2) {
        anchor[nb] = above;
        queue.push_back(nb);
      }
  }
  return t;
}

SubdivisionResult extend_layout_to_subdivision(const Graph& g, const TreeLayout& t, Edge edge,
                                               int times) {
  auto [x, y] = edge;
  if (x < 0 || y < 0 || x >= g.n() || y >= g.n() || !g.adjacent(x, y))
    throw Error(ErrorKind::kInvalidArgument, "edge to subdivide is not in the graph");
  if (times < 1) throw Error(ErrorKind::kInvalidArgument, "subdivision count must be positive");
  auto rep = validate_layout(g, t);
  if (!rep.ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  auto depth = layout_depths(t);
  if (depth[x] > depth[y]) std::swap(x, y);
  const int n = g.n();
  SubdivisionResult res;
  std::vector<Edge> es;
  for (auto e : g.edges())
    if (e != Edge(std::min(x, y), std::max(x, y))) es.push_back(e);
  int prev = x;
  for (int i = 0; i < times; ++i) {
    res.new_vertices.push_back(n + i);
    es.emplace_back(prev, n + i);
    prev = n + i;
  }
  es.emplace_back(prev, y);
  res.graph = Graph::from_edges(n + times, es);
  // Chain below y alternating from both ends of the path: p1, pt, p2, p(t-1), ...
  res.layout = t;
  res.layout.parent.resize(n + times, -1);
  int above = y;
  for (int lo = 0, hi = times - 1, turn = 0; lo <= hi; turn ^= 1) {
    int v = turn == 0 ? res.new_vertices[lo++] : res.new_vertices[hi--];
    res.layout.parent[v] = above;
    above = v;
  }
  // Threading the path in straight above y is sometimes tighter (it is for a
  // single tree edge); keep it only when it strictly wins.
  TreeLayout inline_chain = t;
  inline_chain.parent.resize(n + times, -1);
  above = t.parent[y];
  for (int v : res.new_vertices) {
    inline_chain.parent[v] = above;
    above = v;
  }
  inline_chain.parent[y] = above;
  if (bandwidth_of_layout(res.graph, inline_chain) < bandwidth_of_layout(res.graph, res.layout))
    res.layout = std::move(inline_chain);
  return res;
}

int treespan_of_layout(const Graph& g, const TreeLayout& t) {
  auto rep = validate_layout(g, t);
  if (!rep.ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  auto depth = layout_depths(t);
  std::vector<int> mark(g.n(), -1);
  int best = 0;
  for (int v = 0; v < g.n(); ++v) {
    int size = 1;
    mark[v] = v;
    for (int w : g.neighbours(v)) {
      if (depth[w] <= depth[v]) continue;
      for (int x = w; mark[x] != v; x = t.parent[x]) {
        mark[x] = v;
        ++size;
      }
    }
    best = std::max(best, size - 1);
  }
  return best;
}

EdgeTreewidth edge_treewidth_of_layout(const Graph& g, const TreeLayout& t) {
  auto rep = validate_layout(g, t);
  if (!rep.ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  auto depth = layout_depths(t);
  EdgeTreewidth res;
  res.per_vertex.assign(g.n(), 0);
  // Edge (a above b) crosses the boundary above every vertex on the path
  // from b up to the child of a.
  for (auto [u, v] : g.edges()) {
    int lo = depth[u] > depth[v] ? u : v;
    int hi = lo == u ? v : u;
    for (int x = lo; x != hi; x = t.parent[x]) ++res.per_vertex[x];
  }
  for (int c : res.per_vertex) res.value = std::max(res.value, c);
  return res;
}

namespace {

void bron_kerbosch(const std::vector<std::vector<char>>& adj, std::vector<int>& r,
                   std::vector<int> p, std::vector<int> x, std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    auto c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  int pivot = -1, best = -1;
  for (const auto* set : {&p, &x})
    for (int u : *set) {
      int cnt = 0;
      for (int w : p) cnt += adj[u][w];
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
  std::vector<int> cand;
  for (int v : p)
    if (!adj[pivot][v]) cand.push_back(v);
  for (int v : cand) {
    std::vector<int> np, nx;
    for (int w : p)
      if (adj[v][w]) np.push_back(w);
    for (int w : x)
      if (adj[v][w]) nx.push_back(w);
    r.push_back(v);
    bron_kerbosch(adj, r, np, nx, out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<char>> adj(g.n(), std::vector<char>(g.n(), 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<int> r, p(g.n());
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  if (g.n() > 0) bron_kerbosch(adj, r, p, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

ChordalCompletion proper_chordal_completion(const Graph& g, const TreeLayout& t) {
  auto rep = validate_layout(g, t);
  if (!rep.ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  auto depth = layout_depths(t);
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) {
    int lo = depth[u] > depth[v] ? u : v;
    int hi = lo == u ? v : u;
    std::vector<int> interval;
    for (int x = lo; x != hi; x = t.parent[x]) interval.push_back(x);
    interval.push_back(hi);
    for (std::size_t i = 0; i < interval.size(); ++i)
      for (std::size_t j = i + 1; j < interval.size(); ++j)
        es.emplace_back(std::min(interval[i], interval[j]), std::max(interval[i], interval[j]));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  ChordalCompletion res;
  res.completion = Graph::from_edges(g.n(), es);
  res.maximal_cliques = maximal_cliques(res.completion);
  for (const auto& c : res.maximal_cliques) {
    res.clique_minus_one = std::max<int>(res.clique_minus_one, c.size() - 1);
    // Consecutive: the deepest member's ancestors up to the shallowest are exactly c.
    int lo = c[0], hi = c[0];
    for (int v : c) {
      if (depth[v] > depth[lo]) lo = v;
      if (depth[v] < depth[hi]) hi = v;
    }
    std::vector<int> path;
    int x = lo;
    for (; x != hi && x >= 0; x = t.parent[x]) path.push_back(x);
    if (x != hi) {
      res.cliques_consecutive = false;
      continue;
    }
    path.push_back(hi);
    std::sort(path.begin(), path.end());
    if (path != c) res.cliques_consecutive = false;
  }
  return res;
}

std::string serialize_layout(const TreeLayout& t) {
  std::ostringstream out;
  if (t.root < 0)
    out << "root none\n";
  else
    out << "root " << t.root << '\n';
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0) out << v << ' ' << t.parent[v] << '\n';
  return out.str();
}

TreeLayout parse_layout(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  TreeLayout t;
  bool have_root = false;
  std::vector<Edge> links;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    const std::string where = "layout line " + std::to_string(line_no) + ": ";
    if (!have_root) {
      std::string word, value;
      if (!(ls >> word >> value) || word != "root")
        throw Error(ErrorKind::kParse, where + "expected \"root r\"");
      if (value != "none") {
        try {
          t.root = std::stoi(value);
        } catch (const std::exception&) {
          throw Error(ErrorKind::kParse, where + "malformed root");
        }
      }
      have_root = true;
      continue;
    }
    int c, p;
    std::string extra;
    if (!(ls >> c >> p) || (ls >> extra)) throw Error(ErrorKind::kParse, where + "expected \"child parent\"");
    links.emplace_back(c, p);
  }
  if (!have_root) throw Error(ErrorKind::kParse, "layout missing root line");
  const int n = t.root < 0 ? 0 : static_cast<int>(links.size()) + 1;
  t.parent.assign(n, -1);
  for (auto [c, p] : links) {
    if (c < 0 || c >= n || p < 0 || p >= n || c == t.root || t.parent[c] != -1)
      throw Error(ErrorKind::kParse, "layout entry (" + std::to_string(c) + "," +
                                         std::to_string(p) + ") is out of range or repeated");
    t.parent[c] = p;
  }
  if (t.root >= n) throw Error(ErrorKind::kParse, "layout root out of range");
  check_layout_structure(n, t);
  return t;
}

}  // namespace treeband
