#include "treeband/decomp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <omp.h>

#include "treeband/error.hpp"

namespace treeband {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max<int>(w, static_cast<int>(b.size()) - 1);
  return w;
}

std::vector<std::vector<int>> TreeDecomposition::adjacency() const {
  std::vector<std::vector<int>> adj(bags.size());
  for (auto [s, t] : tree_edges) {
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

void check_decomposition_structure(int n, const TreeDecomposition& d) {
  const int k = d.num_nodes();
  if (static_cast<int>(d.tree_edges.size()) != std::max(0, k - 1))
    throw Error(ErrorKind::kInvalidStructure, "decomposition tree has wrong edge count");
  for (auto [s, t] : d.tree_edges)
    if (s < 0 || t < 0 || s >= k || t >= k || s == t)
      throw Error(ErrorKind::kInvalidStructure, "bad decomposition tree edge");
  if (k > 0) {
    auto adj = d.adjacency();
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
    if (reached != k) throw Error(ErrorKind::kInvalidStructure, "decomposition tree is not connected");
  }
  if (d.root < -1 || d.root >= k) throw Error(ErrorKind::kInvalidStructure, "bad decomposition root");
  for (const auto& b : d.bags) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 0 || b[i] >= n) throw Error(ErrorKind::kInvalidStructure, "bag vertex out of range");
      if (i > 0 && b[i - 1] >= b[i])
        throw Error(ErrorKind::kInvalidStructure, "bag not sorted or has duplicates");
    }
  }
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> adhesion(const TreeDecomposition& d, int s, int t) {
  return intersect_sorted(d.bags[s], d.bags[t]);
}

RootedTree root_tree(int nodes, const std::vector<Edge>& edges, int root) {
  RootedTree rt;
  rt.root = root;
  rt.parent.assign(nodes, -1);
  rt.depth.assign(nodes, -1);
  rt.children.assign(nodes, {});
  std::vector<std::vector<int>> adj(nodes);
  for (auto [s, t] : edges) {
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  if (nodes == 0) return rt;
  rt.order.push_back(root);
  rt.depth[root] = 0;
  for (std::size_t i = 0; i < rt.order.size(); ++i) {
    int x = rt.order[i];
    for (int y : adj[x])
      if (rt.depth[y] < 0) {
        rt.depth[y] = rt.depth[x] + 1;
        rt.parent[y] = x;
        rt.children[x].push_back(y);
        rt.order.push_back(y);
      }
  }
  return rt;
}

std::vector<std::vector<int>> vertex_nodes(int n, const TreeDecomposition& d) {
  std::vector<std::vector<int>> out(n);
  for (int t = 0; t < d.num_nodes(); ++t)
    for (int v : d.bags[t]) out[v].push_back(t);
  return out;
}

namespace {

std::string set_string(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Nodes on the side of tree edge (s, t) that contains t.
std::vector<int> side_nodes(const std::vector<std::vector<int>>& adj, int s, int t) {
  std::vector<int> out{t};
  std::vector<int> from{s};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int y : adj[out[i]])
      if (y != from[i]) {
        out.push_back(y);
        from.push_back(out[i]);
      }
  return out;
}

bool induces_connected(const Graph& g, const std::vector<int>& vs) {
  if (vs.empty()) return false;
  std::vector<char> in(g.n(), 0), seen(g.n(), 0);
  for (int v : vs) in[v] = 1;
  std::vector<int> st{vs[0]};
  seen[vs[0]] = 1;
  std::size_t reached = 1;
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    for (int y : g.neighbours(x))
      if (in[y] && !seen[y]) {
        seen[y] = 1;
        ++reached;
        st.push_back(y);
      }
  }
  return reached == vs.size();
}

std::vector<int> union_of_bags(const TreeDecomposition& d, const std::vector<int>& nodes, int n) {
  std::vector<char> in(n, 0);
  for (int t : nodes)
    for (int v : d.bags[t]) in[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void fail(PropertyCheck& p, const std::string& why) {
  if (p.ok) p.witness = why;
  p.ok = false;
}

void check_lean(const Graph& g, const TreeDecomposition& d, int k, PropertyCheck& t8) {
  const int nodes = d.num_nodes();
  if (nodes == 0) return;
  RootedTree rt = root_tree(nodes, d.tree_edges, 0);
  // Per node: adhesion size and separator status of the edge to its parent.
  std::vector<int> up_size(nodes, 0);
  std::vector<char> up_minsep(nodes, 0);
  for (int t = 0; t < nodes; ++t)
    if (rt.parent[t] >= 0) {
      auto a = adhesion(d, t, rt.parent[t]);
      up_size[t] = static_cast<int>(a.size());
      up_minsep[t] = is_minimal_separator(g, a);
    }
  auto path_has = [&](int a, int b, int p) {
    while (a != b) {
      if (rt.depth[a] < rt.depth[b]) std::swap(a, b);
      if (up_size[a] <= p && up_minsep[a]) return true;
      a = rt.parent[a];
    }
    return false;
  };
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> mu_cache;
  auto subsets = [](const std::vector<int>& bag, int size) {
    std::vector<std::vector<int>> out;
    const int b = static_cast<int>(bag.size());
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<int> s;
      for (int i : idx) s.push_back(bag[i]);
      out.push_back(std::move(s));
      int i = size - 1;
      while (i >= 0 && idx[i] == b - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
  };
  // Sets of equal size suffice: shrinking the larger side keeps mu below the
  // smaller size and makes the required adhesion bound only stricter.
  for (int t1 = 0; t1 < nodes; ++t1)
    for (int t2 = t1; t2 < nodes; ++t2) {
      const int top = std::min<int>({k + 1, static_cast<int>(d.bags[t1].size()),
                                     static_cast<int>(d.bags[t2].size())});
      for (int s = 1; s <= top; ++s) {
        auto s1 = subsets(d.bags[t1], s);
        auto s2 = subsets(d.bags[t2], s);
        for (const auto& x1 : s1)
          for (const auto& x2 : s2) {
            auto key = x1 < x2 ? std::make_pair(x1, x2) : std::make_pair(x2, x1);
            auto it = mu_cache.find(key);
            int mu = it != mu_cache.end() ? it->second : (mu_cache[key] = menger_mu(g, x1, x2));
            if (mu < s && !path_has(t1, t2, mu)) {
              fail(t8, "nodes " + std::to_string(t1) + "," + std::to_string(t2) + " sets " +
                           set_string(x1) + " " + set_string(x2) + " mu=" + std::to_string(mu));
              return;
            }
          }
      }
    }
}

}  // namespace

bool is_minimal_separator(const Graph& g, const std::vector<int>& s) {
  std::vector<char> in_s(g.n(), 0);
  for (int v : s) in_s[v] = 1;
  std::vector<int> comp(g.n(), -1);
  int full = 0;
  for (int start = 0; start < g.n(); ++start) {
    if (in_s[start] || comp[start] >= 0) continue;
    std::vector<int> st{start};
    comp[start] = start;
    std::vector<char> touched(g.n(), 0);
    int touch_count = 0;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : g.neighbours(x)) {
        if (in_s[y]) {
          if (!touched[y]) {
            touched[y] = 1;
            ++touch_count;
          }
        } else if (comp[y] < 0) {
          comp[y] = start;
          st.push_back(y);
        }
      }
    }
    if (touch_count == static_cast<int>(s.size())) ++full;
  }
  return full >= 2;
}

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& d,
                                           std::optional<int> k) {
  const int n = g.n();
  check_decomposition_structure(n, d);
  const int nodes = d.num_nodes();
  DecompositionReport rep;
  for (int i = 0; i < 6; ++i) rep.props[i].checked = true;
  auto adj = d.adjacency();
  auto vn = vertex_nodes(n, d);

  // T1: each vertex's nodes are nonempty and connected (a forest on c nodes
  // is connected iff it has c-1 internal edges).
  for (int v = 0; v < n; ++v) {
    if (vn[v].empty()) {
      fail(rep.props[0], "vertex " + std::to_string(v) + " in no bag");
      continue;
    }
    int inner = 0;
    for (auto [s, t] : d.tree_edges)
      if (std::binary_search(d.bags[s].begin(), d.bags[s].end(), v) &&
          std::binary_search(d.bags[t].begin(), d.bags[t].end(), v))
        ++inner;
    if (inner != static_cast<int>(vn[v].size()) - 1)
      fail(rep.props[0], "bags of vertex " + std::to_string(v) + " are not connected");
  }
  // T2.
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int t : vn[u])
      if (std::binary_search(d.bags[t].begin(), d.bags[t].end(), v)) {
        covered = true;
        break;
      }
    if (!covered) fail(rep.props[1], "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  // T3.
  {
    std::map<std::vector<int>, int> seen;
    for (int t = 0; t < nodes; ++t) {
      auto [it, fresh] = seen.emplace(d.bags[t], t);
      if (!fresh)
        fail(rep.props[2], "nodes " + std::to_string(it->second) + " and " + std::to_string(t) +
                               " share bag " + set_string(d.bags[t]));
    }
  }
  // T4 and T5 look at both sides of every tree edge.
  for (int t = 0; t < nodes; ++t)
    for (int t2 : adj[t]) {
      auto side = side_nodes(adj, t, t2);
      auto side_union = union_of_bags(d, side, n);
      auto residue = set_minus(side_union, d.bags[t]);
      if (!induces_connected(g, residue))
        fail(rep.props[3], "node " + std::to_string(t) + " towards " + std::to_string(t2) +
                               ": residue " + set_string(residue) +
                               (residue.empty() ? " is empty" : " is disconnected"));
      auto a = adhesion(d, t, t2);
      auto beyond = set_minus(side_union, a);
      std::vector<char> in_beyond(n, 0);
      for (int v : beyond) in_beyond[v] = 1;
      for (int v : a) {
        bool has = false;
        for (int w : g.neighbours(v))
          if (in_beyond[w]) {
            has = true;
            break;
          }
        if (!has)
          fail(rep.props[4], "vertex " + std::to_string(v) + " of adhesion " +
                                 std::to_string(t) + "-" + std::to_string(t2) +
                                 " has no neighbour on the side of " + std::to_string(t2));
      }
    }
  // T6.
  for (int s = 0; s < nodes; ++s)
    for (std::size_t i = 0; i < adj[s].size(); ++i)
      for (std::size_t j = i + 1; j < adj[s].size(); ++j) {
        auto a1 = adhesion(d, s, adj[s][i]);
        if (a1 == adhesion(d, s, adj[s][j]) && a1 != d.bags[s])
          fail(rep.props[5], "node " + std::to_string(s) + " has equal adhesions " + set_string(a1) +
                                 " to " + std::to_string(adj[s][i]) + " and " +
                                 std::to_string(adj[s][j]));
      }
  if (k) {
    rep.props[6].checked = true;
    for (auto [s, t] : d.tree_edges) {
      auto a = adhesion(d, s, t);
      if (static_cast<int>(a.size()) > *k)
        fail(rep.props[6], "adhesion " + std::to_string(s) + "-" + std::to_string(t) + " has size " +
                               std::to_string(a.size()));
    }
    rep.props[7].checked = true;
    check_lean(g, d, *k, rep.props[7]);
  }
  return rep;
}

bool same_decomposition_up_to_isomorphism(const TreeDecomposition& a, const TreeDecomposition& b) {
  if (a.num_nodes() != b.num_nodes()) return false;
  auto canon = [](const TreeDecomposition& d) {
    std::vector<std::vector<int>> bags = d.bags;
    std::sort(bags.begin(), bags.end());
    std::vector<std::pair<std::vector<int>, std::vector<int>>> es;
    for (auto [s, t] : d.tree_edges) {
      auto x = d.bags[s], y = d.bags[t];
      if (y < x) std::swap(x, y);
      es.emplace_back(x, y);
    }
    std::sort(es.begin(), es.end());
    return std::make_pair(bags, es);
  };
  return canon(a) == canon(b);
}

TreeDecomposition contract_subset_bags(const TreeDecomposition& d) {
  TreeDecomposition cur = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [s, t] : cur.tree_edges) {
      int small = -1, big = -1;
      if (is_subset_sorted(cur.bags[s], cur.bags[t])) {
        small = s;
        big = t;
      } else if (is_subset_sorted(cur.bags[t], cur.bags[s])) {
        small = t;
        big = s;
      }
      if (small < 0) continue;
      // Re-point small's edges to big, then drop node small.
      TreeDecomposition next;
      std::vector<int> id(cur.num_nodes(), -1);
      for (int x = 0; x < cur.num_nodes(); ++x)
        if (x != small) {
          id[x] = next.num_nodes();
          next.bags.push_back(cur.bags[x]);
        }
      for (auto [x, y] : cur.tree_edges) {
        if ((x == small && y == big) || (x == big && y == small)) continue;
        int a = x == small ? big : x, b = y == small ? big : y;
        next.tree_edges.emplace_back(id[a], id[b]);
      }
      next.root = cur.root < 0 ? -1 : id[cur.root == small ? big : cur.root];
      cur = std::move(next);
      changed = true;
      break;
    }
  }
  return cur;
}

int overlap_number_serial(const TreeDecomposition& d) {
  int n = 0;
  for (const auto& b : d.bags)
    if (!b.empty()) n = std::max(n, b.back() + 1);
  auto vn = vertex_nodes(n, d);
  int best = 0;
  std::vector<int> count(n, 0);
  for (int u = 0; u < n; ++u) {
    std::fill(count.begin(), count.end(), 0);
    for (int t : vn[u])
      for (int v : d.bags[t])
        if (v > u) best = std::max(best, ++count[v]);
  }
  return best;
}

int overlap_number(const TreeDecomposition& d) {
  int n = 0;
  for (const auto& b : d.bags)
    if (!b.empty()) n = std::max(n, b.back() + 1);
  auto vn = vertex_nodes(n, d);
  int best = 0;
#pragma omp parallel reduction(max : best)
  {
    std::vector<int> count(n, 0);
#pragma omp for schedule(dynamic, 8)
    for (int u = 0; u < n; ++u) {
      for (int t : vn[u])
        for (int v : d.bags[t])
          if (v > u) best = std::max(best, ++count[v]);
      for (int t : vn[u])
        for (int v : d.bags[t]) count[v] = 0;
    }
  }
  return best;
}

int max_vertex_subtree_diameter(int n, const TreeDecomposition& d) {
  auto adj = d.adjacency();
  auto vn = vertex_nodes(n, d);
  std::vector<int> dist(d.num_nodes(), -1);
  std::vector<char> has(d.num_nodes(), 0);
  int best = 0;
  auto far = [&](int start, int& far_node) {
    std::vector<int> q{start};
    dist[start] = 0;
    far_node = start;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int y : adj[q[i]])
        if (has[y] && dist[y] < 0) {
          dist[y] = dist[q[i]] + 1;
          if (dist[y] > dist[far_node]) far_node = y;
          q.push_back(y);
        }
    int r = dist[far_node];
    for (int x : q) dist[x] = -1;
    return r;
  };
  for (int v = 0; v < n; ++v) {
    if (vn[v].empty()) continue;
    for (int t : vn[v]) has[t] = 1;
    int a, b;
    far(vn[v][0], a);
    best = std::max(best, far(a, b));
    for (int t : vn[v]) has[t] = 0;
  }
  return best;
}

std::string serialize_decomposition(const TreeDecomposition& d, int n) {
  std::ostringstream out;
  out << "td " << d.num_nodes() << ' ' << (d.width() + 1) << ' ' << n << '\n';
  for (int t = 0; t < d.num_nodes(); ++t) {
    out << "b " << (t + 1);
    for (int v : d.bags[t]) out << ' ' << v;
    out << '\n';
  }
  auto es = d.tree_edges;
  for (auto& e : es)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(es.begin(), es.end());
  for (auto [s, t] : es) out << (s + 1) << ' ' << (t + 1) << '\n';
  if (d.root >= 0) out << "root " << (d.root + 1) << '\n';
  return out.str();
}

TreeDecomposition parse_decomposition(std::string_view text, int* n_out) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0, nodes = -1, n = -1;
  TreeDecomposition d;
  std::vector<char> seen_bag;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == 'c') continue;
    std::istringstream ls(line);
    const std::string where = "decomposition line " + std::to_string(line_no) + ": ";
    std::string word;
    ls >> word;
    if (nodes < 0) {
      int w;
      if (word != "td" || !(ls >> nodes >> w >> n) || nodes < 0 || n < 0)
        throw Error(ErrorKind::kParse, where + "expected \"td <nodes> <width+1> <n>\"");
      d.bags.assign(nodes, {});
      seen_bag.assign(nodes, 0);
      continue;
    }
    if (word == "b") {
      int id;
      if (!(ls >> id) || id < 1 || id > nodes || seen_bag[id - 1])
        throw Error(ErrorKind::kParse, where + "bad or repeated bag id");
      seen_bag[id - 1] = 1;
      int v;
      while (ls >> v) {
        if (v < 0 || v >= n) throw Error(ErrorKind::kParse, where + "bag vertex out of range");
        d.bags[id - 1].push_back(v);
      }
      if (!ls.eof()) throw Error(ErrorKind::kParse, where + "malformed bag");
      auto& b = d.bags[id - 1];
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end())
        throw Error(ErrorKind::kParse, where + "repeated vertex in bag");
    } else if (word == "root") {
      int r;
      if (!(ls >> r) || r < 1 || r > nodes) throw Error(ErrorKind::kParse, where + "bad root");
      d.root = r - 1;
    } else {
      int s, t;
      try {
        s = std::stoi(word);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParse, where + "unexpected token");
      }
      if (!(ls >> t) || s < 1 || t < 1 || s > nodes || t > nodes)
        throw Error(ErrorKind::kParse, where + "bad tree edge");
      d.tree_edges.emplace_back(s - 1, t - 1);
    }
  }
  if (nodes < 0) throw Error(ErrorKind::kParse, "missing td header");
  for (int t = 0; t < nodes; ++t)
    if (!seen_bag[t]) throw Error(ErrorKind::kParse, "bag " + std::to_string(t + 1) + " missing");
  check_decomposition_structure(n, d);
  if (n_out) *n_out = n;
  return d;
}

}  // namespace treeband
