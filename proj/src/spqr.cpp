#include "treeband/spqr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "treeband/error.hpp"

namespace treeband {

const char* spqr_type_name(SpqrType t) {
  switch (t) {
    case SpqrType::kS: return "S";
    case SpqrType::kP: return "P";
    case SpqrType::kR: return "R";
  }
  return "?";
}

namespace {

struct WorkEdge {
  int u, v;
  int vid;  // virtual edge id, -1 for a real edge
};
using Piece = std::vector<WorkEdge>;

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

std::vector<int> piece_vertices(const Piece& p) {
  std::vector<int> vs;
  for (const auto& e : p) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool is_cycle(const Piece& p, const std::vector<int>& vs) {
  if (p.size() != vs.size() || vs.size() < 3) return false;
  std::map<int, int> deg;
  for (const auto& e : p) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (auto [v, d] : deg)
    if (d != 2) return false;
  // Connected: pieces always are, but a union of two cycles would also pass
  // the degree test.
  UnionFind uf(static_cast<int>(p.size()));
  std::map<int, int> first;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    for (int x : {p[i].u, p[i].v}) {
      auto [it, fresh] = first.emplace(x, i);
      if (!fresh) uf.unite(i, it->second);
    }
  for (int i = 1; i < static_cast<int>(p.size()); ++i)
    if (uf.find(i) != uf.find(0)) return false;
  return true;
}

// Separation classes of {a, b}: edges sharing an endpoint outside the pair
// fall in one class. Returns class ids per edge and the class count.
int separation_classes(const Piece& p, int a, int b, std::vector<int>& cls) {
  const int m = static_cast<int>(p.size());
  UnionFind uf(m);
  std::map<int, int> first;
  for (int i = 0; i < m; ++i)
    for (int x : {p[i].u, p[i].v}) {
      if (x == a || x == b) continue;
      auto [it, fresh] = first.emplace(x, i);
      if (!fresh) uf.unite(i, it->second);
    }
  std::map<int, int> ids;
  cls.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    auto [it, fresh] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
    cls[i] = it->second;
  }
  return static_cast<int>(ids.size());
}

struct Builder {
  int next_vid = 0;
  std::vector<std::pair<SpqrType, Piece>> done;

  void split(Piece p) {
    auto vs = piece_vertices(p);
    if (vs.size() == 2) {
      done.push_back({SpqrType::kP, std::move(p)});
      return;
    }
    if (is_cycle(p, vs)) {
      done.push_back({SpqrType::kS, std::move(p)});
      return;
    }
    std::vector<int> cls;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        int a = vs[i], b = vs[j];
        int count = separation_classes(p, a, b, cls);
        if (count < 2) continue;
        std::vector<Piece> classes(count);
        for (std::size_t e = 0; e < p.size(); ++e) classes[cls[e]].push_back(p[e]);
        std::vector<WorkEdge> singles;
        std::vector<Piece> big;
        for (auto& c : classes) {
          if (c.size() == 1)
            singles.push_back(c[0]);
          else
            big.push_back(std::move(c));
        }
        // Two classes, one a lone edge: {a, b} splits nothing off.
        if (big.size() + singles.size() < 3 && big.size() < 2) continue;
        if (big.size() + singles.size() >= 3) {
          Piece bond = singles;
          for (auto& c : big) {
            int vid = next_vid++;
            bond.push_back({a, b, vid});
            c.push_back({a, b, vid});
          }
          done.push_back({SpqrType::kP, std::move(bond)});
        } else {
          int vid = next_vid++;
          big[0].push_back({a, b, vid});
          big[1].push_back({a, b, vid});
        }
        for (auto& c : big) split(std::move(c));
        return;
      }
    done.push_back({SpqrType::kR, std::move(p)});
  }
};

}  // namespace

SpqrTree build_spqr(const Graph& g) {
  if (g.n() < 3 || !is_biconnected(g))
    throw Error(ErrorKind::kPrecondition, "SPQR tree needs a 2-connected graph on at least 3 vertices");
  Builder b;
  Piece all;
  for (auto [u, v] : g.edges()) all.push_back({u, v, -1});
  b.split(std::move(all));

  // Merge S-S and P-P neighbours.
  const int pieces = static_cast<int>(b.done.size());
  std::vector<std::vector<int>> holders(b.next_vid);
  for (int i = 0; i < pieces; ++i)
    for (const auto& e : b.done[i].second)
      if (e.vid >= 0) holders[e.vid].push_back(i);
  UnionFind uf(pieces);
  std::vector<char> merged(b.next_vid, 0);
  for (int vid = 0; vid < b.next_vid; ++vid) {
    int x = holders[vid][0], y = holders[vid][1];
    SpqrType tx = b.done[x].first, ty = b.done[y].first;
    if (tx == ty && tx != SpqrType::kR) {
      uf.unite(x, y);
      merged[vid] = 1;
    }
  }
  std::map<int, int> node_of_group;
  SpqrTree t;
  std::vector<int> node_of(pieces);
  for (int i = 0; i < pieces; ++i) {
    auto [it, fresh] = node_of_group.emplace(uf.find(i), static_cast<int>(t.nodes.size()));
    if (fresh) {
      t.nodes.emplace_back();
      t.nodes.back().type = b.done[i].first;
    }
    node_of[i] = it->second;
  }
  std::vector<int> tree_edge_of(b.next_vid, -1);
  for (int vid = 0; vid < b.next_vid; ++vid) {
    if (merged[vid]) continue;
    int x = node_of[holders[vid][0]], y = node_of[holders[vid][1]];
    tree_edge_of[vid] = static_cast<int>(t.tree_edges.size());
    t.tree_edges.push_back({std::min(x, y), std::max(x, y)});
  }
  for (int i = 0; i < pieces; ++i) {
    auto& node = t.nodes[node_of[i]];
    for (const auto& e : b.done[i].second) {
      if (e.vid >= 0 && merged[e.vid]) continue;
      node.edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.vid >= 0 ? tree_edge_of[e.vid] : -1});
      if (e.vid >= 0 && static_cast<int>(t.pairs.size()) <= tree_edge_of[e.vid])
        t.pairs.resize(tree_edge_of[e.vid] + 1);
      if (e.vid >= 0) t.pairs[tree_edge_of[e.vid]] = {std::min(e.u, e.v), std::max(e.u, e.v)};
    }
  }
  for (auto& node : t.nodes) {
    Piece p;
    for (const auto& e : node.edges) p.push_back({e.u, e.v, e.tree_edge});
    node.vertices = piece_vertices(p);
    std::sort(node.edges.begin(), node.edges.end(), [](const SkeletonEdge& x, const SkeletonEdge& y) {
      return std::tie(x.u, x.v, x.tree_edge) < std::tie(y.u, y.v, y.tree_edge);
    });
  }
  if (auto why = spqr_problem(g, t); !why.empty())
    throw Error(ErrorKind::kInvalidStructure, "SPQR construction broke an invariant: " + why);
  return t;
}

Graph skeleton_graph(const SpqrNode& node) {
  std::set<Edge> es;
  auto local = [&](int v) {
    return static_cast<int>(std::lower_bound(node.vertices.begin(), node.vertices.end(), v) - node.vertices.begin());
  };
  for (const auto& e : node.edges) es.insert({local(e.u), local(e.v)});
  return Graph::from_edges(static_cast<int>(node.vertices.size()), {es.begin(), es.end()});
}

namespace {

bool three_connected(const Graph& h) {
  if (h.n() < 4) return false;
  for (int a = 0; a < h.n(); ++a) {
    std::vector<int> ids;
    Graph r = h.remove_vertex(a, &ids);
    if (!is_biconnected(r)) return false;
  }
  return true;
}

}  // namespace

std::string spqr_problem(const Graph& g, const SpqrTree& t) {
  const int nodes = static_cast<int>(t.nodes.size());
  const int te = static_cast<int>(t.tree_edges.size());
  if (nodes == 0) return "no nodes";
  if (te != nodes - 1) return "tree has " + std::to_string(te) + " edges for " + std::to_string(nodes) + " nodes";
  if (static_cast<int>(t.pairs.size()) != te) return "pair list size mismatch";
  UnionFind uf(nodes);
  for (auto [a, b] : t.tree_edges) {
    if (a < 0 || b >= nodes || a >= b) return "bad tree edge";
    if (uf.find(a) == uf.find(b)) return "tree edges form a cycle";
    uf.unite(a, b);
  }
  std::vector<int> seen_virtual(te, 0);
  std::multiset<Edge> real;
  for (int i = 0; i < nodes; ++i) {
    const auto& node = t.nodes[i];
    const std::string at = "node " + std::to_string(i) + ": ";
    for (const auto& e : node.edges) {
      if (e.tree_edge < 0) {
        real.insert({e.u, e.v});
        continue;
      }
      if (e.tree_edge >= te) return at + "unknown tree edge";
      auto [x, y] = t.tree_edges[e.tree_edge];
      if (x != i && y != i) return at + "virtual edge of a tree edge not at this node";
      if (t.pairs[e.tree_edge] != Edge{e.u, e.v}) return at + "virtual edge endpoints differ from the pair";
      ++seen_virtual[e.tree_edge];
    }
    switch (node.type) {
      case SpqrType::kS: {
        Piece p;
        for (const auto& e : node.edges) p.push_back({e.u, e.v, e.tree_edge});
        if (!is_cycle(p, node.vertices)) return at + "S skeleton is not a cycle";
        break;
      }
      case SpqrType::kP:
        if (node.vertices.size() != 2 || node.edges.size() < 3) return at + "P skeleton is not a bond with 3+ edges";
        break;
      case SpqrType::kR: {
        std::set<Edge> distinct;
        for (const auto& e : node.edges) distinct.insert({e.u, e.v});
        if (distinct.size() != node.edges.size()) return at + "R skeleton has parallel edges";
        if (!three_connected(skeleton_graph(node))) return at + "R skeleton is not 3-connected";
        break;
      }
    }
  }
  for (int e = 0; e < te; ++e) {
    if (seen_virtual[e] != 2) return "tree edge " + std::to_string(e) + " has " + std::to_string(seen_virtual[e]) + " virtual copies";
    auto [a, b] = t.tree_edges[e];
    if (t.nodes[a].type == t.nodes[b].type && t.nodes[a].type != SpqrType::kR)
      return "tree edge " + std::to_string(e) + " joins two nodes of type " + spqr_type_name(t.nodes[a].type);
  }
  auto ge = g.edges();
  if (std::multiset<Edge>(ge.begin(), ge.end()) != real) return "real edges differ from the graph";
  return "";
}

std::string serialize_spqr(const SpqrTree& t) {
  std::ostringstream out;
  out << "nodes " << t.nodes.size() << '\n';
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& node = t.nodes[i];
    out << "node " << i << ' ' << spqr_type_name(node.type) << " vertices";
    for (int v : node.vertices) out << ' ' << v;
    out << '\n';
    for (const auto& e : node.edges) {
      out << "  " << e.u << ' ' << e.v;
      if (e.tree_edge >= 0) out << " virtual " << e.tree_edge;
      out << '\n';
    }
  }
  for (std::size_t e = 0; e < t.tree_edges.size(); ++e)
    out << "tree-edge " << e << ' ' << t.tree_edges[e].first << ' ' << t.tree_edges[e].second << " pair "
        << t.pairs[e].first << ' ' << t.pairs[e].second << '\n';
  return out.str();
}

namespace {

// Blocks with at least 3 vertices, each as (graph, local -> global ids).
std::vector<std::pair<Graph, std::vector<int>>> big_blocks(const Graph& g) {
  std::vector<std::pair<Graph, std::vector<int>>> out;
  auto bc = biconnected_components(g);
  for (std::size_t i = 0; i < bc.blocks.size(); ++i) {
    const auto& vs = bc.block_vertices[i];
    if (vs.size() < 3) continue;
    out.push_back({g.induced(vs), vs});
  }
  return out;
}

int skeleton_max_degree(const SpqrNode& node, int* at) {
  std::map<int, int> deg;
  for (const auto& e : node.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  int best = 0;
  for (auto [v, d] : deg)
    if (d > best) {
      best = d;
      if (at) *at = v;
    }
  return best;
}

}  // namespace

GemCheck gem_free_check(const Graph& g) {
  GemCheck res;
  for (const auto& [block, ids] : big_blocks(g)) {
    auto t = build_spqr(block);
    std::map<int, int> heavy_node;  // vertex -> first P/R node holding it
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const auto& node = t.nodes[i];
      if (node.type == SpqrType::kS) continue;
      if (node.type == SpqrType::kR) {
        int at = -1;
        int d = skeleton_max_degree(node, &at);
        if (d > 3) {
          res.gem_free = false;
          res.witness = "R-node skeleton has vertex " + std::to_string(ids[at]) + " of degree " + std::to_string(d);
          return res;
        }
      }
      for (int v : node.vertices) {
        auto [it, fresh] = heavy_node.emplace(v, static_cast<int>(i));
        if (!fresh) {
          const auto& other = t.nodes[it->second];
          res.gem_free = false;
          res.witness = "vertex " + std::to_string(ids[v]) + " lies in a " + spqr_type_name(other.type) +
                        "-node and a " + spqr_type_name(node.type) + "-node";
          return res;
        }
      }
    }
  }
  return res;
}

PlanarFanCheck planar_fan_conditions(const Graph& g, int k) {
  if (g.n() < 3 || !is_biconnected(g))
    throw Error(ErrorKind::kPrecondition, "planar fan conditions need a 2-connected graph");
  auto t = build_spqr(g);
  PlanarFanCheck res;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].type != SpqrType::kR) continue;
    int at = -1;
    int d = skeleton_max_degree(t.nodes[i], &at);
    res.max_r_degree = std::max(res.max_r_degree, d);
    if (d >= k && res.ok) {
      res.ok = false;
      res.witness = "R-node " + std::to_string(i) + " has vertex " + std::to_string(at) + " of degree " + std::to_string(d);
    }
  }
  // Tree edges whose pair contains x form a subforest (a subtree, as the
  // nodes holding x are connected); its longest path counts the pairs.
  const int nodes = static_cast<int>(t.nodes.size());
  for (int x = 0; x < g.n(); ++x) {
    std::vector<std::vector<int>> adj(nodes);
    for (std::size_t e = 0; e < t.tree_edges.size(); ++e)
      if (t.pairs[e].first == x || t.pairs[e].second == x) {
        adj[t.tree_edges[e].first].push_back(t.tree_edges[e].second);
        adj[t.tree_edges[e].second].push_back(t.tree_edges[e].first);
      }
    auto farthest = [&](int s, int& dist) {
      std::vector<int> d(nodes, -1);
      std::vector<int> q{s};
      d[s] = 0;
      int far = s;
      for (std::size_t qi = 0; qi < q.size(); ++qi)
        for (int w : adj[q[qi]])
          if (d[w] < 0) {
            d[w] = d[q[qi]] + 1;
            if (d[w] > d[far]) far = w;
            q.push_back(w);
          }
      dist = d[far];
      return far;
    };
    std::vector<char> done(nodes, 0);
    for (int s = 0; s < nodes; ++s) {
      if (adj[s].empty() || done[s]) continue;
      int dist = 0;
      int a = farthest(s, dist);
      farthest(a, dist);
      // Mark the component.
      std::vector<int> q{s};
      done[s] = 1;
      for (std::size_t qi = 0; qi < q.size(); ++qi)
        for (int w : adj[q[qi]])
          if (!done[w]) {
            done[w] = 1;
            q.push_back(w);
          }
      res.max_pair_path = std::max(res.max_pair_path, dist);
      if (dist > 2 * k + 1 && res.ok) {
        res.ok = false;
        res.witness = "vertex " + std::to_string(x) + " lies in " + std::to_string(dist) +
                      " separating pairs along one tree path";
      }
    }
  }
  return res;
}

}  // namespace treeband
