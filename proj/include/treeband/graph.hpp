#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treeband {

using Edge = std::pair<int, int>;

// Vertex sets for the exhaustive routines, which are limited to 64 vertices.
using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest(Mask m) { return __builtin_ctzll(m); }
std::vector<int> mask_to_vector(Mask m);
Mask vector_to_mask(const std::vector<int>& vs);

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Throws Error(kInvalidArgument) on loops, duplicates or out-of-range ids.
  static Graph from_edges(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  int m() const { return m_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const;
  int max_degree() const;

  // Sorted list of edges (u, v) with u < v.
  std::vector<Edge> edges() const;

  // Neighbourhood as a bitmask; only available when n <= 64.
  Mask nbr_mask(int v) const;
  bool fits_mask() const { return n_ <= 64; }
  Mask all_mask() const;

  // Subgraph induced by `vertices`, renumbered in the given order.
  Graph induced(const std::vector<int>& vertices) const;
  Graph remove_vertex(int v, std::vector<int>* old_ids = nullptr) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Mask> masks_;
};

// Edge-list text format: '#' comment lines, "n m", then m lines "u v".
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

enum class Family {
  kPath,
  kCycle,
  kComplete,
  kStar,
  kCompleteBipartite,
  kGrid,
  kWall,
  kFan,
  kDipoleSubdivided,
  kMultipleSubdivided,
  kSubdividedBinaryTree,
};

struct FamilySpec {
  Family kind = Family::kPath;
  std::vector<int> params;
  std::optional<Graph> base;  // only for kMultipleSubdivided
};

// Vertex numbering per family:
//   path(n): 0-1-...-(n-1).   cycle(n): path plus edge (0, n-1).
//   star(m): centre 0, leaves 1..m.   complete_bipartite(s,t): 0..s-1 | s..s+t-1.
//   grid(r,c): (i,j) -> i*c + j.
//   wall(k): surviving cells of the 2k x k grid, row-major by (y, x).
//   fan(k): universal vertex 0, path 1..k.
//   dipole_subdivided(k): poles 0 and 1, middle vertices 2..k+1.
//   multiple_subdivided(G,k): original ids first, then one vertex per
//     (edge, copy) in sorted edge order.
//   subdivided_binary_tree(d): heap-numbered complete binary tree of depth d,
//     then one subdivision vertex per tree edge in order of the child id.
Graph generate_family(const FamilySpec& spec);
std::optional<Family> family_from_name(std::string_view name);
const char* family_name(Family f);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph complete_bipartite_graph(int s, int t);
Graph grid_graph(int rows, int cols);
Graph wall_graph(int k);
Graph fan_graph(int k);
Graph dipole_subdivided_graph(int k);
Graph multiple_subdivided_graph(const Graph& base, int k);
Graph subdivided_binary_tree_graph(int depth);
Graph disjoint_union(const Graph& a, const Graph& b);

// Parts ordered by minimum vertex id, each sorted ascending.
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
// Components of g restricted to the vertex set `within`.
std::vector<Mask> components_within(const Graph& g, Mask within);

struct BlockCutTree {
  std::vector<std::vector<Edge>> blocks;          // edges of each block, sorted
  std::vector<std::vector<int>> block_vertices;   // sorted
  std::vector<int> cutvertices;                   // sorted
  // Tree nodes: blocks are 0..B-1, cutvertex cutvertices[i] is node B+i.
  std::vector<Edge> tree_edges;
};
BlockCutTree biconnected_components(const Graph& g);
bool is_biconnected(const Graph& g);

struct MengerResult {
  int value = 0;
  std::vector<int> separator;               // a minimum X-Y separator
  std::vector<std::vector<int>> paths;      // value vertex-disjoint X-Y paths
};

// Maximum number of vertex-disjoint X-Y paths (|X ∩ Y| counts).
int menger_mu(const Graph& g, const std::vector<int>& x_set, const std::vector<int>& y_set);
MengerResult menger(const Graph& g, const std::vector<int>& x_set, const std::vector<int>& y_set,
                    const std::vector<char>& forbidden = {});

// Internally vertex-disjoint u-v paths; an edge uv counts as one path.
MengerResult internally_disjoint_paths(const Graph& g, int u, int v);

}  // namespace treeband
