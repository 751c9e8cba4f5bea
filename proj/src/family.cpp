#include <map>
#include <string>

#include "treeband/error.hpp"
#include "treeband/graph.hpp"

namespace treeband {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

Graph path_graph(int n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edges(n, es);
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  es.emplace_back(0, n - 1);
  return Graph::from_edges(n, es);
}

Graph complete_graph(int n) {
  require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph::from_edges(n, es);
}

Graph star_graph(int leaves) {
  require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, es);
}

Graph complete_bipartite_graph(int s, int t) {
  require(s >= 1 && t >= 1, "complete bipartite graph needs s, t >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) es.emplace_back(i, s + j);
  return Graph::from_edges(s + t, es);
}

Graph grid_graph(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
  std::vector<Edge> es;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      int v = i * cols + j;
      if (j + 1 < cols) es.emplace_back(v, v + 1);
      if (i + 1 < rows) es.emplace_back(v, v + cols);
    }
  return Graph::from_edges(rows * cols, es);
}

Graph wall_graph(int k) {
  require(k >= 2, "wall order must be at least 2");
  // Cells (x, y) with x in 1..2k and y in 1..k.
  const int w = 2 * k;
  auto cell = [&](int x, int y) { return (y - 1) * w + (x - 1); };
  std::vector<Edge> es;
  for (int y = 1; y <= k; ++y)
    for (int x = 1; x <= w; ++x) {
      if (x + 1 <= w) es.emplace_back(cell(x, y), cell(x + 1, y));
      if (y + 1 <= k && (x + y) % 2 == 0) es.emplace_back(cell(x, y), cell(x, y + 1));
    }
  Graph grid = Graph::from_edges(w * k, es);
  std::vector<int> keep;
  for (int v = 0; v < grid.n(); ++v)
    if (grid.degree(v) != 1) keep.push_back(v);
  return grid.induced(keep);
}

Graph fan_graph(int k) {
  require(k >= 1, "fan needs k >= 1");
  std::vector<Edge> es;
  for (int i = 1; i <= k; ++i) {
    es.emplace_back(0, i);
    if (i < k) es.emplace_back(i, i + 1);
  }
  return Graph::from_edges(k + 1, es);
}

Graph dipole_subdivided_graph(int k) {
  require(k >= 1, "dipole needs k >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i) {
    es.emplace_back(0, 2 + i);
    es.emplace_back(1, 2 + i);
  }
  return Graph::from_edges(k + 2, es);
}

Graph multiple_subdivided_graph(const Graph& base, int k) {
  require(k >= 1, "multiplicity must be positive");
  std::vector<Edge> es;
  int next = base.n();
  for (auto [u, v] : base.edges())
    for (int c = 0; c < k; ++c) {
      es.emplace_back(u, next);
      es.emplace_back(v, next);
      ++next;
    }
  return Graph::from_edges(next, es);
}

Graph subdivided_binary_tree_graph(int depth) {
  require(depth >= 0 && depth <= 12, "binary tree depth must be in 0..12");
  const int nodes = (1 << (depth + 1)) - 1;
  std::vector<Edge> es;
  int next = nodes;
  for (int child = 1; child < nodes; ++child) {
    int parent = (child - 1) / 2;
    es.emplace_back(parent, next);
    es.emplace_back(child, next);
    ++next;
  }
  return Graph::from_edges(next, es);
}

namespace {

const std::map<std::string, Family>& family_names() {
  static const std::map<std::string, Family> names = {
      {"path", Family::kPath},
      {"cycle", Family::kCycle},
      {"complete", Family::kComplete},
      {"star", Family::kStar},
      {"complete-bipartite", Family::kCompleteBipartite},
      {"grid", Family::kGrid},
      {"wall", Family::kWall},
      {"fan", Family::kFan},
      {"dipole-subdivided", Family::kDipoleSubdivided},
      {"k-multiple-subdivided", Family::kMultipleSubdivided},
      {"subdivided-binary-tree", Family::kSubdividedBinaryTree},
  };
  return names;
}

}  // namespace

std::optional<Family> family_from_name(std::string_view name) {
  auto it = family_names().find(std::string(name));
  if (it == family_names().end()) return std::nullopt;
  return it->second;
}

const char* family_name(Family f) {
  for (const auto& [name, kind] : family_names())
    if (kind == f) return name.c_str();
  return "unknown";
}

Graph generate_family(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto need = [&](std::size_t count) {
    require(p.size() == count, std::string(family_name(spec.kind)) + " expects " +
                                   std::to_string(count) + " parameter(s)");
  };
  switch (spec.kind) {
    case Family::kPath: need(1); return path_graph(p[0]);
    case Family::kCycle: need(1); return cycle_graph(p[0]);
    case Family::kComplete: need(1); return complete_graph(p[0]);
    case Family::kStar: need(1); return star_graph(p[0]);
    case Family::kCompleteBipartite: need(2); return complete_bipartite_graph(p[0], p[1]);
    case Family::kGrid: need(2); return grid_graph(p[0], p[1]);
    case Family::kWall: need(1); return wall_graph(p[0]);
    case Family::kFan: need(1); return fan_graph(p[0]);
    case Family::kDipoleSubdivided: need(1); return dipole_subdivided_graph(p[0]);
    case Family::kMultipleSubdivided:
      need(1);
      require(spec.base.has_value(), "k-multiple-subdivided needs a base graph");
      return multiple_subdivided_graph(*spec.base, p[0]);
    case Family::kSubdividedBinaryTree: need(1); return subdivided_binary_tree_graph(p[0]);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

}  // namespace treeband
