#include "treeband/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include "treeband/error.hpp"

namespace treeband {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kInvalidStructure: return "invalid_structure";
    case ErrorKind::kSizeLimit: return "size_limit";
    case ErrorKind::kBudgetExceeded: return "budget_exceeded";
    case ErrorKind::kPrecondition: return "precondition";
  }
  return "unknown";
}

std::vector<int> mask_to_vector(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(lowest(m));
    m &= m - 1;
  }
  return out;
}

Mask vector_to_mask(const std::vector<int>& vs) {
  Mask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

Graph::Graph(int n) : n_(n), m_(0), adj_(n) {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "negative vertex count");
  if (n <= 64) masks_.assign(n, 0);
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorKind::kInvalidArgument,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw Error(ErrorKind::kInvalidArgument, "loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end())
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate edge (" + std::to_string(std::min(v, *dup)) + "," +
                      std::to_string(std::max(v, *dup)) + ")");
    if (n <= 64)
      for (int w : a) g.masks_[v] |= bit(w);
  }
  g.m_ = static_cast<int>(edges.size());
  return g;
}

bool Graph::adjacent(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max<int>(d, a.size());
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Mask Graph::nbr_mask(int v) const {
  if (n_ > 64) throw Error(ErrorKind::kSizeLimit, "bitmask routines need n <= 64");
  return masks_[v];
}

Mask Graph::all_mask() const {
  if (n_ > 64) throw Error(ErrorKind::kSizeLimit, "bitmask routines need n <= 64");
  return n_ == 64 ? ~Mask{0} : (bit(n_) - 1);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(n_, -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) pos[vertices[i]] = i;
  std::vector<Edge> es;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    for (int w : adj_[vertices[i]])
      if (pos[w] > i) es.emplace_back(i, pos[w]);
  return from_edges(static_cast<int>(vertices.size()), es);
}

Graph Graph::remove_vertex(int v, std::vector<int>* old_ids) const {
  std::vector<int> keep;
  for (int u = 0; u < n_; ++u)
    if (u != v) keep.push_back(u);
  if (old_ids) *old_ids = keep;
  return induced(keep);
}

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line_no = 0;

  // Next non-empty, non-comment line; false at end of input.
  bool next(std::string_view& line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
        raw.remove_suffix(1);
      std::size_t s = 0;
      while (s < raw.size() && (raw[s] == ' ' || raw[s] == '\t')) ++s;
      raw.remove_prefix(s);
      if (raw.empty() || raw.front() == '#') continue;
      line = raw;
      return true;
    }
    return false;
  }
};

std::vector<long long> parse_ints(std::string_view line, int line_no) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t'))
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": malformed integer");
    out.push_back(value);
    i = ptr - line.data();
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  if (!reader.next(line)) throw Error(ErrorKind::kParse, "missing header line \"n m\"");
  auto header = parse_ints(line, reader.line_no);
  if (header.size() != 2 || header[0] < 0 || header[1] < 0)
    throw Error(ErrorKind::kParse, "line " + std::to_string(reader.line_no) + ": expected \"n m\"");
  const int n = static_cast<int>(header[0]);
  const long long m = header[1];
  std::vector<Edge> edges;
  std::vector<std::vector<int>> seen(n);
  for (long long i = 0; i < m; ++i) {
    if (!reader.next(line))
      throw Error(ErrorKind::kParse, "expected " + std::to_string(m) + " edges, found " +
                                         std::to_string(i));
    auto vals = parse_ints(line, reader.line_no);
    const std::string where = "line " + std::to_string(reader.line_no) + ": ";
    if (vals.size() != 2) throw Error(ErrorKind::kParse, where + "expected \"u v\"");
    long long u = vals[0], v = vals[1];
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorKind::kParse, where + "vertex id out of range");
    if (u == v) throw Error(ErrorKind::kParse, where + "loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    auto& s = seen[u];
    if (std::find(s.begin(), s.end(), static_cast<int>(v)) != s.end())
      throw Error(ErrorKind::kParse, where + "duplicate edge");
    s.push_back(static_cast<int>(v));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (reader.next(line))
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(reader.line_no) + ": trailing data after edge list");
  return Graph::from_edges(n, edges);
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<int>> parts;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(parts.size());
    parts.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      parts[id].push_back(v);
      for (int w : g.neighbours(v))
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(parts[id].begin(), parts[id].end());
  }
  return parts;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::vector<Mask> components_within(const Graph& g, Mask within) {
  std::vector<Mask> out;
  Mask left = within;
  while (left) {
    Mask comp = bit(lowest(left));
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= g.nbr_mask(lowest(f));
      next &= within & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

BlockCutTree biconnected_components(const Graph& g) {
  const int n = g.n();
  BlockCutTree out;
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> edge_stack;
  int timer = 0;

  // Iterative Tarjan over (vertex, parent, next neighbour index).
  struct Frame {
    int v, parent;
    std::size_t idx;
  };
  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0) continue;
    std::vector<Frame> stack{{s, -1, 0}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbours(f.v);
      if (f.idx < nb.size()) {
        int w = nb[f.idx++];
        if (disc[w] < 0) {
          edge_stack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent && disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const int v = f.v, p = f.parent;
      stack.pop_back();
      if (p < 0) continue;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        std::vector<Edge> block;
        while (true) {
          Edge e = edge_stack.back();
          edge_stack.pop_back();
          block.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
          if ((e.first == p && e.second == v)) break;
        }
        std::sort(block.begin(), block.end());
        out.blocks.push_back(std::move(block));
      }
    }
  }
  // Canonical order: by smallest edge.
  std::sort(out.blocks.begin(), out.blocks.end());
  std::vector<int> count(n, 0);
  for (const auto& b : out.blocks) {
    std::vector<int> vs;
    for (auto [u, v] : b) {
      vs.push_back(u);
      vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (int v : vs) ++count[v];
    out.block_vertices.push_back(std::move(vs));
  }
  std::vector<int> cut_index(n, -1);
  for (int v = 0; v < n; ++v)
    if (count[v] >= 2) {
      cut_index[v] = static_cast<int>(out.cutvertices.size());
      out.cutvertices.push_back(v);
    }
  const int nb = static_cast<int>(out.blocks.size());
  for (int b = 0; b < nb; ++b)
    for (int v : out.block_vertices[b])
      if (cut_index[v] >= 0) out.tree_edges.emplace_back(b, nb + cut_index[v]);
  return out;
}

bool is_biconnected(const Graph& g) {
  if (g.n() < 3 || !is_connected(g)) return false;
  return biconnected_components(g).blocks.size() == 1;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  auto es = a.edges();
  for (auto [u, v] : b.edges()) es.emplace_back(u + a.n(), v + a.n());
  return Graph::from_edges(a.n() + b.n(), es);
}

}  // namespace treeband
