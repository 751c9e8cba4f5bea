#include "treeband/coloring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>

#include "treeband/error.hpp"

namespace treeband {

Colouring pcentered_from_layout(const Graph& g, const TreeLayout& t, int p) {
  if (p < 1) throw Error(ErrorKind::kInvalidArgument, "p must be at least 1");
  if (!validate_layout(g, t).ok) throw Error(ErrorKind::kPrecondition, "invalid tree-layout");
  const int k = bandwidth_of_layout(g, t);
  auto depth = layout_depths(t);
  Colouring c;
  c.palette_size = p * k + 1;
  c.colour.resize(g.n());
  for (int v = 0; v < g.n(); ++v) c.colour[v] = depth[v] % c.palette_size;
  return c;
}

namespace {

struct Walker {
  const Graph& g;
  const std::vector<int>& colour;
  int p;
  std::int64_t budget;
  std::int64_t checked = 0;
  Mask bad = 0;
  std::vector<int> count;

  Walker(const Graph& graph, const std::vector<int>& col, int palette, int pp, std::int64_t b)
      : g(graph), colour(col), p(pp), budget(b), count(palette, 0) {}

  bool violates(Mask s) {
    std::vector<int> used;
    for (Mask m = s; m; m &= m - 1) {
      int c = colour[lowest(m)];
      if (count[c]++ == 0) used.push_back(c);
    }
    bool unique = false;
    for (int c : used) unique = unique || count[c] == 1;
    bool over = static_cast<int>(used.size()) > p;
    for (int c : used) count[c] = 0;
    return !over && !unique;
  }

  // Standard extension enumeration: every connected set containing the root
  // and otherwise inside `allowed` is produced exactly once.
  bool grow(Mask s, Mask cand, Mask excl, Mask allowed) {
    if (++checked > budget) throw Error(ErrorKind::kBudgetExceeded, "p-centred check budget exceeded");
    if (violates(s)) {
      bad = s;
      return true;
    }
    while (cand) {
      int w = lowest(cand);
      cand &= cand - 1;
      Mask s2 = s | bit(w);
      Mask c2 = (cand | (g.nbr_mask(w) & allowed)) & ~s2 & ~excl;
      if (grow(s2, c2, excl, allowed)) return true;
      excl |= bit(w);
    }
    return false;
  }

  bool from_root(int r) {
    Mask allowed = g.all_mask() & ~((bit(r) << 1) - 1);
    return grow(bit(r), g.nbr_mask(r) & allowed, 0, allowed);
  }
};

void check_inputs(const Graph& g, const Colouring& c, int p) {
  if (p < 1) throw Error(ErrorKind::kInvalidArgument, "p must be at least 1");
  if (static_cast<int>(c.colour.size()) != g.n())
    throw Error(ErrorKind::kInvalidArgument, "colouring does not cover the graph");
  if (!g.fits_mask()) throw Error(ErrorKind::kSizeLimit, "p-centred check needs n <= 64");
  for (int x : c.colour)
    if (x < 0 || x >= c.palette_size) throw Error(ErrorKind::kInvalidArgument, "colour outside palette");
}

}  // namespace

PCenteredCheck verify_pcentered_serial(const Graph& g, const Colouring& c, int p,
                                       std::int64_t max_subsets) {
  check_inputs(g, c, p);
  Walker w(g, c.colour, c.palette_size, p, max_subsets);
  PCenteredCheck res;
  for (int r = 0; r < g.n(); ++r)
    if (w.from_root(r)) {
      res.ok = false;
      res.counterexample = mask_to_vector(w.bad);
      break;
    }
  res.subsets_checked = w.checked;
  return res;
}

PCenteredCheck verify_pcentered(const Graph& g, const Colouring& c, int p, std::int64_t max_subsets) {
  check_inputs(g, c, p);
  const int n = g.n();
  std::vector<Mask> bad(n, 0);
  std::vector<std::int64_t> checked(n, 0);
  std::atomic<bool> over_budget{false};
  // Each root gets the full budget; the total is compared afterwards.
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n; ++r) {
    if (over_budget.load()) continue;
    Walker w(g, c.colour, c.palette_size, p, max_subsets);
    try {
      if (w.from_root(r)) bad[r] = w.bad;
    } catch (const Error&) {
      over_budget = true;
    }
    checked[r] = w.checked;
  }
  std::int64_t total = 0;
  for (auto x : checked) total += x;
  if (over_budget || total > max_subsets)
    throw Error(ErrorKind::kBudgetExceeded, "p-centred check budget exceeded");
  PCenteredCheck res;
  res.subsets_checked = total;
  // Report the violation the serial walk would meet first.
  for (int r = 0; r < n; ++r)
    if (bad[r]) {
      res.ok = false;
      res.counterexample = mask_to_vector(bad[r]);
      break;
    }
  return res;
}

std::string serialize_colouring(const Colouring& c) {
  std::ostringstream out;
  for (std::size_t v = 0; v < c.colour.size(); ++v) out << v << ' ' << c.colour[v] << '\n';
  return out.str();
}

Colouring parse_colouring(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<int, int>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int v, col;
    std::string extra;
    if (!(ls >> v >> col) || (ls >> extra) || v < 0 || col < 0)
      throw Error(ErrorKind::kParse, "colouring line " + std::to_string(lineno) + ": expected 'v colour'");
    rows.emplace_back(v, col);
  }
  Colouring c;
  c.colour.assign(rows.size(), -1);
  for (auto [v, col] : rows) {
    if (v >= static_cast<int>(rows.size()) || c.colour[v] != -1)
      throw Error(ErrorKind::kParse, "colouring must list each vertex 0..n-1 once");
    c.colour[v] = col;
    c.palette_size = std::max(c.palette_size, col + 1);
  }
  return c;
}

}  // namespace treeband
