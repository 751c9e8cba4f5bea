#include <algorithm>
#include <queue>

#include "treeband/graph.hpp"

namespace treeband {

namespace {

// Unit-capacity augmenting-path max-flow on the split-vertex digraph.
class FlowNet {
 public:
  explicit FlowNet(int nodes) : head_(nodes, -1) {}

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    std::vector<int> via(head_.size());
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> q;
      q.push(s);
      via[s] = -2;
      while (!q.empty() && via[t] == -1) {
        int x = q.front();
        q.pop();
        for (int a = head_[x]; a >= 0; a = arcs_[a].next)
          if (arcs_[a].cap > 0 && via[arcs_[a].to] == -1) {
            via[arcs_[a].to] = a;
            q.push(arcs_[a].to);
          }
      }
      if (via[t] == -1) return flow;
      for (int x = t; x != s;) {
        int a = via[x];
        arcs_[a].cap -= 1;
        arcs_[a ^ 1].cap += 1;
        x = arcs_[a ^ 1].to;
      }
      ++flow;
    }
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int a = head_[x]; a >= 0; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

  // Forward arcs (even index) that carry one unit of flow, by tail.
  std::vector<std::vector<int>> used_arcs() const {
    std::vector<std::vector<int>> used(head_.size());
    for (std::size_t a = 0; a < arcs_.size(); a += 2)
      if (arcs_[a ^ 1].cap > 0) used[arcs_[a ^ 1].to].push_back(arcs_[a].to);
    return used;
  }

 private:
  struct Arc {
    int to, cap, next;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace

MengerResult menger(const Graph& g, const std::vector<int>& x_set, const std::vector<int>& y_set,
                    const std::vector<char>& forbidden) {
  const int n = g.n();
  auto blocked = [&](int v) { return !forbidden.empty() && forbidden[v]; };
  const int s = 2 * n, t = 2 * n + 1;
  // Only the vertex arcs have unit capacity, so every minimum cut is a vertex set.
  const int wide = n + 1;
  FlowNet net(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    if (blocked(v)) continue;
    net.add_arc(2 * v, 2 * v + 1, 1);
    for (int w : g.neighbours(v))
      if (!blocked(w)) net.add_arc(2 * v + 1, 2 * w, wide);
  }
  std::vector<char> in_x(n, 0), in_y(n, 0);
  for (int x : x_set)
    if (!blocked(x) && !in_x[x]) {
      in_x[x] = 1;
      net.add_arc(s, 2 * x, wide);
    }
  for (int y : y_set)
    if (!blocked(y) && !in_y[y]) {
      in_y[y] = 1;
      net.add_arc(2 * y + 1, t, wide);
    }
  MengerResult res;
  res.value = net.max_flow(s, t);
  auto seen = net.reachable(s);
  for (int v = 0; v < n; ++v)
    if (seen[2 * v] && !seen[2 * v + 1]) res.separator.push_back(v);
  auto used = net.used_arcs();
  for (int start : used[s]) {
    std::vector<int> path;
    int x = start;
    while (x != t) {
      if (x % 2 == 0) path.push_back(x / 2);
      int nx = used[x].back();
      used[x].pop_back();
      x = nx;
    }
    res.paths.push_back(std::move(path));
  }
  std::sort(res.paths.begin(), res.paths.end());
  return res;
}

int menger_mu(const Graph& g, const std::vector<int>& x_set, const std::vector<int>& y_set) {
  return menger(g, x_set, y_set).value;
}

MengerResult internally_disjoint_paths(const Graph& g, int u, int v) {
  const int n = g.n();
  const int wide = n + 1;
  FlowNet net(2 * n);
  for (int x = 0; x < n; ++x) {
    if (x != u && x != v) net.add_arc(2 * x, 2 * x + 1, 1);
    for (int w : g.neighbours(x)) net.add_arc(2 * x + 1, 2 * w, x == u && w == v ? 1 : wide);
  }
  MengerResult res;
  const int s = 2 * u + 1, t = 2 * v;
  res.value = net.max_flow(s, t);
  auto seen = net.reachable(s);
  for (int x = 0; x < n; ++x)
    if (x != u && x != v && seen[2 * x] && !seen[2 * x + 1]) res.separator.push_back(x);
  auto used = net.used_arcs();
  for (int start : used[s]) {
    std::vector<int> path{u};
    int x = start;
    while (x != t) {
      if (x % 2 == 0) path.push_back(x / 2);
      int nx = used[x].back();
      used[x].pop_back();
      x = nx;
    }
    path.push_back(v);
    res.paths.push_back(std::move(path));
  }
  std::sort(res.paths.begin(), res.paths.end());
  return res;
}

}  // namespace treeband
