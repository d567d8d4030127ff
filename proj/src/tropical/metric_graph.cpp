#include "hypertrop/metric_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace hypertrop {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

using Bits = std::vector<std::uint64_t>;

bool reduce_into(std::vector<std::pair<int, Bits>>& basis, Bits v) {
  // Gaussian elimination over GF(2) keyed by pivot bit.
  for (auto& [pivot, b] : basis)
    if (v[pivot / 64] >> (pivot % 64) & 1U)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= b[i];
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v[w]) {
      int pivot = static_cast<int>(w * 64 + __builtin_ctzll(v[w]));
      for (auto& [p, b] : basis)
        if (b[pivot / 64] >> (pivot % 64) & 1U)
          for (std::size_t i = 0; i < v.size(); ++i) b[i] ^= v[i];
      basis.emplace_back(pivot, std::move(v));
      return true;
    }
  return false;
}

}  // namespace

int MetricGraph::num_components() const {
  Dsu d(num_vertices);
  int c = num_vertices;
  for (const auto& e : edges)
    if (d.unite(e.u, e.v)) --c;
  return c;
}

int MetricGraph::first_betti() const {
  return static_cast<int>(edges.size()) - num_vertices + num_components();
}

std::vector<int> MetricGraph::valences() const {
  std::vector<int> val(num_vertices, 0);
  for (const auto& e : edges) {
    ++val[e.u];
    ++val[e.v];
  }
  return val;
}

std::vector<std::vector<int>> MetricGraph::cycle_basis() const {
  const int b1 = first_betti();
  if (b1 == 0) return {};
  // Enumerate simple cycles; the graphs here are small.
  std::vector<std::vector<std::pair<int, int>>> adj(num_vertices);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    adj[edges[i].u].emplace_back(edges[i].v, i);
    if (edges[i].u != edges[i].v) adj[edges[i].v].emplace_back(edges[i].u, i);
  }
  std::vector<std::vector<int>> cycles;
  std::vector<int> path_edges;
  std::vector<char> on_path(num_vertices, 0);
  const std::size_t cap = 200000;
  std::function<void(int, int)> dfs = [&](int start, int v) {
    if (cycles.size() >= cap) return;
    for (auto [w, ei] : adj[v]) {
      if (!path_edges.empty() && path_edges.back() == ei) continue;
      if (w == start) {
        path_edges.push_back(ei);
        // Keep each cycle once: require first edge < last edge.
        if (path_edges.size() == 1 || path_edges.front() < path_edges.back()) {
          auto c = path_edges;
          std::sort(c.begin(), c.end());
          cycles.push_back(c);
        }
        path_edges.pop_back();
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = 1;
      path_edges.push_back(ei);
      dfs(start, w);
      path_edges.pop_back();
      on_path[w] = 0;
    }
  };
  for (int s = 0; s < num_vertices; ++s) {
    on_path[s] = 1;
    dfs(s, s);
    on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  auto len = [&](const std::vector<int>& c) {
    Rat l = 0;
    for (int e : c) l += edges[e].length;
    return l;
  };
  std::stable_sort(cycles.begin(), cycles.end(), [&](const auto& a, const auto& b) {
    Rat la = len(a), lb = len(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  std::vector<std::pair<int, Bits>> basis;
  std::vector<std::vector<int>> out;
  const std::size_t words = (edges.size() + 63) / 64;
  for (const auto& c : cycles) {
    Bits v(words, 0);
    for (int e : c) v[e / 64] ^= std::uint64_t{1} << (e % 64);
    if (reduce_into(basis, v)) out.push_back(c);
    if (static_cast<int>(out.size()) == b1) break;
  }
  return out;
}

std::vector<Rat> MetricGraph::cycle_lengths() const {
  std::vector<Rat> out;
  for (const auto& c : cycle_basis()) {
    Rat l = 0;
    for (int e : c) l += edges[e].length;
    out.push_back(l);
  }
  return out;
}

std::vector<int> MetricGraph::core_edges() const {
  std::vector<char> alive(edges.size(), 1);
  std::vector<int> deg = valences();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive[i]) continue;
      const auto& e = edges[i];
      if (e.u != e.v && (deg[e.u] == 1 || deg[e.v] == 1)) {
        alive[i] = 0;
        --deg[e.u];
        --deg[e.v];
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (alive[i]) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace hypertrop
