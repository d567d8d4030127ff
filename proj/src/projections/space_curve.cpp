#include <algorithm>

#include "hypertrop/projections.hpp"

namespace hypertrop {

std::vector<int> SpaceCurve::valences() const {
  std::vector<int> val(vertices.size(), 0);
  for (const auto& e : edges) {
    ++val[e.v0];
    if (e.v1 >= 0) ++val[e.v1];
  }
  return val;
}

MetricGraph SpaceCurve::bounded_graph() const {
  MetricGraph g;
  g.num_vertices = static_cast<int>(vertices.size());
  for (const auto& e : edges)
    if (e.v1 >= 0) g.edges.push_back({e.v0, e.v1, e.length, e.mult});
  return g;
}

std::vector<int> SpaceCurve::core_edges() const {
  std::vector<int> bounded;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].v1 >= 0) bounded.push_back(i);
  std::vector<int> out;
  for (int k : bounded_graph().core_edges()) out.push_back(bounded[k]);
  return out;
}

std::vector<std::string> SpaceCurve::balancing_failures() const {
  std::vector<std::vector<long>> sum(vertices.size(), std::vector<long>(coords.size(), 0));
  for (const auto& e : edges)
    for (std::size_t k = 0; k < coords.size(); ++k) {
      sum[e.v0][k] += e.mult * e.dir[k];
      if (e.v1 >= 0) sum[e.v1][k] -= e.mult * e.dir[k];
    }
  std::vector<std::string> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (std::any_of(sum[v].begin(), sum[v].end(), [](long c) { return c != 0; })) {
      std::string p;
      for (const auto& c : vertices[v]) p += (p.empty() ? "" : ",") + rat_str(c);
      out.push_back("unbalanced at (" + p + ")");
    }
  return out;
}

std::vector<std::pair<std::vector<long>, int>> SpaceCurve::star(int v) const {
  std::vector<std::pair<std::vector<long>, int>> out;
  for (const auto& e : edges) {
    if (e.v0 == v) out.push_back({e.dir, e.mult});
    if (e.v1 == v) {
      std::vector<long> d = e.dir;
      for (auto& x : d) x = -x;
      out.push_back({d, e.mult});
    }
  }
  return out;
}

bool star_multiplicity_one(const std::vector<std::pair<std::vector<long>, int>>& star) {
  if (star.empty()) return false;
  const std::size_t n = star.front().first.size();
  // Odometer over sub-weightings 0 <= w_i <= m_i.
  std::vector<int> w(star.size(), 0);
  for (;;) {
    std::size_t k = 0;
    while (k < w.size() && w[k] == star[k].second) w[k++] = 0;
    if (k == w.size()) return true;
    ++w[k];
    bool full = true;
    for (std::size_t i = 0; i < w.size(); ++i) full = full && w[i] == star[i].second;
    if (full) continue;
    bool balanced = true;
    for (std::size_t c = 0; c < n && balanced; ++c) {
      long s = 0;
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * star[i].first[c];
      balanced = s == 0;
    }
    if (balanced) return false;
  }
}

}  // namespace hypertrop
