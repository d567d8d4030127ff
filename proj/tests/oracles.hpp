#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hypertrop/mpoly.hpp"

namespace oracle {

using hypertrop::MPoly;
using hypertrop::Rat;

// Determinant over Q by Gaussian elimination with rational pivots.
inline Rat det_q(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

// Sylvester resultant of two univariate rational polynomials given by
// coefficient vectors (index = degree, top coefficient nonzero).
inline Rat sylvester_q(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  const int n = da + db;
  if (n == 0) return 1;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) m[r][r + da - k] = a[k];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) m[db + r][r + db - k] = b[k];
  return det_q(m);
}

// Fraction-free Sylvester determinant over Q(t)[vars], written without
// pivot-division tricks beyond Bareiss' exact quotient.
inline MPoly sylvester_bareiss(const MPoly& f, const MPoly& g, const std::string& var) {
  std::vector<std::string> all = f.vars();
  for (const auto& v : g.vars())
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  std::vector<std::string> ring = all;
  ring.erase(std::find(ring.begin(), ring.end(), var));
  auto a = f.with_vars(all).coeffs_in(var);
  auto b = g.with_vars(all).coeffs_in(var);
  for (auto& c : a) c = c.with_vars(ring);
  for (auto& c : b) c = c.with_vars(ring);
  const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  const int n = da + db;
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(ring)));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) m[r][r + da - k] = a[k];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) m[db + r][r + db - k] = b[k];
  int sign = 1;
  MPoly prev = MPoly::constant(hypertrop::RatFunc(1), ring);
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly(ring);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = MPoly(ring);
    }
    prev = m[k][k];
  }
  return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Random polynomial with small integer coefficients times powers of t.
inline MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int nterms,
                         int max_tpow = 3) {
  std::uniform_int_distribution<int> coef(-5, 5), tp(0, max_tpow), dg(0, max_deg);
  MPoly p(vars);
  for (int i = 0; i < nterms; ++i) {
    hypertrop::Exponent e(vars.size());
    int budget = max_deg;
    for (auto& v : e) {
      std::uniform_int_distribution<int> d(0, budget);
      v = d(rng);
      budget -= v;
    }
    int c = coef(rng);
    if (c == 0) c = 1;
    p += MPoly::monomial(hypertrop::RatFunc::monomial(Rat(c), tp(rng)), e, vars);
  }
  (void)dg;
  return p;
}

// Cycle lengths of y^2 = prod (x - r) for finite roots r (odd count) read off
// the cluster picture: each proper even cluster s contributes a cycle of
// length 2 (depth(s) - depth(parent)). Valid when no cluster has two even
// children, i.e. for chains of cycles joined by bridges.
inline std::vector<Rat> cluster_cycle_lengths(const std::vector<hypertrop::RatFunc>& roots) {
  const std::size_t n = roots.size();
  auto d = [&](std::size_t i, std::size_t j) { return Rat((roots[i] - roots[j]).val()); };
  // Depth of a set: the least pairwise valuation.
  auto depth = [&](const std::vector<std::size_t>& s) {
    Rat m = d(s[0], s[1]);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) m = std::min(m, d(s[i], s[j]));
    return m;
  };
  std::vector<Rat> out;
  // Recursively split a cluster into maximal subclusters: i ~ j when
  // d(i, j) > depth of the parent.
  std::function<void(const std::vector<std::size_t>&)> walk = [&](const std::vector<std::size_t>& s) {
    if (s.size() < 2) return;
    Rat ds = depth(s);
    std::vector<std::vector<std::size_t>> kids;
    for (std::size_t i : s) {
      bool placed = false;
      for (auto& k : kids)
        if (d(i, k[0]) > ds) {
          k.push_back(i);
          placed = true;
          break;
        }
      if (!placed) kids.push_back({i});
    }
    for (const auto& k : kids) {
      if (k.size() >= 2 && k.size() % 2 == 0) out.push_back(2 * (depth(k) - ds));
      walk(k);
    }
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  walk(all);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
