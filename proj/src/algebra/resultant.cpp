#include "hypertrop/resultant.hpp"

#include <utility>

#include "hypertrop/errors.hpp"

namespace hypertrop {

namespace {

using UPoly = std::vector<MPoly>;  // coefficients, index = degree

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
UPoly prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const MPoly& lb = b.back();
  int e = deg(a) - db + 1;
  while (!a.empty() && deg(a) >= db) {
    MPoly la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    a.back() = MPoly(a.back().vars());
    trim(a);
    --e;
  }
  if (e > 0) {
    MPoly f = lb.pow(e);
    for (auto& c : a) c *= f;
  }
  return a;
}

MPoly subresultant_prs(UPoly a, UPoly b, const std::vector<std::string>& ring) {
  int sign = 1;
  if (deg(a) < deg(b)) {
    if (deg(a) % 2 == 1 && deg(b) % 2 == 1) sign = -1;
    std::swap(a, b);
  }
  if (deg(b) == 0) {
    MPoly r = b[0].pow(deg(a));
    return sign < 0 ? -r : r;
  }
  MPoly g = MPoly::constant(RatFunc(1), ring);
  MPoly h = g;
  while (true) {
    int delta = deg(a) - deg(b);
    if (deg(a) % 2 == 1 && deg(b) % 2 == 1) sign = -sign;
    UPoly r = prem(a, b);
    if (r.empty()) return MPoly(ring);
    a = std::move(b);
    MPoly div = g * h.pow(delta);
    for (auto& c : r) c = c.divide_exact(div);
    b = std::move(r);
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = g.pow(delta).divide_exact(h.pow(delta - 1));
    }
    if (deg(b) == 0) {
      int da = deg(a);
      MPoly res = b.back().pow(da);
      if (da > 1) res = res.divide_exact(h.pow(da - 1));
      return sign < 0 ? -res : res;
    }
  }
}

// Reduce p modulo the monic polynomial m (monic after dividing by unit lc).
UPoly reduce_mod(UPoly p, const UPoly& m) {
  const int dm = deg(m);
  while (!p.empty() && deg(p) >= dm) {
    MPoly lc = p.back();
    int shift = deg(p) - dm;
    for (int i = 0; i < dm; ++i) p[i + shift] -= lc * m[i];
    p.pop_back();
    trim(p);
  }
  return p;
}

// Product of a over the roots of b: det of multiplication by a on
// R[X]/(b), valid when lc(b) is a unit of Q(t).
MPoly norm_of(const UPoly& a, UPoly b, const std::vector<std::string>& ring) {
  const int n = deg(b);
  RatFunc inv = b.back().constant_value().inverse();
  for (auto& c : b) c *= inv;
  std::vector<std::vector<MPoly>> mat(n, std::vector<MPoly>(n, MPoly(ring)));
  UPoly cur = reduce_mod(a, b);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n && i <= deg(cur); ++i) mat[i][j] = cur[i];
    if (j + 1 < n) {
      cur.insert(cur.begin(), MPoly(ring));
      cur = reduce_mod(cur, b);
    }
  }
  return bareiss_determinant(std::move(mat));
}

}  // namespace

MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(RatFunc(1));
  std::vector<std::string> ring = m[0][0].vars();
  for (auto& row : m)
    for (auto& e : row)
      if (e.vars() != ring) {
        e = e.with_vars(ring);
      }
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (n == 3) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
  int sign = 1;
  MPoly prev = MPoly::constant(RatFunc(1), ring);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly(ring);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = v.divide_exact(prev);
      }
      m[i][k] = MPoly(ring);
    }
    prev = m[k][k];
  }
  MPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

MPoly resultant(const MPoly& f, const MPoly& g, const std::string& var, ResultantMethod method) {
  std::vector<std::string> all = f.vars();
  for (const auto& v : g.vars())
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  if (std::find(all.begin(), all.end(), var) == all.end()) all.push_back(var);
  MPoly ff = f.with_vars(all), gg = g.with_vars(all);
  std::vector<std::string> ring = all;
  ring.erase(std::find(ring.begin(), ring.end(), var));
  if (ff.is_zero() || gg.is_zero()) return MPoly(ring);
  UPoly a = ff.coeffs_in(var), b = gg.coeffs_in(var);
  for (auto& c : a) c = c.with_vars(ring);
  for (auto& c : b) c = c.with_vars(ring);
  trim(a);
  trim(b);
  const int da = deg(a), db = deg(b);
  if (da == 0 && db == 0) return MPoly::constant(RatFunc(1), ring);
  if (da == 0) return a[0].pow(db);
  if (db == 0) return b[0].pow(da);

  bool a_unit = a.back().is_constant();
  bool b_unit = b.back().is_constant();
  if (method == ResultantMethod::Norm && !a_unit && !b_unit)
    throw DomainError("norm resultant needs a unit leading coefficient");
  if (method == ResultantMethod::Norm || (method == ResultantMethod::Auto && (a_unit || b_unit))) {
    if (a_unit) {
      // Res(a, b) = lc(a)^db * prod_{a(r)=0} b(r)
      MPoly n = norm_of(b, a, ring);
      return n * a.back().constant_value().pow(db);
    }
    // Res(a, b) = (-1)^(da db) lc(b)^da * prod_{b(r)=0} a(r)
    MPoly n = norm_of(a, b, ring) * b.back().constant_value().pow(da);
    return (da % 2 == 1 && db % 2 == 1) ? -n : n;
  }
  return subresultant_prs(std::move(a), std::move(b), ring);
}

}  // namespace hypertrop
