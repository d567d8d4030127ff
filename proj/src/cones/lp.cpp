#include "hypertrop/lp.hpp"

#include <stdexcept>

namespace hypertrop {

namespace {

// Dense tableau in canonical form: rows hold B^-1 [A | b].
struct Tableau {
  std::vector<std::vector<Rat>> t;
  std::vector<int> basis;
  std::size_t ncols = 0;  // structural columns, rhs excluded

  void pivot(std::size_t r, std::size_t c) {
    Rat p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      Rat f = t[i][c];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = static_cast<int>(c);
  }

  // Maximizes cost over columns with allowed[j]. Returns false if unbounded.
  // The reduced-cost row rides along as an extra tableau row.
  bool optimize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    const std::size_t m = t.size();
    std::vector<Rat> z(ncols + 1);
    for (std::size_t j = 0; j <= ncols; ++j) {
      if (j < ncols) z[j] = -cost[j];
      for (std::size_t i = 0; i < m; ++i)
        if (sgn(t[i][j]) != 0 && sgn(cost[basis[i]]) != 0) z[j] += cost[basis[i]] * t[i][j];
    }
    t.push_back(std::move(z));
    bool bounded = true;
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < ncols && enter < 0; ++j)
        if (allowed[j] && sgn(t[m][j]) < 0) enter = static_cast<int>(j);
      if (enter < 0) break;
      int leave = -1;
      Rat best;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rat ratio = t[i][ncols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) {
        bounded = false;
        break;
      }
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
    t.pop_back();
    return bounded;
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<Rat>& c, const std::vector<LinRow>& rows, const std::vector<bool>& nonneg) {
  const std::size_t n = c.size();
  auto is_nonneg = [&](std::size_t j) { return j < nonneg.size() && nonneg[j]; };

  // Column layout: split free variables, then slacks, then artificials.
  std::vector<int> pos(n), neg(n, -1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = static_cast<int>(col++);
    if (!is_nonneg(j)) neg[j] = static_cast<int>(col++);
  }
  const std::size_t nstruct = col;
  std::size_t nslack = 0;
  for (const auto& r : rows)
    if (r.rel != Rel::Eq) ++nslack;
  const std::size_t m = rows.size();
  // Rows reading a.x <= b with b >= 0 after sign normalization start with
  // their slack in the basis; the others get an artificial column.
  auto needs_artificial = [](const LinRow& r) {
    int sb = sgn(r.b);
    return !((r.rel == Rel::Le && sb >= 0) || (r.rel == Rel::Ge && sb <= 0));
  };
  std::size_t nart = 0;
  for (const auto& r : rows) nart += needs_artificial(r);
  const std::size_t art0 = nstruct + nslack;
  const std::size_t ncols = art0 + nart;

  Tableau tb;
  tb.ncols = ncols;
  tb.t.assign(m, std::vector<Rat>(ncols + 1));
  tb.basis.resize(m);
  std::size_t slack = nstruct, art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const LinRow& r = rows[i];
    if (r.a.size() > n) throw std::invalid_argument("lp row longer than objective");
    auto& row = tb.t[i];
    for (std::size_t j = 0; j < r.a.size(); ++j) {
      row[pos[j]] = r.a[j];
      if (neg[j] >= 0) row[neg[j]] = -r.a[j];
    }
    std::size_t own_slack = slack;
    if (r.rel == Rel::Le) row[slack++] = 1;
    if (r.rel == Rel::Ge) row[slack++] = -1;
    row[ncols] = r.b;
    bool flip = sgn(r.b) < 0 || (sgn(r.b) == 0 && r.rel == Rel::Ge);
    if (flip)
      for (auto& v : row) v = -v;
    if (needs_artificial(r)) {
      row[art] = 1;
      tb.basis[i] = static_cast<int>(art++);
    } else {
      tb.basis[i] = static_cast<int>(own_slack);
    }
  }

  LpResult res;
  if (nart > 0) {
    std::vector<Rat> phase1(ncols);
    for (std::size_t j = art0; j < ncols; ++j) phase1[j] = -1;
    std::vector<bool> all(ncols, true);
    tb.optimize(phase1, all);
    Rat infeas;
    for (std::size_t i = 0; i < m; ++i)
      if (tb.basis[i] >= static_cast<int>(art0)) infeas += tb.t[i][ncols];
    if (sgn(infeas) != 0) return res;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tb.t.size();) {
    if (tb.basis[i] < static_cast<int>(art0)) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < art0 && sgn(tb.t[i][j]) == 0) ++j;
    if (j < art0) {
      tb.pivot(i, j);
      ++i;
    } else {
      tb.t.erase(tb.t.begin() + static_cast<long>(i));
      tb.basis.erase(tb.basis.begin() + static_cast<long>(i));
    }
  }

  std::vector<Rat> cost(ncols);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos[j]] = c[j];
    if (neg[j] >= 0) cost[neg[j]] = -c[j];
  }
  std::vector<bool> allowed(ncols, false);
  for (std::size_t j = 0; j < art0; ++j) allowed[j] = true;
  if (!tb.optimize(cost, allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  std::vector<Rat> colval(ncols);
  for (std::size_t i = 0; i < tb.t.size(); ++i) colval[tb.basis[i]] = tb.t[i][ncols];
  res.status = LpStatus::Optimal;
  res.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = colval[pos[j]];
    if (neg[j] >= 0) res.x[j] -= colval[neg[j]];
    res.value += c[j] * res.x[j];
  }
  return res;
}

bool lp_feasible(const std::vector<LinRow>& rows, std::size_t nvars, const std::vector<bool>& nonneg) {
  return lp_maximize(std::vector<Rat>(nvars), rows, nonneg).status != LpStatus::Infeasible;
}

}  // namespace hypertrop
