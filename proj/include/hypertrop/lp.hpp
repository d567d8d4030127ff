#pragma once

#include <vector>

#include "hypertrop/poly_t.hpp"

namespace hypertrop {

// Exact linear programming over Q (two-phase simplex, Bland's rule).

enum class Rel { Le, Eq, Ge };

struct LinRow {
  std::vector<Rat> a;
  Rel rel;
  Rat b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
};

// Maximize c.x subject to rows. Variables are free unless nonneg[j] is set.
LpResult lp_maximize(const std::vector<Rat>& c, const std::vector<LinRow>& rows,
                     const std::vector<bool>& nonneg = {});

inline LpResult lp_minimize(std::vector<Rat> c, const std::vector<LinRow>& rows,
                            const std::vector<bool>& nonneg = {}) {
  for (auto& v : c) v = -v;
  LpResult r = lp_maximize(c, rows, nonneg);
  r.value = -r.value;
  return r;
}

bool lp_feasible(const std::vector<LinRow>& rows, std::size_t nvars, const std::vector<bool>& nonneg = {});

}  // namespace hypertrop
