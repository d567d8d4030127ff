#include "hypertrop/cones.hpp"

#include <algorithm>

#include "hypertrop/errors.hpp"
#include "hypertrop/lp.hpp"

namespace hypertrop {

namespace {

Rat dot(const std::vector<Rat>& a, const Weight& u) {
  Rat s;
  for (std::size_t k = 0; k < a.size() && k < u.size(); ++k) s += a[k] * u[k];
  return s;
}

Rat l1(const std::vector<Rat>& a) {
  Rat s;
  for (const auto& v : a) s += abs(v);
  return s;
}

const char* kDominanceNames[] = {"alpha", "beta", "gamma", "delta", "phi"};

// Interior LP: maximize s subject to the cone with slack s, extra
// non-strict rows, and the box [-1, 1]^6.
LpResult slack_lp(const Cone& c, const std::vector<std::vector<Rat>>& extra) {
  const std::size_t n = kNumWeights + 1;
  std::vector<LinRow> rows;
  for (const auto& q : c.ineqs) {
    LinRow r{std::vector<Rat>(n), Rel::Ge, Rat(0)};
    for (std::size_t k = 0; k < kNumWeights; ++k) r.a[k] = q.a[k];
    if (q.strict) r.a[kNumWeights] = -l1(q.a);
    rows.push_back(std::move(r));
  }
  for (const auto& a : extra) {
    LinRow r{std::vector<Rat>(n), Rel::Ge, Rat(0)};
    for (std::size_t k = 0; k < kNumWeights; ++k) r.a[k] = a[k];
    rows.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < kNumWeights; ++k) {
    LinRow lo{std::vector<Rat>(n), Rel::Ge, Rat(-1)};
    lo.a[k] = 1;
    LinRow hi{std::vector<Rat>(n), Rel::Le, Rat(1)};
    hi.a[k] = 1;
    rows.push_back(std::move(lo));
    rows.push_back(std::move(hi));
  }
  LinRow cap{std::vector<Rat>(n), Rel::Le, Rat(1)};
  cap.a[kNumWeights] = 1;
  rows.push_back(std::move(cap));
  std::vector<Rat> obj(n);
  obj[kNumWeights] = 1;
  return lp_maximize(obj, rows);
}

bool has_strict(const Cone& c) {
  return std::any_of(c.ineqs.begin(), c.ineqs.end(), [](const ConeIneq& q) { return q.strict; });
}

bool interior_nonempty(const LpResult& r, const Cone& c) {
  if (r.status != LpStatus::Optimal) return false;
  return !has_strict(c) || sgn(r.value) > 0;
}

std::string refinement_label(const std::string& base, unsigned mask) {
  std::string s = base + "[";
  for (int d = 0; d < 5; ++d) {
    if (d) s += ",";
    s += kDominanceNames[d];
    s += (mask >> d) & 1 ? ">" : "<";
  }
  return s + "]";
}

const std::vector<std::vector<Cone>>& refined_xz_cones() {
  static const std::vector<std::vector<Cone>> cache = [] {
    std::vector<std::vector<Cone>> out;
    for (const auto& c : xz_cones()) out.push_back(dominance_refinement(c));
    return out;
  }();
  return cache;
}

}  // namespace

bool Cone::contains(const Weight& u) const {
  for (const auto& q : ineqs) {
    int s = sgn(dot(q.a, u));
    if (s < 0 || (s == 0 && q.strict)) return false;
  }
  return true;
}

bool Cone::closure_contains(const Weight& u) const {
  for (const auto& q : ineqs)
    if (sgn(dot(q.a, u)) < 0) return false;
  return true;
}

bool Cone::is_feasible() const { return interior_nonempty(slack_lp(*this, {}), *this); }

WeightForm wf(std::initializer_list<std::pair<WeightIndex, long>> terms) {
  WeightForm f{};
  for (const auto& [i, c] : terms) f[i] += c;
  return f;
}

ConeIneq omega_lt(const WeightForm& lhs, const WeightForm& rhs) {
  // omega = -u, so lhs(omega) < rhs(omega) iff (lhs - rhs).u > 0.
  ConeIneq q;
  q.a.resize(kNumWeights);
  for (std::size_t k = 0; k < kNumWeights; ++k) q.a[k] = lhs[k] - rhs[k];
  return q;
}

Rat omega_value(const WeightForm& f, const Weight& u) {
  Rat s;
  for (std::size_t k = 0; k < kNumWeights; ++k) s -= f[k] * u[k];
  return s;
}

Cone theta3_cone() {
  Cone c;
  c.label = "C";
  auto u_gt = [&](WeightIndex a, WeightIndex b) { c.add(omega_lt(wf({{a, 1}}), wf({{b, 1}}))); };
  u_gt(W7, W6);
  u_gt(W6, W56);
  u_gt(W6, W4);
  u_gt(W4, W34);
  u_gt(W4, W2);
  return c;
}

std::vector<Cone> xz_cones() {
  const std::array<std::pair<WeightForm, WeightForm>, 4> first = {{
      {wf({{W6, 2}}), wf({{W56, 1}, {W7, 1}})},
      {wf({{W6, 2}}), wf({{W4, 1}, {W7, 1}})},
      {wf({{W56, 1}, {W7, 1}}), wf({{W6, 2}})},
      {wf({{W4, 1}, {W7, 1}}), wf({{W6, 2}})},
  }};
  const std::array<std::pair<WeightForm, WeightForm>, 4> third = {{
      {wf({{W4, 2}}), wf({{W34, 1}, {W6, 1}})},
      {wf({{W4, 2}}), wf({{W2, 1}, {W6, 1}})},
      {wf({{W34, 1}, {W6, 1}}), wf({{W4, 2}})},
      {wf({{W2, 1}, {W6, 1}}), wf({{W4, 2}})},
  }};
  std::vector<Cone> out;
  for (int i = 0; i < 4; ++i) {
    for (int l = 0; l < 4; ++l) {
      Cone c = theta3_cone();
      c.xz_row = i + 1;
      c.xz_letter = static_cast<char>('A' + l);
      c.label = std::string("C_{") + std::to_string(i + 1) + c.xz_letter + "}";
      c.add(omega_lt(first[i].first, first[i].second));
      bool fifty_six_below = i == 0 || i == 2;
      c.add(fifty_six_below ? omega_lt(wf({{W56, 1}}), wf({{W4, 1}})) : omega_lt(wf({{W4, 1}}), wf({{W56, 1}})));
      c.add(omega_lt(third[l].first, third[l].second));
      bool thirty_four_below = l == 0 || l == 2;
      c.add(thirty_four_below ? omega_lt(wf({{W34, 1}}), wf({{W2, 1}})) : omega_lt(wf({{W2, 1}}), wf({{W34, 1}})));
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::pair<WeightForm, WeightForm> dominance_condition(Dominance d, bool two_below) {
  WeightIndex m = two_below ? W2 : W34;
  WeightIndex M = two_below ? W34 : W2;
  switch (d) {
    case Dominance::Alpha:
      return {wf({{W4, 2}}), wf({{m, 1}, {W56, 1}})};
    case Dominance::Beta:
      return {wf({{M, 1}, {W56, 1}}), wf({{m, 1}, {W6, 1}})};
    case Dominance::Gamma:
      return {wf({{m, 1}, {W4, 1}}), wf({{M, 1}, {W56, 1}})};
    case Dominance::Delta:
      return {wf({{m, 1}, {W6, 2}}), wf({{W4, 2}, {W7, 1}})};
    case Dominance::Phi:
      return {wf({{W4, 2}}), wf({{W56, 1}, {W6, 1}})};
  }
  return {};
}

int dominance_side(Dominance d, const Weight& u) {
  bool two_below = u[W2] > u[W34];  // omega_2 < omega_34
  auto [lhs, rhs] = dominance_condition(d, two_below);
  return sgn(omega_value(rhs, u) - omega_value(lhs, u));
}

int xz_row_of(const Weight& u) {
  Rat w4 = -u[W4], w56 = -u[W56], w6 = -u[W6], w7 = -u[W7];
  if (w56 < w4) {
    int s = sgn(w56 + w7 - 2 * w6);
    return s > 0 ? 1 : s < 0 ? 3 : 0;
  }
  if (w4 < w56) {
    int s = sgn(w4 + w7 - 2 * w6);
    return s > 0 ? 2 : s < 0 ? 4 : 0;
  }
  return 0;
}

char xz_letter_of(const Weight& u) {
  Rat w2 = -u[W2], w34 = -u[W34], w4 = -u[W4], w6 = -u[W6];
  if (w34 < w2) {
    int s = sgn(w34 + w6 - 2 * w4);
    return s > 0 ? 'A' : s < 0 ? 'C' : 0;
  }
  if (w2 < w34) {
    int s = sgn(w2 + w6 - 2 * w4);
    return s > 0 ? 'B' : s < 0 ? 'D' : 0;
  }
  return 0;
}

std::vector<Cone> dominance_refinement(const Cone& c) {
  if (c.xz_row != 2 && c.xz_row != 4) return {c};
  bool two_below = c.xz_letter == 'B' || c.xz_letter == 'D';
  std::vector<Cone> out;
  for (unsigned mask = 0; mask < 32; ++mask) {
    Cone r = c;
    for (int d = 0; d < 5; ++d) {
      auto [lhs, rhs] = dominance_condition(static_cast<Dominance>(d), two_below);
      r.add((mask >> d) & 1 ? omega_lt(rhs, lhs) : omega_lt(lhs, rhs));
    }
    if (!r.is_feasible()) continue;
    r.label = refinement_label(c.label, mask);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> classify_weight(const Weight& u) {
  std::vector<std::string> out;
  if (!theta3_cone().closure_contains(u)) return out;
  for (const auto& pieces : refined_xz_cones())
    for (const auto& p : pieces)
      if (p.closure_contains(u)) out.push_back(p.label);
  return out;
}

Weight sample_point(const Cone& c) {
  LpResult r = slack_lp(c, {});
  if (!interior_nonempty(r, c)) throw InfeasibleConeError("cone " + c.label + " has empty interior");
  return Weight(r.x.begin(), r.x.begin() + kNumWeights);
}

Weight integral_sample_point(const Cone& c) {
  Weight u = sample_point(c);
  Int lcm = 1;
  for (const auto& v : u) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  for (long lambda = 1; lambda <= lcm; ++lambda) {
    Weight w(kNumWeights);
    for (std::size_t k = 0; k < kNumWeights; ++k) {
      Rat x = u[k] * lambda + Rat(1, 2);
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      w[k] = Rat(fl);
    }
    if (c.contains(w)) return w;
  }
  for (auto& v : u) v *= lcm;
  return u;
}

std::set<int> leading_terms_over_cone(const std::vector<std::vector<int>>& exponents, const Cone& c) {
  for (const auto& e : exponents)
    if (e.size() != kNumWeights) throw DomainError("exponent vectors must have six entries");
  std::set<int> out;
  auto diff = [&](std::size_t m, std::size_t j) {
    std::vector<Rat> a(kNumWeights);
    for (std::size_t k = 0; k < kNumWeights; ++k) a[k] = exponents[m][k] - exponents[j][k];
    return a;
  };
  // Constraint generation: solve with the competitors seen so far and add
  // any competitor that beats m at the current optimum.
  for (std::size_t m = 0; m < exponents.size(); ++m) {
    std::vector<std::vector<Rat>> extra;
    for (;;) {
      LpResult r = slack_lp(c, extra);
      if (!interior_nonempty(r, c)) break;
      Weight u(r.x.begin(), r.x.begin() + kNumWeights);
      int worst = -1;
      Rat gap;
      for (std::size_t j = 0; j < exponents.size(); ++j) {
        Rat d = dot(diff(j, m), u);
        if (sgn(d) > 0 && (worst < 0 || d > gap)) {
          worst = static_cast<int>(j);
          gap = d;
        }
      }
      if (worst < 0) {
        out.insert(static_cast<int>(m));
        break;
      }
      extra.push_back(diff(m, static_cast<std::size_t>(worst)));
    }
  }
  return out;
}

std::vector<RatFunc> instantiate_beta(const Weight& u, const std::vector<Rat>& coeffs) {
  if (u.size() != kNumWeights || coeffs.size() != kNumWeights)
    throw DomainError("instantiate_beta needs six weights and six coefficients");
  std::vector<RatFunc> beta;
  for (std::size_t k = 0; k < kNumWeights; ++k) {
    if (u[k].get_den() != 1) throw ScalingRequiredError("weight entries must be integers; scale the weight first");
    if (sgn(coeffs[k]) == 0) throw DomainError("beta coefficients must be nonzero");
    beta.push_back(RatFunc::monomial(coeffs[k], -static_cast<int>(u[k].get_num().get_si())));
  }
  return beta;
}

ThreeThetaInstance three_theta_instance(const std::vector<RatFunc>& b) {
  const RatFunc &b2 = b[W2], &b34 = b[W34], &b4 = b[W4], &b56 = b[W56], &b6 = b[W6], &b7 = b[W7];
  ThreeThetaInstance inst;
  RatFunc b3 = b4 + b34, b5 = b6 + b56;
  inst.roots = {RatFunc(0), b2 * b2, b3 * b3, b4 * b4, b5 * b5, b6 * b6, -(b7 * b7)};
  const std::vector<std::string> vars{"x", "y"};
  MPoly x = MPoly::variable("x", vars), y = MPoly::variable("y", vars);
  MPoly prod = x;
  for (std::size_t i = 1; i < inst.roots.size(); ++i) prod *= x - MPoly::constant(inst.roots[i], vars);
  inst.g = y * y - prod;
  inst.f = y - (b4 * b3 * b6 * b5 * b7) * x + (b6 * b5 * b7) * x.pow(2) - b7 * x.pow(3);
  return inst;
}

}  // namespace hypertrop
