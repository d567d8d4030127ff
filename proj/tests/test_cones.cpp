#include <doctest.h>

#include <random>

#include "hypertrop/cones.hpp"
#include "hypertrop/errors.hpp"
#include "hypertrop/lp.hpp"
#include "hypertrop/parse.hpp"

using namespace hypertrop;

namespace {

Weight W(std::initializer_list<Rat> v) { return Weight(v); }

const Cone& cone_by_label(const std::vector<Cone>& cs, const std::string& label) {
  for (const auto& c : cs)
    if (c.label == label) return c;
  throw std::runtime_error("no cone " + label);
}

// Random points of the open 3-theta cone built from its defining chain.
Weight random_theta3_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(1, 40), base(-30, 30);
  Rat u6 = base(rng);
  Rat u4 = u6 - d(rng);
  return W({u4 - d(rng), u4 - d(rng), u4, u6 - d(rng), u6, u6 + d(rng)});
}

Rat pairing(const Weight& u, const std::vector<int>& a) {
  Rat s;
  for (std::size_t k = 0; k < a.size(); ++k) s += u[k] * a[k];
  return s;
}

// Exponent vectors (b2, b34, b4, b56, b6, b7) of the x^i coefficient of the
// xz-projection g(x, z + h), computed symbolically with the betas as variables.
std::vector<std::vector<int>> xz_coefficient_exponents(int i) {
  const std::vector<std::string> vars{"x", "y", "z", "b2", "b34", "b4", "b56", "b6", "b7"};
  MPoly g = parse_expr(
      "y^2 - x*(x-b2^2)*(x-(b4+b34)^2)*(x-b4^2)*(x-(b6+b56)^2)*(x-b6^2)*(x+b7^2)", vars);
  MPoly y = parse_expr("z + b4*(b4+b34)*b6*(b6+b56)*b7*x - b6*(b6+b56)*b7*x^2 + b7*x^3", vars);
  MPoly gxz = g.substitute("y", y);
  std::vector<std::vector<int>> out;
  const int ix = gxz.var_index("x"), iz = gxz.var_index("z");
  REQUIRE(gxz.var_index("y") < 0);
  for (const auto& [e, c] : gxz.terms()) {
    if (e[ix] != i || e[iz] != 0) continue;
    std::vector<int> b;
    for (const char* name : {"b2", "b34", "b4", "b56", "b6", "b7"}) {
      int k = gxz.var_index(name);
      b.push_back(k < 0 ? 0 : e[k]);
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

TEST_CASE("exact simplex") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5)
  std::vector<LinRow> rows{{{1, 2}, Rel::Le, 4}, {{3, 1}, Rel::Le, 6}};
  LpResult r = lp_maximize({1, 1}, rows, {true, true});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(14, 5));
  CHECK(r.x[0] == Rat(8, 5));
  CHECK(r.x[1] == Rat(6, 5));
  CHECK(lp_maximize({1, 0}, {{{1, -1}, Rel::Le, 0}}).status == LpStatus::Unbounded);
  CHECK_FALSE(lp_feasible({{{1}, Rel::Ge, 2}, {{1}, Rel::Le, 1}}, 1));
  LpResult e = lp_minimize({1, 1}, {{{1, 1}, Rel::Eq, 3}, {{1, -1}, Rel::Eq, 1}});
  CHECK(e.value == 3);
  CHECK(e.x[0] == 2);
}

TEST_CASE("simplex matches vertex enumeration on random bounded 2D programs") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int it = 0; it < 100; ++it) {
    std::vector<LinRow> rows{{{1, 0}, Rel::Le, 5}, {{1, 0}, Rel::Ge, -5}, {{0, 1}, Rel::Le, 5}, {{0, 1}, Rel::Ge, -5}};
    for (int k = 0; k < 4; ++k) rows.push_back({{d(rng), d(rng)}, Rel::Le, Rat(d(rng))});
    std::vector<Rat> c{d(rng), d(rng)};
    auto ok = [&](const Rat& x, const Rat& y) {
      for (const auto& r : rows) {
        Rat v = r.a[0] * x + r.a[1] * y;
        if ((r.rel == Rel::Le && v > r.b) || (r.rel == Rel::Ge && v < r.b)) return false;
      }
      return true;
    };
    bool any = false;
    Rat best;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        Rat det = rows[i].a[0] * rows[j].a[1] - rows[i].a[1] * rows[j].a[0];
        if (sgn(det) == 0) continue;
        Rat x = (rows[i].b * rows[j].a[1] - rows[i].a[1] * rows[j].b) / det;
        Rat y = (rows[i].a[0] * rows[j].b - rows[i].b * rows[j].a[0]) / det;
        if (!ok(x, y)) continue;
        Rat v = c[0] * x + c[1] * y;
        if (!any || v > best) best = v;
        any = true;
      }
    LpResult r = lp_maximize(c, rows);
    if (!any) {
      CHECK(r.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == best);
    CHECK(ok(r.x[0], r.x[1]));
  }
}

TEST_CASE("3-theta cone membership") {
  Cone c = theta3_cone();
  CHECK(c.contains(W({1, Rat(1, 2), 2, Rat(3, 2), 3, 4})));
  CHECK_FALSE(c.contains(W({1, Rat(1, 2), 2, Rat(3, 2), 3, 3})));
  Weight s = sample_point(c);
  CHECK(c.contains(s));
}

TEST_CASE("xz cones are feasible and pairwise interior-disjoint") {
  auto cs = xz_cones();
  REQUIRE(cs.size() == 16);
  CHECK(cs.front().label == "C_{1A}");
  CHECK(cs.back().label == "C_{4D}");
  for (const auto& c : cs) {
    CHECK(c.is_feasible());
    CHECK(c.contains(sample_point(c)));
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      Cone both = cs[i];
      for (const auto& q : cs[j].ineqs) both.add(q);
      CHECK_MESSAGE(!both.is_feasible(), cs[i].label << " meets " << cs[j].label);
    }
}

TEST_CASE("C1 and C_D conditions") {
  auto cs = xz_cones();
  const Cone& c1a = cone_by_label(cs, "C_{1A}");
  Weight u = sample_point(c1a);
  // 2 w6 < w56 + w7 and w56 < w4 with w = -u.
  CHECK(-2 * u[W6] < -u[W56] - u[W7]);
  CHECK(-u[W56] < -u[W4]);
  const Cone& c2d = cone_by_label(cs, "C_{2D}");
  Weight v = sample_point(c2d);
  CHECK(-v[W2] - v[W6] < -2 * v[W4]);
  CHECK(-v[W2] < -v[W34]);
  CHECK(theta3_cone().contains(v));
}

TEST_CASE("random 3-theta points land in exactly one xz cone") {
  auto cs = xz_cones();
  std::mt19937 rng(11);
  int counted = 0;
  for (int it = 0; it < 300; ++it) {
    Weight u = random_theta3_point(rng);
    if (xz_row_of(u) == 0 || xz_letter_of(u) == 0) continue;
    int hits = 0;
    for (const auto& c : cs) hits += c.contains(u);
    CHECK(hits == 1);
    ++counted;
  }
  CHECK(counted > 200);
}

TEST_CASE("dominance refinement") {
  auto cs = xz_cones();
  auto r1 = dominance_refinement(cone_by_label(cs, "C_{1A}"));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].label == "C_{1A}");
  auto r2 = dominance_refinement(cone_by_label(cs, "C_{2A}"));
  CHECK(r2.size() > 1);
  for (const auto& p : r2) {
    CHECK(p.is_feasible());
    CHECK(p.label.rfind("C_{2A}[", 0) == 0);
  }
}

TEST_CASE("classify_weight") {
  auto cs = xz_cones();
  Weight u = sample_point(cone_by_label(cs, "C_{1A}"));
  CHECK(classify_weight(u) == std::vector<std::string>{"C_{1A}"});
  CHECK(classify_weight(W({0, 0, 0, 0, 2, 1})).empty());

  // Move onto the wall 2 w6 = w56 + w7 between C_1 and C_3.
  Weight wall = u;
  wall[W7] = 2 * u[W6] - u[W56];
  auto labels = classify_weight(wall);
  CHECK(std::find(labels.begin(), labels.end(), "C_{1A}") != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), "C_{3A}") != labels.end());

  std::mt19937 rng(5);
  for (int it = 0; it < 40; ++it) {
    Weight p = random_theta3_point(rng);
    Weight q = p;
    for (auto& v : q) v *= Rat(7, 3);
    CHECK(classify_weight(p) == classify_weight(q));
  }
}

TEST_CASE("sample points and integral samples") {
  for (const auto& c : xz_cones()) {
    Weight w = integral_sample_point(c);
    CHECK(c.contains(w));
    for (const auto& v : w) CHECK(v.get_den() == 1);
  }
  Cone half;
  half.label = "half";
  half.add({{0, 0, 0, 0, 0, 1}, true});
  CHECK(half.contains(sample_point(half)));
  Cone empty = theta3_cone();
  empty.add({{0, 0, 0, 0, 1, -1}, true});
  CHECK_THROWS_AS(sample_point(empty), InfeasibleConeError);
}

TEST_CASE("instantiate_beta") {
  std::vector<Rat> coeffs{3, 5, 7, 2, 11, 13};
  auto beta = instantiate_beta(W({2, 4, 20, 22, 24, 25}), coeffs);
  CHECK(beta[W7] == RatFunc::monomial(Rat(13), -25));
  CHECK(beta[W2].val() == -2);
  CHECK_THROWS_AS(instantiate_beta(W({Rat(1, 2), 4, 20, 22, 24, 25}), coeffs), ScalingRequiredError);
  coeffs[3] = 0;
  CHECK_THROWS_AS(instantiate_beta(W({2, 4, 20, 22, 24, 25}), coeffs), DomainError);
}

TEST_CASE("leading terms of the xz-projection") {
  auto cs = xz_cones();
  auto x5 = xz_coefficient_exponents(5);
  auto x3 = xz_coefficient_exponents(3);
  REQUIRE(!x5.empty());
  REQUIRE(!x3.empty());
  auto only = [](const std::vector<std::vector<int>>& ex, const std::set<int>& idx) {
    std::set<std::vector<int>> s;
    for (int i : idx) s.insert(ex[i]);
    return s;
  };
  using S = std::set<std::vector<int>>;
  for (char l : std::string("ABCD")) {
    std::string L(1, l);
    CHECK(only(x5, leading_terms_over_cone(x5, cone_by_label(cs, "C_{1" + L + "}"))) == S{{0, 0, 0, 0, 4, 0}});
    CHECK(only(x5, leading_terms_over_cone(x5, cone_by_label(cs, "C_{2" + L + "}"))) == S{{0, 0, 0, 0, 4, 0}});
    CHECK(only(x5, leading_terms_over_cone(x5, cone_by_label(cs, "C_{3" + L + "}"))) == S{{0, 0, 0, 2, 0, 2}});
    CHECK(only(x5, leading_terms_over_cone(x5, cone_by_label(cs, "C_{4" + L + "}"))) == S{{0, 0, 2, 0, 0, 2}});
  }
  for (char r : std::string("1234")) {
    std::string R(1, r);
    CHECK(only(x3, leading_terms_over_cone(x3, cone_by_label(cs, "C_{" + R + "D}"))) == S{{2, 0, 0, 0, 4, 2}});
    CHECK(only(x3, leading_terms_over_cone(x3, cone_by_label(cs, "C_{" + R + "C}"))) == S{{0, 2, 0, 0, 4, 2}});
    CHECK(only(x3, leading_terms_over_cone(x3, cone_by_label(cs, "C_{" + R + "A}"))) == S{{0, 0, 4, 0, 2, 2}});
    CHECK(only(x3, leading_terms_over_cone(x3, cone_by_label(cs, "C_{" + R + "B}"))) == S{{0, 0, 4, 0, 2, 2}});
  }
  CHECK(leading_terms_over_cone({{1, 2, 3, 4, 5, 6}}, cs[0]) == std::set<int>{0});
}

TEST_CASE("leading terms agree with sampled argmins") {
  auto cs = xz_cones();
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> ex(0, 4);
  std::vector<Weight> pool;
  for (int i = 0; i < 1500; ++i) pool.push_back(random_theta3_point(rng));
  for (int it = 0; it < 10; ++it) {
    std::vector<std::vector<int>> exps(5, std::vector<int>(6));
    for (auto& e : exps)
      for (auto& v : e) v = ex(rng);
    for (const auto& c : cs) {
      auto lt = leading_terms_over_cone(exps, c);
      std::set<int> seen;
      for (const auto& u : pool) {
        if (!c.contains(u)) continue;
        Rat best = pairing(u, exps[0]);
        for (const auto& e : exps) best = std::max(best, pairing(u, e));
        for (std::size_t m = 0; m < exps.size(); ++m)
          if (pairing(u, exps[m]) == best) seen.insert(static_cast<int>(m));
      }
      for (int m : seen) CHECK(lt.count(m) == 1);
    }
  }
}
