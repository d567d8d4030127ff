#include <doctest.h>

#include <random>

#include "hypertrop/cones.hpp"
#include "hypertrop/errors.hpp"
#include "hypertrop/hyperelliptic.hpp"
#include "hypertrop/parse.hpp"
#include "hypertrop/tropical.hpp"

using namespace hypertrop;

namespace {

RatFunc T(const std::string& s) { return parse_ratfunc(s); }

HECurve curve(std::initializer_list<const char*> roots) {
  std::vector<RootSpec> rs;
  for (const char* r : roots) rs.push_back(RootSpec::of(T(r)));
  return HECurve::from_roots(rs);
}

MPoly P(const std::string& s) { return parse_expr(s, {"x", "y"}); }

std::vector<BlockKind> kinds(const std::vector<BuildingBlock>& bs) {
  std::vector<BlockKind> k;
  for (const auto& b : bs) k.push_back(b.kind);
  return k;
}

}  // namespace

TEST_CASE("defining polynomial expands the root product") {
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8"});
  CHECK(c.genus() == 2);
  CHECK(c.defining_poly() == P("y^2 - x*(x-t^2)*(x-t^4)*(x-t^6)*(x-t^8)"));
  HECurve e = HECurve::from_roots({RootSpec::square(T("3*t")), RootSpec::square(T("1+t"), -1)});
  CHECK(e.defining_poly() == P("y^2 - x*(x-9*t^2)*(x+(1+t)^2)"));
}

TEST_CASE("invalid root lists") {
  CHECK_THROWS_AS(curve({"t^2", "t^2"}), DomainError);
  CHECK_THROWS_AS(HECurve::from_roots({RootSpec::of(T("t^2")), RootSpec::square(T("t"))}), DomainError);
  CHECK_THROWS_AS(curve({"t^2", "0"}), DomainError);
  CHECK_THROWS_AS(curve({"t^2", "t^4", "t^6"}), DomainError);
}

TEST_CASE("two cycles separated by a bridge") {
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8"});
  auto blocks = detect_blocks(c);
  REQUIRE(kinds(blocks) == std::vector<BlockKind>{BlockKind::Cycle, BlockKind::Bridge, BlockKind::Cycle});
  CHECK(blocks[0].start_index == 1);
  CHECK(blocks[1].start_index == 3);
  CHECK(blocks[2].start_index == 3);
  CHECK(expected_betti(blocks) == 2);

  BlockReembedding f1 = reembedding_for_block(blocks[0], c);
  BlockReembedding f2 = reembedding_for_block(blocks[2], c);
  CHECK(f1.f == P("y - t^6*x"));
  CHECK(f2.f == P("y - t*x^2"));
  // -prod of the roots is -t^12, so the positive product is used.
  CHECK(f1.sign_flipped == std::vector<int>{1});
  CHECK_THROWS_AS(reembedding_for_block(blocks[1], c), DomainError);

  CHECK(combine_reembeddings({f1.f, f2.f}, c) == P("y - t^6*x - t*x^2"));
  CHECK(combine_reembeddings({f1.f}, c) == f1.f);
  CHECK_THROWS_AS(combine_reembeddings({f1.f, P("y - x - t*x^2")}, c), CombinationError);

  ReembedPlan split = reembedding_plan(c, false);
  CHECK(split.generators.size() == 3);
  CHECK(split.new_vars == std::vector<std::string>{"z1", "z2"});
  ReembedPlan joined = reembedding_plan(c, true);
  REQUIRE(joined.generators.size() == 2);
  CHECK(joined.combined);
  CHECK(joined.new_vars == std::vector<std::string>{"z"});
  CHECK(joined.fs[0].to_string(true) == "y - t^6*x - t*x^2");
  CHECK(joined.generators[1] == parse_expr("z - (y - t^6*x - t*x^2)", {"x", "y", "z"}));
}

TEST_CASE("genus three chain of cycles") {
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8", "t^10", "t^12"});
  auto blocks = detect_blocks(c);
  CHECK(kinds(blocks) == std::vector<BlockKind>{BlockKind::Cycle, BlockKind::Bridge, BlockKind::Cycle,
                                                 BlockKind::Bridge, BlockKind::Cycle});
  // sqrt(t^10 t^8 t^6 t^4 t^2), sqrt(t^6 t^4 t^2), sqrt(t^2)
  ReembedPlan plan = reembedding_plan(c, true);
  REQUIRE(plan.fs.size() == 1);
  CHECK(plan.fs[0] == P("y - t^15*x - t^6*x^2 - t*x^3"));
}

TEST_CASE("genus one strata") {
  HECurve cyc = curve({"t^2", "t^4"});
  CHECK(kinds(detect_blocks(cyc)) == std::vector<BlockKind>{BlockKind::Cycle});
  CHECK(reembedding_plan(cyc, true).generators.size() == 2);
  CHECK(reembedding_plan(cyc, false).generators.size() == 2);

  auto kp = detect_blocks(curve({"t^2", "2*t^2"}));
  REQUIRE(kinds(kp) == std::vector<BlockKind>{BlockKind::KPoint});
  CHECK(kp[0].k == 1);
  CHECK_THROWS_AS(reembedding_plan(curve({"t^2", "2*t^2"}), false), UnsupportedStratumError);

  CHECK_THROWS_AS(detect_blocks(curve({"t^2", "t^2+t^3"})), UnsupportedStratumError);
}

TEST_CASE("cycle followed by a point connector") {
  // omega: -inf < -4 < -2 = -2 < 0 with distinct initials at the junction.
  HECurve c = curve({"t^4", "t^2", "4*t^2", "1"});
  auto blocks = detect_blocks(c);
  CHECK(kinds(blocks) == std::vector<BlockKind>{BlockKind::Cycle, BlockKind::PointConnector, BlockKind::Cycle});
  ReembedPlan plan = reembedding_plan(c, true);
  CHECK_FALSE(plan.combined);
  CHECK(plan.fs.size() == 2);
}

TEST_CASE("three-theta curves from the weight cone") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(1, 9);
  Weight u = integral_sample_point(theta3_cone());
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Rat> cs;
    for (int k = 0; k < kNumWeights; ++k) cs.push_back(Rat(coef(rng)));
    std::vector<RatFunc> b = instantiate_beta(u, cs);
    ThreeThetaInstance inst = three_theta_instance(b);
    HECurve c = HECurve::from_roots({RootSpec::square(b[W2]), RootSpec::square(b[W4] + b[W34]),
                                     RootSpec::square(b[W4]), RootSpec::square(b[W6] + b[W56]),
                                     RootSpec::square(b[W6]), RootSpec::square(b[W7], -1)});
    CHECK(c.defining_poly() == inst.g);
    auto blocks = detect_blocks(c);
    REQUIRE(kinds(blocks) == std::vector<BlockKind>{BlockKind::ThreeTheta});
    BlockReembedding r = reembedding_for_block(blocks[0], c);
    CHECK(r.f == inst.f);
    CHECK(r.sign_flipped.empty());
  }
}

TEST_CASE("block detection is stable under rescaling the roots") {
  std::vector<std::vector<const char*>> curves{
      {"t^2", "t^4", "t^6", "t^8"}, {"t^4", "t^2", "2*t^2", "1"}, {"t^2", "2*t^2"}, {"t", "t^3", "t^5", "t^7", "t^9", "t^11"}};
  for (const auto& roots : curves)
    for (long s : {2L, -3L, 5L}) {
      std::vector<RootSpec> a, b;
      for (const char* r : roots) {
        a.push_back(RootSpec::of(T(r)));
        b.push_back(RootSpec::of(T(r) * RatFunc(s * s)));
      }
      auto ba = detect_blocks(HECurve::from_roots(a));
      auto bb = detect_blocks(HECurve::from_roots(b));
      REQUIRE(ba.size() == bb.size());
      for (std::size_t i = 0; i < ba.size(); ++i) {
        CHECK(ba[i].kind == bb[i].kind);
        CHECK(ba[i].start_index == bb[i].start_index);
      }
    }
}

TEST_CASE("curves given by their defining polynomial") {
  HECurve c = HECurve::from_poly(P("y^2-x^3-4*x^2-8*t^4*x"));
  CHECK(c.genus() == 1);
  auto blocks = detect_blocks(c);
  REQUIRE(kinds(blocks) == std::vector<BlockKind>{BlockKind::Cycle});
  BlockReembedding r = reembedding_for_block(blocks[0], c);
  CHECK(r.f == P("y - 2*x"));

  // Same blocks whether roots or the expanded polynomial are supplied.
  HECurve byroots = curve({"t^2", "t^4", "t^6", "t^8"});
  HECurve bypoly = HECurve::from_poly(byroots.defining_poly());
  CHECK(kinds(detect_blocks(bypoly)) == kinds(detect_blocks(byroots)));
  CHECK_THROWS_AS(HECurve::from_poly(P("y^2-x^4-x")), DomainError);
  CHECK_THROWS_AS(HECurve::from_poly(P("y^2-x^3-x^2")), DomainError);
}

TEST_CASE("pass-through check reports a missed edge") {
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8"});
  CHECK(pass_through_failure(P("y - t^6*x"), c.defining_poly(), {1}).empty());
  CHECK_FALSE(pass_through_failure(P("y - t^5*x"), c.defining_poly(), {1}).empty());
  CHECK_FALSE(pass_through_failure(P("y - t^6*x"), c.defining_poly(), {2}).empty());
}

TEST_CASE("j-invariant matches the Weierstrass formula") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
  int checked = 0;
  while (checked < 10) {
    Rat a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    Rat disc = 4 * a * a * a + 27 * b * b;
    if (disc == 0) continue;
    Rat want = 1728 * 4 * a * a * a / disc;
    MPoly f = P("y^2 - x^3") - MPoly::constant(RatFunc(a), {"x", "y"}) * P("x") -
              MPoly::constant(RatFunc(b), {"x", "y"});
    CHECK(j_invariant_cubic(f) == RatFunc(want));
    ++checked;
  }
  CHECK(j_invariant_cubic(P("x^3+y^3+1")).is_zero());
  CHECK(j_invariant_cubic(P("y^2-x^3-x")) == RatFunc(1728));
  CHECK_THROWS_AS(j_invariant_cubic(P("y^2-x^3")), DomainError);
  CHECK_THROWS_AS(j_invariant_cubic(P("y^2-x")), DomainError);
}

TEST_CASE("j-invariant of the cubic with a short cycle") {
  MPoly f = P("(-t^2)*x^3+(t^20)*x^2*y+(t^2)*x*y^2+(t^14)*y^3+(-3*t^3)*x^2+x*y+(t^3+t^5-t^6)*y^2+(-3*t^4)*x+(t+t^2)*y+(2*t^2+t^5)");
  RatFunc j = j_invariant_cubic(f);
  CHECK(std::abs(j.val()) == 10);
  MPoly g = f.substitute("x", P("x - t"));
  CHECK(j_invariant_cubic(g) == j);
  MPoly h = f.substitute("x", P("x + 3")).substitute("y", P("y + 3*x"));
  CHECK(j_invariant_cubic(h) == j);
  CHECK(trop_curve(g).cycle_lengths() == std::vector<Rat>{Rat(std::abs(j.val()))});
}
