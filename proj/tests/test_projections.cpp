#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "hypertrop/cones.hpp"
#include "hypertrop/errors.hpp"
#include "hypertrop/hyperelliptic.hpp"
#include "hypertrop/parse.hpp"
#include "hypertrop/projections.hpp"
#include "oracles.hpp"

using namespace hypertrop;

namespace {

RatFunc T(const std::string& s) { return parse_ratfunc(s); }
MPoly P(const std::string& s) { return parse_expr(s, {"x", "y"}); }

HECurve curve(std::initializer_list<const char*> roots) {
  std::vector<RootSpec> rs;
  for (const char* r : roots) rs.push_back(RootSpec::of(T(r)));
  return HECurve::from_roots(rs);
}

std::vector<RatFunc> finite_roots(const HECurve& c) {
  std::vector<RatFunc> rs{RatFunc(0)};
  for (const auto& r : c.roots()) rs.push_back(r.value);
  return rs;
}

std::vector<Rat> sorted(std::vector<Rat> v) {
  std::sort(v.begin(), v.end());
  return v;
}

AffineForm form(long a, long b, long c, long d) { return {{Rat(a), Rat(b), Rat(c)}, Rat(d)}; }

bool has_reason(const Certificate& c, const std::string& needle) {
  return std::any_of(c.reasons.begin(), c.reasons.end(),
                     [&](const std::string& r) { return r.find(needle) != std::string::npos; });
}

// Every Faithful verdict in this file passes through here.
void audited(const Certificate& c, int genus) { CHECK(audit_certificate(c, genus)); }

}  // namespace

TEST_CASE("xz projection is the substitution y = z + h") {
  MPoly g = P("y^2 - x^3 - 4*x^2 - 8*t^4*x");
  MPoly xz = project_xz(g, P("y - 2*x"));
  CHECK(xz == parse_expr("(z + 2*x)^2 - x^3 - 4*x^2 - 8*t^4*x", {"x", "z"}));
  CHECK(project_xz(g, P("y")) == parse_expr("z^2 - x^3 - 4*x^2 - 8*t^4*x", {"x", "z"}));
  MPoly res = oracle::sylvester_bareiss(g, parse_expr("z - y + 2*x", {"x", "y", "z"}), "y");
  CHECK((res == xz || res == -xz));
  CHECK_THROWS_AS(project_xz(g, P("y^2 - x")), DomainError);
}

TEST_CASE("projections vanish along a parametrized curve") {
  // y^2 = x^2 (x + t) is parametrized by x = s^2 - t, y = s (s^2 - t).
  MPoly g = P("y^2 - x^2*(x + t)");
  MPoly f = P("y - t*x - x^2");
  MPoly xz = project_xz(g, f);
  MPoly yz = project_yz(g, f);
  MPoly gen = project_generic(g, f, default_plane());
  CHECK(!yz.is_zero());
  CHECK(!gen.is_zero());
  CHECK(yz.vars() == std::vector<std::string>{"y", "z"});
  CHECK(gen.vars() == std::vector<std::string>{"u", "v"});
  PlaneMatrix m = default_plane();
  for (Rat tv : {Rat(3, 2), Rat(-5, 7)})
    for (Rat s : {Rat(2), Rat(-3), Rat(5, 4), Rat(7, 3)}) {
      Rat x = s * s - tv, y = s * (s * s - tv);
      Rat z = y - tv * x - x * x;
      REQUIRE(x != 0);
      REQUIRE(y != 0);
      REQUIRE(z != 0);
      CHECK(xz.eval({{"x", x}, {"z", z}}, tv) == 0);
      CHECK(yz.eval({{"y", y}, {"z", z}}, tv) == 0);
      auto mono = [&](const std::array<long, 3>& r) {
        Rat v = 1;
        const Rat base[3] = {x, y, z};
        for (int k = 0; k < 3; ++k) {
          Rat b = r[k] >= 0 ? base[k] : 1 / base[k];
          for (long e = 0; e < std::abs(r[k]); ++e) v *= b;
        }
        return v;
      };
      CHECK(gen.eval({{"u", mono(m[0])}, {"v", mono(m[1])}}, tv) == 0);
    }
}

TEST_CASE("yz projection matches an independent resultant") {
  MPoly g = P("y^2 - x*(x - t^2)*(x - t^4)");
  MPoly f = P("y - t^3*x");
  MPoly yz = project_yz(g, f);
  MPoly ref = oracle::sylvester_bareiss(g, parse_expr("z - y + t^3*x", {"x", "y", "z"}), "x");
  CHECK(yz == normalize_content(strip_monomial_factor(ref.compact_vars())).with_vars({"y", "z"}));
}

TEST_CASE("generic plane selection") {
  PlaneMatrix m = default_plane();
  auto k = plane_kernel(m);
  CHECK(k == std::array<long, 3>{1, -1, -2});
  for (int r = 0; r < 2; ++r) CHECK(m[r][0] * k[0] + m[r][1] * k[1] + m[r][2] * k[2] == 0);
  CHECK(plane_violation(m, P("y - t^6*x - t*x^2")).empty());
  // The graph cell of y^2 contains the kernel direction (1, -1, -2).
  CHECK(!plane_violation(m, P("y^2 - x")).empty());
  PlaneMatrix chosen = choose_plane({P("y^2 - x")});
  CHECK(chosen == fallback_planes()[0]);
  CHECK(plane_violation(chosen, P("y^2 - x")).empty());
  PlaneMatrix singular{{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}};
  CHECK(plane_violation(singular, P("y - x")) == "matrix is not unimodular");
  PlaneMatrix coordinate{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK(!plane_violation(coordinate, P("y - x")).empty());
  CHECK_THROWS_AS(project_generic(P("y^2 - x^3 - x"), P("y^2 - x"), m), InvalidPlaneError);
}

TEST_CASE("modification along a tropical line segment") {
  // min(X + 2, Y): two graph cells and one wall above the break line.
  PolyComplex3 pc = modification_complex(tropicalize(P("t^2*x + y")));
  REQUIRE(pc.cells.size() == 3);
  Cell3 z_eq_x{{form(-1, 0, 1, -2)}, {form(-1, 1, 0, -2)}, 2, ""};
  Cell3 z_eq_y{{form(0, -1, 1, 0)}, {form(1, -1, 0, 2)}, 2, ""};
  Cell3 wall{{form(1, -1, 0, 2)}, {form(0, -1, 1, 0)}, 2, ""};
  for (const auto& want : {z_eq_x, z_eq_y, wall})
    CHECK(std::count_if(pc.cells.begin(), pc.cells.end(),
                        [&](const Cell3& c) { return same_polyhedron(c, want); }) == 1);
  PolyComplex3 single = modification_complex(tropicalize(P("t^3*x^2*y")));
  REQUIRE(single.cells.size() == 1);
  CHECK(same_polyhedron(single.cells[0], Cell3{{form(-2, -1, 1, -3)}, {}, 2, ""}));
}

TEST_CASE("modification along a quadratic") {
  // min(Y, X + 6, 2X + 1): graph cells Z = Y, Z = X + 6 (X >= 5),
  // Z = 2X + 1 (X <= 5), and walls over the three edges of the break locus.
  PolyComplex3 pc = modification_complex(tropicalize(P("y - t^6*x - t*x^2")));
  std::vector<Cell3> want{
      {{form(0, -1, 1, 0)}, {form(1, -1, 0, 6), form(2, -1, 0, 1)}, 2, ""},
      {{form(-1, 0, 1, -6)}, {form(-1, 1, 0, -6), form(1, 0, 0, -5)}, 2, ""},
      {{form(-2, 0, 1, -1)}, {form(-2, 1, 0, -1), form(-1, 0, 0, 5)}, 2, ""},
      {{form(1, 0, 0, -5)}, {form(0, 1, 0, -11), form(0, 0, 1, -11)}, 2, ""},
      {{form(1, -1, 0, 6)}, {form(0, -1, 1, 0), form(1, 0, 0, -5)}, 2, ""},
      {{form(2, -1, 0, 1)}, {form(0, -1, 1, 0), form(-1, 0, 0, 5)}, 2, ""},
  };
  REQUIRE(pc.cells.size() == want.size());
  for (const auto& w : want)
    CHECK(std::count_if(pc.cells.begin(), pc.cells.end(), [&](const Cell3& c) { return same_polyhedron(c, w); }) ==
          1);
}

TEST_CASE("nine cells of the three-theta modification") {
  Weight u = integral_sample_point(theta3_cone());
  std::vector<RatFunc> b = instantiate_beta(u, {Rat(2), Rat(3), Rat(5), Rat(7), Rat(11), Rat(13)});
  ThreeThetaInstance inst = three_theta_instance(b);
  MPoly f = inst.f.with_vars({"x", "y"});
  // Max convention: A, B, C are the negated valuations of the x, x^2, x^3
  // coefficients of y - f.
  Rat A = -f.coefficient({1, 0}).val(), B = -f.coefficient({2, 0}).val(), C = -f.coefficient({3, 0}).val();
  REQUIRE(A - B < B - C);
  PolyComplex3 pc = modification_complex(tropicalize(f), Convention::Max);
  auto F = [](Rat a, Rat b, Rat c, Rat d) { return AffineForm{{a, b, c}, d}; };
  // Rows read off the listed systems, each written as an (in)equality >= 0.
  std::vector<Cell3> sigma{
      {{F(-1, 0, 1, -A)}, {F(1, -1, 0, A), F(-1, 0, 0, A - B)}, 2, "s1"},
      {{F(-2, 0, 1, -B)}, {F(2, -1, 0, B), F(-1, 0, 0, B - C), F(1, 0, 0, B - A)}, 2, "s2"},
      {{F(-3, 0, 1, -C)}, {F(3, -1, 0, C), F(1, 0, 0, C - B)}, 2, "s3"},
      {{F(1, 0, 0, B - A)}, {F(0, 0, -1, 2 * A - B), F(0, -1, 0, 2 * A - B)}, 2, "s4"},
      {{F(1, 0, 0, C - B)}, {F(0, 0, -1, 3 * B - 2 * C), F(0, -1, 0, 3 * B - 2 * C)}, 2, "s5"},
      {{F(-1, 1, 0, -A)}, {F(0, 1, -1, 0), F(-1, 0, 0, A - B)}, 2, "s6"},
      {{F(-2, 1, 0, -B)}, {F(0, 1, -1, 0), F(1, 0, 0, B - A), F(-1, 0, 0, B - C)}, 2, "s7"},
      {{F(-3, 1, 0, -C)}, {F(0, 1, -1, 0), F(1, 0, 0, C - B)}, 2, "s8"},
      {{F(0, -1, 1, 0)}, {F(-1, 1, 0, -A), F(-2, 1, 0, -B), F(-3, 1, 0, -C)}, 2, "s9"},
  };
  REQUIRE(pc.cells.size() == 9);
  for (const auto& s : sigma) {
    INFO(s.label);
    CHECK(std::count_if(pc.cells.begin(), pc.cells.end(), [&](const Cell3& c) { return same_polyhedron(c, s); }) ==
          1);
  }
}

TEST_CASE("weighted stars") {
  using Star = std::vector<std::pair<std::vector<long>, int>>;
  CHECK(star_multiplicity_one(Star{{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}));
  // Two crossing lines.
  CHECK(!star_multiplicity_one(Star{{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}));
  // A doubled tripod.
  CHECK(!star_multiplicity_one(Star{{{1, 0}, 2}, {{0, 1}, 2}, {{-1, -1}, 2}}));
  CHECK(star_multiplicity_one(Star{{{0, 1, 0}, 1}, {{-2, -3, -3}, 1}, {{1, 1, 1}, 1}, {{1, 1, 2}, 1}}));
}

TEST_CASE("identity embeddings hide cycles on doubled edges") {
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8"});
  Certificate cert = certify_embedding(c.defining_poly(), {}, 2);
  CHECK(cert.verdict == Verdict::NotCertified);
  CHECK(has_reason(cert, "multiplicity 2"));
  CHECK(cert.curve.first_betti() == 0);

  Certificate e = certify_embedding(P("y^2 - x^3 - 4*x^2 - 8*t^4*x"), {}, 1);
  CHECK(e.verdict == Verdict::NotCertified);
  CHECK(has_reason(e, "multiplicity 2"));
}

TEST_CASE("Weierstrass cubic after the shear y -> y - 2x") {
  MPoly g = P("y^2 - x^3 - 4*x^2 - 8*t^4*x");
  HECurve c = HECurve::from_poly(g);
  ReembedPlan plan = reembedding_plan(c, true);
  REQUIRE(plan.fs.size() == 1);
  Certificate cert = certify_faithful(c, plan);
  CHECK(cert.verdict == Verdict::Faithful);
  audited(cert, 1);
  RatFunc j = j_invariant_cubic(g);
  CHECK(cert.cycle_lengths == std::vector<Rat>{Rat(std::abs(j.val()))});
  CHECK(cert.curve.coords == std::vector<std::string>{"x", "y", "z"});
  CHECK(cert.plane.has_value());
  // Every projection contributes rows to the edge table.
  for (const char* name : {"xy", "xz", "yz", "generic"})
    CHECK(std::any_of(cert.edge_table.begin(), cert.edge_table.end(),
                      [&](const ProjectionEdge& e) { return e.projection == name; }));
}

TEST_CASE("plane cubic with a cycle after a translation") {
  MPoly f = P("(-t^2)*x^3+(t^20)*x^2*y+(t^2)*x*y^2+(t^14)*y^3+(-3*t^3)*x^2+x*y+(t^3+t^5-t^6)*y^2+(-3*t^4)*x+(t+t^2)*y+(2*t^2+t^5)");
  Certificate before = certify_embedding(f, {}, 1);
  CHECK(before.verdict == Verdict::NotCertified);
  CHECK(before.cycle_lengths == std::vector<Rat>{Rat(9)});
  MPoly g = f.substitute("x", P("x - t"));
  Certificate after = certify_embedding(g, {}, 1);
  CHECK(after.verdict == Verdict::Faithful);
  audited(after, 1);
  CHECK(after.cycle_lengths == std::vector<Rat>{Rat(std::abs(j_invariant_cubic(f).val()))});
}

TEST_CASE("two cycles with negated roots") {
  HECurve c = curve({"-t^2", "-t^4", "-t^6", "-t^8"});
  SignedPlan sp = certified_plan(c, true);
  CHECK(sp.flipped.empty());
  CHECK(sp.plan.fs[0] == P("y - t^6*x - t*x^2"));
  CHECK(sp.certificate.verdict == Verdict::Faithful);
  audited(sp.certificate, 2);
  CHECK(sorted(sp.certificate.cycle_lengths) == oracle::cluster_cycle_lengths(finite_roots(c)));
  for (const auto& e : sp.certificate.curve.edges) CHECK(e.mult >= 1);

  Certificate split = certify_faithful(c, reembedding_plan(c, false));
  CHECK(split.verdict == Verdict::Faithful);
  audited(split, 2);
  CHECK(split.curve.coords == std::vector<std::string>{"x", "y", "z1", "z2"});
  CHECK(sorted(split.cycle_lengths) == oracle::cluster_cycle_lengths(finite_roots(c)));
}

TEST_CASE("two cycles with positive roots stay hidden") {
  // On the doubled edges y^2 ~ -t^12 x^2, so the branches are y ~ +-i t^6 x
  // and no rational coefficient separates them.
  HECurve c = curve({"t^2", "t^4", "t^6", "t^8"});
  ReembedPlan plan = reembedding_plan(c, true);
  REQUIRE(plan.fs[0] == P("y - t^6*x - t*x^2"));
  Certificate cert = certify_faithful(c, plan);
  CHECK(cert.verdict == Verdict::NotCertified);
  CHECK(has_reason(cert, "independent cycles"));
  SignedPlan sp = certified_plan(c, true);
  CHECK(sp.certificate.verdict == Verdict::NotCertified);
  CHECK(!sp.certificate.reasons.empty());
}

TEST_CASE("genus three chain") {
  HECurve c = curve({"-t^2", "-t^4", "-t^6", "-t^8", "-t^10", "-t^12"});
  Certificate cert = certify_faithful(c, reembedding_plan(c, true));
  CHECK(cert.verdict == Verdict::Faithful);
  audited(cert, 3);
  CHECK(sorted(cert.cycle_lengths) == oracle::cluster_cycle_lengths(finite_roots(c)));
  for (int v : cert.skeleton_valences) CHECK(v >= 3);
}

TEST_CASE("three thetas certify") {
  Weight u = integral_sample_point(theta3_cone());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(1, 9);
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<Rat> cs;
    for (int k = 0; k < kNumWeights; ++k) cs.push_back(Rat(coef(rng)));
    ThreeThetaInstance inst = three_theta_instance(instantiate_beta(u, cs));
    Certificate cert = certify_embedding(inst.g, {inst.f}, 3);
    CHECK(cert.verdict == Verdict::Faithful);
    audited(cert, 3);
    CHECK(cert.curve.first_betti() == 3);
  }
}

TEST_CASE("audit rejects tampered certificates") {
  HECurve c = curve({"-t^2", "-t^4"});
  Certificate cert = certify_faithful(c, reembedding_plan(c, true));
  REQUIRE(cert.verdict == Verdict::Faithful);
  audited(cert, 1);
  CHECK(sorted(cert.cycle_lengths) == oracle::cluster_cycle_lengths(finite_roots(c)));
  CHECK(!audit_certificate(cert, 2));
  Certificate bad = cert;
  for (int i : bad.curve.core_edges()) bad.curve.edges[i].mult = 2;
  CHECK(!audit_certificate(bad, 1));
}

TEST_CASE("explicit plane arguments") {
  HECurve c = curve({"-t^2", "-t^4"});
  ReembedPlan plan = reembedding_plan(c, true);
  Certificate cert = certify_faithful(c, plan, fallback_planes()[1]);
  CHECK(cert.verdict == Verdict::Faithful);
  CHECK(cert.plane == fallback_planes()[1]);
  PlaneMatrix coordinate{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(certify_faithful(c, plan, coordinate), InvalidPlaneError);
}

// Number of points where the image of a space curve under the first two
// rows of m meets itself away from shared vertices. For a generic plane each
// such point adds one to the first Betti number of the image.
static int image_self_intersections(const SpaceCurve& c, const PlaneMatrix& m) {
  auto img = [&](auto&& v) {
    std::array<Rat, 2> p;
    for (int r = 0; r < 2; ++r) p[r] = Rat(m[r][0]) * v[0] + Rat(m[r][1]) * v[1] + Rat(m[r][2]) * v[2];
    return p;
  };
  struct Seg {
    std::array<Rat, 2> p, d;
    std::optional<Rat> len;
    int a, b;
  };
  std::vector<Seg> segs;
  for (const auto& e : c.edges) {
    std::vector<Rat> d(e.dir.begin(), e.dir.end());
    Seg s{img(c.vertices[e.v0]), img(d), std::nullopt, e.v0, e.v1};
    if (e.v1 >= 0) s.len = e.length;
    segs.push_back(s);
  }
  std::set<std::array<Rat, 2>> points;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Seg &s = segs[i], &u = segs[j];
      Rat det = s.d[0] * (-u.d[1]) - s.d[1] * (-u.d[0]);
      if (det == 0) continue;
      Rat rx = u.p[0] - s.p[0], ry = u.p[1] - s.p[1];
      Rat a = (rx * (-u.d[1]) - ry * (-u.d[0])) / det;
      Rat b = (s.d[0] * ry - s.d[1] * rx) / det;
      auto inside = [](const Rat& x, const std::optional<Rat>& len) { return x >= 0 && (!len || x <= *len); };
      if (!inside(a, s.len) || !inside(b, u.len)) continue;
      bool at_shared = false;
      for (int v : {s.a, s.b})
        if (v >= 0 && (v == u.a || v == u.b) && img(c.vertices[v]) == std::array<Rat, 2>{s.p[0] + a * s.d[0], s.p[1] + a * s.d[1]})
          at_shared = true;
      if (!at_shared) points.insert({s.p[0] + a * s.d[0], s.p[1] + a * s.d[1]});
    }
  return static_cast<int>(points.size());
}

TEST_CASE("generic projections of faithful re-embeddings") {
  HECurve c = curve({"-t^2", "-t^4", "-t^6", "-t^8"});
  ReembedPlan plan = reembedding_plan(c, true);
  REQUIRE(plan.fs.size() == 1);
  Certificate cert = certify_faithful(c, plan);
  REQUIRE(cert.verdict == Verdict::Faithful);
  REQUIRE(cert.plane);
  TropCurve gen = trop_curve(project_generic(c.defining_poly(), plan.fs[0], *cert.plane));
  CHECK(gen.is_balanced());
  CHECK(gen.first_betti() == 2 + image_self_intersections(cert.curve, *cert.plane));
  CHECK(gen.first_betti() == 2);

  Weight u = integral_sample_point(theta3_cone());
  std::vector<Rat> cs{2, 3, 5, 7, 11, 13};
  ThreeThetaInstance inst = three_theta_instance(instantiate_beta(u, cs));
  Certificate cert3 = certify_embedding(inst.g, {inst.f}, 3);
  REQUIRE(cert3.verdict == Verdict::Faithful);
  REQUIRE(cert3.plane);
  TropCurve gen3 = trop_curve(project_generic(inst.g, inst.f, *cert3.plane));
  CHECK(gen3.is_balanced());
  CHECK(gen3.first_betti() == 3 + image_self_intersections(cert3.curve, *cert3.plane));
  // Three crossings in the image on top of the three independent cycles.
  CHECK(gen3.first_betti() == 6);
}
