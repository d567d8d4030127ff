#include "hypertrop/errors.hpp"
#include "hypertrop/projections.hpp"
#include "hypertrop/resultant.hpp"

namespace hypertrop {

namespace {

const std::vector<std::string> kXY{"x", "y"};

// h with f = y - h(x); throws unless f has that shape.
MPoly reembedding_tail(const MPoly& f) {
  MPoly fx = f.compact_vars();
  for (const auto& v : fx.vars())
    if (v != "x" && v != "y") throw DomainError("re-embedding polynomial must use only x and y");
  fx = fx.with_vars(kXY);
  MPoly h = MPoly::variable("y", kXY) - fx;
  if (!h.is_zero() && (h.degree("y") > 0 || h.min_degree("y") < 0))
    throw DomainError("re-embedding polynomial must be y - h(x)");
  return h;
}

MPoly clean(const MPoly& p, const std::vector<std::string>& vars) {
  return normalize_content(strip_monomial_factor(p)).with_vars(vars);
}

long det3(const PlaneMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

PlaneMatrix inverse_unimodular(const PlaneMatrix& m) {
  long d = det3(m);
  if (d != 1 && d != -1) throw InvalidPlaneError("plane matrix must have determinant +-1");
  PlaneMatrix inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // Cofactor of m[j][i].
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * d;
    }
  return inv;
}

// u = a x + y, v = b x + z, w = x; collapses (1, -a, -b).
PlaneMatrix shear(long a, long b) { return {{{a, 1, 0}, {b, 0, 1}, {1, 0, 0}}}; }

}  // namespace

MPoly project_xz(const MPoly& g, const MPoly& f) {
  MPoly h = reembedding_tail(f);
  std::vector<std::string> xyz{"x", "y", "z"};
  MPoly sub = MPoly::variable("z", xyz) + h.with_vars(xyz);
  return g.with_vars(xyz).substitute("y", sub).with_vars({"x", "z"});
}

MPoly project_yz(const MPoly& g, const MPoly& f) {
  reembedding_tail(f);
  std::vector<std::string> xyz{"x", "y", "z"};
  MPoly res = resultant(g.with_vars(xyz), MPoly::variable("z", xyz) - f.with_vars(xyz), "x");
  return clean(res, {"y", "z"});
}

PlaneMatrix default_plane() { return shear(1, 2); }

std::vector<PlaneMatrix> fallback_planes() {
  return {shear(2, 1), shear(1, 3), shear(3, 1), shear(2, 3), shear(3, 2), shear(1, 5)};
}

std::array<long, 3> plane_kernel(const PlaneMatrix& m) {
  PlaneMatrix inv = inverse_unimodular(m);
  return {inv[0][2], inv[1][2], inv[2][2]};
}

std::string plane_violation(const PlaneMatrix& m, const MPoly& f) {
  if (det3(m) != 1 && det3(m) != -1) return "matrix is not unimodular";
  auto k = plane_kernel(m);
  if (k[0] == 0 || k[1] == 0 || k[2] == 0) return "plane is parallel to a coordinate plane";
  TropPoly F = tropicalize(f.with_vars(kXY));
  // Graph cell of the term x^a y^b spans {(w, a w1 + b w2)}.
  for (const auto& [e, c] : F.terms)
    if (k[2] == e[0] * k[0] + e[1] * k[1])
      return "plane is parallel to the graph cell of x^" + std::to_string(e[0]) + "*y^" + std::to_string(e[1]);
  // Attached cells span (d, 0) and e3 for each edge direction d.
  TropCurve tc = trop_curve(F);
  auto parallel = [&](const Vec2i& d) { return d[0] * k[1] - d[1] * k[0] == 0; };
  for (const auto& e : tc.edges)
    if (parallel(e.dir)) return "plane is parallel to an attached cell over an edge";
  for (const auto& r : tc.rays)
    if (parallel(r.dir)) return "plane is parallel to an attached cell over a ray";
  for (const auto& l : tc.lines)
    if (parallel(l.dir)) return "plane is parallel to an attached cell over a line";
  return "";
}

MPoly project_generic(const MPoly& g, const MPoly& f, const PlaneMatrix& m) {
  std::string bad = plane_violation(m, f);
  if (!bad.empty()) throw InvalidPlaneError(bad);
  PlaneMatrix inv = inverse_unimodular(m);
  std::vector<std::string> uvw{"u", "v", "w"};
  auto mono = [&](int row) {
    return MPoly::monomial(RatFunc(1), {static_cast<int>(inv[row][0]), static_cast<int>(inv[row][1]),
                                        static_cast<int>(inv[row][2])},
                           uvw);
  };
  MPoly X = mono(0), Y = mono(1), Z = mono(2);
  auto pull = [&](const MPoly& p) {
    return p.with_vars(kXY).substitute("x", X).substitute("y", Y).with_vars(uvw);
  };
  // Multiplying by monomials clears the negative exponents.
  MPoly a = strip_monomial_factor(pull(g));
  MPoly b = strip_monomial_factor(Z - pull(f));
  MPoly res = resultant(a, b, "w");
  return clean(res, {"u", "v"});
}

PlaneMatrix choose_plane(const std::vector<MPoly>& fs) {
  std::vector<PlaneMatrix> all{default_plane()};
  for (const auto& p : fallback_planes()) all.push_back(p);
  for (const auto& m : all) {
    bool ok = true;
    for (const auto& f : fs) ok = ok && plane_violation(m, f).empty();
    if (ok) return m;
  }
  throw InvalidPlaneError("no admissible projection plane among the defaults");
}

}  // namespace hypertrop
