#include "hypertrop/tropical.hpp"

#include <algorithm>
#include <set>

#include "hypertrop/errors.hpp"

namespace hypertrop {

Rat TropPoly::eval(const std::vector<Rat>& w) const {
  bool first = true;
  Rat best;
  for (const auto& [e, c] : terms) {
    Rat v = c;
    for (std::size_t i = 0; i < e.size(); ++i) v += Rat(e[i]) * w[i];
    if (first || v < best) best = v;
    first = false;
  }
  if (first) throw DomainError("evaluating the empty tropical polynomial");
  return best;
}

std::vector<Exponent> TropPoly::argmin(const std::vector<Rat>& w) const {
  std::vector<Exponent> out;
  Rat best;
  for (const auto& [e, c] : terms) {
    Rat v = c;
    for (std::size_t i = 0; i < e.size(); ++i) v += Rat(e[i]) * w[i];
    if (out.empty() || v < best) {
      best = v;
      out.assign(1, e);
    } else if (v == best) {
      out.push_back(e);
    }
  }
  return out;
}

TropPoly tropicalize(const MPoly& f) {
  TropPoly t;
  t.vars = f.vars();
  for (const auto& [e, c] : f.terms()) t.terms.emplace(e, Rat(c.val()));
  return t;
}

namespace {

struct Term {
  Vec2i a;
  Rat c;
};

Rat value(const Term& t, const Point2& w) { return t.c + Rat(t.a[0]) * w.x + Rat(t.a[1]) * w.y; }

std::vector<int> ties(const std::vector<Term>& ts, const Point2& w) {
  std::vector<int> out;
  Rat best;
  for (int i = 0; i < static_cast<int>(ts.size()); ++i) {
    Rat v = value(ts[i], w);
    if (out.empty() || v < best) {
      best = v;
      out.assign(1, i);
    } else if (v == best) {
      out.push_back(i);
    }
  }
  return out;
}

long cross(const Vec2i& o, const Vec2i& a, const Vec2i& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool collinear(const std::vector<Term>& ts, const std::vector<int>& idx) {
  for (std::size_t k = 2; k < idx.size(); ++k)
    if (cross(ts[idx[0]].a, ts[idx[1]].a, ts[idx[k]].a) != 0) return false;
  return true;
}

// Extreme exponents of a collinear tie set.
std::array<Vec2i, 2> extremes(const std::vector<Term>& ts, const std::vector<int>& idx) {
  std::vector<Vec2i> v;
  for (int i : idx) v.push_back(ts[i].a);
  std::sort(v.begin(), v.end());
  return {v.front(), v.back()};
}

int lattice_len(const Vec2i& a, const Vec2i& b) { return static_cast<int>(igcd(b[0] - a[0], b[1] - a[1])); }

using Polygon = std::vector<Point2>;

// Keep the part of the convex polygon with n . w >= r.
Polygon clip(const Polygon& poly, const Rat& nx, const Rat& ny, const Rat& r) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point2& p = poly[k];
    const Point2& q = poly[(k + 1) % m];
    Rat fp = nx * p.x + ny * p.y - r;
    Rat fq = nx * q.x + ny * q.y - r;
    if (fp >= 0) out.push_back(p);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      Rat s = fp / (fp - fq);
      out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
    }
  }
  Polygon dedup;
  for (const auto& p : out)
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

Rat area2(const Polygon& p) {
  Rat a = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& u = p[k];
    const auto& v = p[(k + 1) % p.size()];
    a += u.x * v.y - u.y * v.x;
  }
  return a;
}

bool strictly_between(const Point2& p, const Point2& q, const Point2& x) {
  Rat cr = (q.x - p.x) * (x.y - p.y) - (q.y - p.y) * (x.x - p.x);
  if (cr != 0) return false;
  Rat d = (x.x - p.x) * (q.x - p.x) + (x.y - p.y) * (q.y - p.y);
  Rat l = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
  return d > 0 && d < l;
}

void fill_subdivision(TropCurve& tc, const std::vector<Term>& ts) {
  for (const auto& t : ts) {
    tc.subdivision.points.push_back(t.a);
    tc.subdivision.lifts.push_back(t.c);
  }
}

TropCurve collinear_curve(TropCurve tc, const std::vector<Term>& ts) {
  Vec2i lo = ts[0].a, hi = ts[0].a;
  for (const auto& t : ts) {
    lo = std::min(lo, t.a);
    hi = std::max(hi, t.a);
  }
  Vec2i v = primitive(Vec2i{hi[0] - lo[0], hi[1] - lo[1]});
  long vv = v[0] * v[0] + v[1] * v[1];
  std::vector<std::pair<long, Rat>> pts;  // (s, c) with a = lo + s v
  for (const auto& t : ts) pts.emplace_back(((t.a[0] - lo[0]) * v[0] + (t.a[1] - lo[1]) * v[1]) / vv, t.c);
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<long, Rat>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Remove b unless it lies strictly below segment a-p.
      Rat lhs = (b.second - a.second) * Rat(p.first - a.first);
      Rat rhs = (p.second - a.second) * Rat(b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const auto& [sj, cj] = hull[k];
    const auto& [sk, ck] = hull[k + 1];
    Rat T = (cj - ck) / Rat(sk - sj);
    Point2 w{T * Rat(v[0]) / Rat(vv), T * Rat(v[1]) / Rat(vv)};
    Vec2i ej{lo[0] + sj * v[0], lo[1] + sj * v[1]};
    Vec2i ek{lo[0] + sk * v[0], lo[1] + sk * v[1]};
    tc.lines.push_back({w, primitive(Vec2i{-v[1], v[0]}), static_cast<int>(sk - sj), {ej, ek}});
  }
  return tc;
}

}  // namespace

TropCurve trop_curve(const TropPoly& f) {
  if (f.vars.size() != 2) throw DomainError("plane tropical curves need exactly two variables");
  TropCurve tc;
  tc.vars = f.vars;
  tc.poly = f;
  std::vector<Term> ts;
  for (const auto& [e, c] : f.terms) ts.push_back({{e[0], e[1]}, c});
  fill_subdivision(tc, ts);
  if (ts.size() <= 1) return tc;
  std::vector<int> all(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) all[i] = static_cast<int>(i);
  if (collinear(ts, all)) return collinear_curve(std::move(tc), ts);

  Rat cmin = ts[0].c, cmax = ts[0].c;
  long dspan = 0;
  for (const auto& a : ts)
    for (const auto& b : ts) {
      dspan = std::max({dspan, std::abs(a.a[0] - b.a[0]), std::abs(a.a[1] - b.a[1])});
    }
  for (const auto& t : ts) {
    cmin = std::min(cmin, t.c);
    cmax = std::max(cmax, t.c);
  }
  // Every vertex solves a 2x2 integer system, so this box contains them all
  // strictly.
  Rat B = Rat(2) * (cmax - cmin) * Rat(dspan) + 1;
  auto on_box = [&](const Point2& p) { return abs(p.x) == B || abs(p.y) == B; };

  std::vector<Polygon> regions(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Polygon poly{{-B, -B}, {B, -B}, {B, B}, {-B, B}};
    for (std::size_t j = 0; j < ts.size() && poly.size() >= 3; ++j) {
      if (j == i) continue;
      poly = clip(poly, Rat(ts[j].a[0] - ts[i].a[0]), Rat(ts[j].a[1] - ts[i].a[1]), ts[i].c - ts[j].c);
    }
    if (poly.size() >= 3 && area2(poly) != 0) regions[i] = std::move(poly);
  }

  std::set<Point2> corner_set;
  for (const auto& r : regions)
    for (const auto& p : r)
      if (!on_box(p)) corner_set.insert(p);
  std::vector<Point2> corners(corner_set.begin(), corner_set.end());

  struct Piece {
    std::array<Vec2i, 2> dual;
    int mult;
  };
  std::map<std::pair<Point2, Point2>, Piece> pieces;
  for (const auto& r : regions) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      Point2 p = r[k], q = r[(k + 1) % r.size()];
      std::vector<Point2> cuts{p, q};
      for (const auto& c : corners)
        if (strictly_between(p, q, c)) cuts.push_back(c);
      std::sort(cuts.begin(), cuts.end(), [&](const Point2& a, const Point2& b) {
        return (a.x - p.x) * (q.x - p.x) + (a.y - p.y) * (q.y - p.y) <
               (b.x - p.x) * (q.x - p.x) + (b.y - p.y) * (q.y - p.y);
      });
      for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
        Point2 a = cuts[m], b = cuts[m + 1];
        Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        auto tie = ties(ts, mid);
        if (tie.size() < 2) continue;
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (pieces.count(key)) continue;
        auto ex = extremes(ts, tie);
        pieces.emplace(key, Piece{ex, lattice_len(ex[0], ex[1])});
      }
    }
  }

  std::map<Point2, int> vid;
  for (const auto& [key, pc] : pieces) {
    if (!on_box(key.first)) vid.emplace(key.first, 0);
    if (!on_box(key.second)) vid.emplace(key.second, 0);
  }
  for (auto& [p, id] : vid) {
    id = static_cast<int>(tc.vertices.size());
    tc.vertices.push_back(p);
    auto tie = ties(ts, p);
    std::sort(tie.begin(), tie.end());
    tc.vertex_cells.push_back(tie);
  }
  tc.subdivision.cells = tc.vertex_cells;
  for (const auto& [key, pc] : pieces) {
    const auto& [a, b] = key;
    bool ba = on_box(a), bb = on_box(b);
    if (!ba && !bb) {
      int u = vid.at(a), v = vid.at(b);
      if (u > v) std::swap(u, v);
      const Point2& pu = tc.vertices[u];
      const Point2& pv = tc.vertices[v];
      Vec2i dir = primitive_dir(pv.x - pu.x, pv.y - pu.y);
      tc.edges.push_back({u, v, dir, lattice_length(pv.x - pu.x, pv.y - pu.y, dir), pc.mult, pc.dual});
    } else if (ba && bb) {
      Vec2i dir = primitive_dir(b.x - a.x, b.y - a.y);
      if (dir < Vec2i{0, 0}) dir = {-dir[0], -dir[1]};
      Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
      tc.lines.push_back({mid, dir, pc.mult, pc.dual});
    } else {
      const Point2& from = ba ? b : a;
      const Point2& to = ba ? a : b;
      tc.rays.push_back({vid.at(from), primitive_dir(to.x - from.x, to.y - from.y), pc.mult, pc.dual});
    }
  }
  std::sort(tc.edges.begin(), tc.edges.end(), [](const TropEdge& x, const TropEdge& y) {
    return std::tie(x.v0, x.v1) < std::tie(y.v0, y.v1);
  });
  std::sort(tc.rays.begin(), tc.rays.end(),
            [](const TropRay& x, const TropRay& y) { return std::tie(x.v, x.dir) < std::tie(y.v, y.dir); });
  return tc;
}

TropCurve trop_curve(const MPoly& f) {
  if (f.nvars() == 2) return trop_curve(tropicalize(f));
  MPoly g = f.compact_vars();
  // Curves in fewer variables live in the (x, y) plane.
  std::vector<std::string> vars = g.vars();
  for (const char* name : {"x", "y"})
    if (vars.size() < 2 && std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
  return trop_curve(tropicalize(g.with_vars(vars)));
}

MetricGraph TropCurve::graph() const {
  MetricGraph g;
  g.num_vertices = static_cast<int>(vertices.size());
  for (const auto& e : edges) g.edges.push_back({e.v0, e.v1, e.length, e.mult});
  return g;
}

std::vector<Vec2i> TropCurve::balancing_defects() const {
  std::vector<Vec2i> d(vertices.size(), Vec2i{0, 0});
  for (const auto& e : edges) {
    d[e.v0][0] += e.mult * e.dir[0];
    d[e.v0][1] += e.mult * e.dir[1];
    d[e.v1][0] -= e.mult * e.dir[0];
    d[e.v1][1] -= e.mult * e.dir[1];
  }
  for (const auto& r : rays) {
    d[r.v][0] += r.mult * r.dir[0];
    d[r.v][1] += r.mult * r.dir[1];
  }
  return d;
}

bool TropCurve::is_balanced() const {
  for (const auto& v : balancing_defects())
    if (v[0] != 0 || v[1] != 0) return false;
  return true;
}

bool TropCurve::contains(const Point2& p) const { return poly.argmin({p.x, p.y}).size() >= 2; }

std::vector<Vec2i> newton_hull(const std::vector<Vec2i>& pts_in) {
  std::vector<Vec2i> pts = pts_in;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2i> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= t && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  return h;
}

std::vector<Vec2i> interior_lattice_points(const std::vector<Vec2i>& pts) {
  auto h = newton_hull(pts);
  std::vector<Vec2i> out;
  if (h.size() < 3) return out;
  long x0 = h[0][0], x1 = h[0][0], y0 = h[0][1], y1 = h[0][1];
  for (const auto& p : h) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  for (long x = x0; x <= x1; ++x)
    for (long y = y0; y <= y1; ++y) {
      bool inside = true;
      for (std::size_t k = 0; k < h.size() && inside; ++k)
        inside = cross(h[k], h[(k + 1) % h.size()], Vec2i{x, y}) > 0;
      if (inside) out.push_back({x, y});
    }
  return out;
}

std::vector<std::vector<Vec2i>> subdivision_type(const RegularSubdivision& s) {
  std::vector<std::vector<Vec2i>> out;
  for (const auto& c : s.cells) {
    std::vector<Vec2i> v;
    for (int i : c) v.push_back(s.points[i]);
    std::sort(v.begin(), v.end());
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypertrop
