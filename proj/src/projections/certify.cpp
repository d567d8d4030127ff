#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "hypertrop/errors.hpp"
#include "hypertrop/projections.hpp"

namespace hypertrop {

namespace {

using PtN = std::vector<Rat>;
using DirN = std::vector<long>;

// Points p + s d with s in [0, len], or s >= 0 when len is empty.
struct Piece {
  PtN p;
  DirN d;
  std::optional<Rat> len;
  int mult = -1;  // -1 while unknown
  bool active = false;
};

struct Piece2 {
  Point2 p;
  Vec2i d;
  std::optional<Rat> len;
  int mult = 0;
};

// Closed parameter interval; empty optionals are infinite ends.
struct Iv {
  std::optional<Rat> lo, hi;
};

using IvSet = std::vector<Iv>;

bool lo_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b.has_value();
  return b && *a < *b;
}

// a < b for upper ends, where empty is +infinity.
bool hi_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!b) return a.has_value();
  return a && *a < *b;
}

bool positive_length(const Iv& iv) { return !iv.lo || !iv.hi || *iv.lo < *iv.hi; }

IvSet normalize(IvSet s) {
  std::sort(s.begin(), s.end(), [](const Iv& a, const Iv& b) { return lo_less(a.lo, b.lo); });
  IvSet out;
  for (const auto& iv : s) {
    if (!positive_length(iv)) continue;
    if (!out.empty() && (!out.back().hi || !iv.lo || *iv.lo <= *out.back().hi)) {
      if (hi_less(out.back().hi, iv.hi)) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

IvSet intersect(const IvSet& a, const IvSet& b) {
  IvSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Iv z{lo_less(x.lo, y.lo) ? y.lo : x.lo, hi_less(x.hi, y.hi) ? x.hi : y.hi};
      if (positive_length(z)) out.push_back(z);
    }
  return normalize(out);
}

std::pair<DirN, Rat> primitive_scaled(const std::vector<Rat>& v) {
  Int den = 1;
  for (const auto& c : v) den = lcm(den, Int(c.get_den()));
  Int g = 0;
  std::vector<Int> ints;
  for (const auto& c : v) {
    Rat s = c * den;
    ints.push_back(s.get_num());
    g = gcd(g, ints.back());
  }
  DirN d;
  for (const auto& i : ints) d.push_back(Int(i / g).get_si());
  return {d, Rat(g) / Rat(den)};
}

std::string pt_str(const PtN& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + rat_str(p[i]);
  return s + ")";
}

PtN point_at(const PtN& p, const DirN& d, const Rat& s) {
  PtN q = p;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += s * d[i];
  return q;
}

std::vector<Piece2> pieces_of(const TropCurve& c) {
  std::vector<Piece2> out;
  for (const auto& e : c.edges) out.push_back({c.vertices[e.v0], e.dir, e.length, e.mult});
  for (const auto& r : c.rays) out.push_back({c.vertices[r.v], r.dir, std::nullopt, r.mult});
  for (const auto& l : c.lines) {
    out.push_back({l.point, l.dir, std::nullopt, l.mult});
    out.push_back({l.point, {-l.dir[0], -l.dir[1]}, std::nullopt, l.mult});
  }
  return out;
}

struct Projection {
  std::string name;
  std::array<std::array<long, 3>, 2> rows;
  TropCurve curve;
  std::vector<Piece2> pieces;

  Point2 image(const PtN& p) const {
    return {rows[0][0] * p[0] + rows[0][1] * p[1] + rows[0][2] * p[2],
            rows[1][0] * p[0] + rows[1][1] * p[1] + rows[1][2] * p[2]};
  }
  Vec2i image(const DirN& d) const {
    return {rows[0][0] * d[0] + rows[0][1] * d[1] + rows[0][2] * d[2],
            rows[1][0] * d[0] + rows[1][1] * d[1] + rows[1][2] * d[2]};
  }
};

Rat cross(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) { return ax * by - ay * bx; }

// Parameters s of p + s d (restricted to [0, len]) whose image lies on a
// piece of the projected curve running along the image line.
IvSet allowed(const PtN& p, const DirN& d, const std::optional<Rat>& len, const Projection& q) {
  Point2 q0 = q.image(p);
  Vec2i rho = q.image(d);
  int c = rho[0] != 0 ? 0 : 1;
  Rat rc(rho[c]);
  IvSet out;
  for (const auto& pc : q.pieces) {
    if (pc.d[0] * rho[1] - pc.d[1] * rho[0] != 0) continue;
    Rat ox = pc.p.x - q0.x, oy = pc.p.y - q0.y;
    if (cross(ox, oy, Rat(rho[0]), Rat(rho[1])) != 0) continue;
    Rat s0 = (c == 0 ? ox : oy) / rc;
    Rat r = Rat(pc.d[c]) / rc;
    Iv iv;
    if (r > 0) {
      iv.lo = s0;
      if (pc.len) iv.hi = s0 + r * *pc.len;
    } else {
      iv.hi = s0;
      if (pc.len) iv.lo = s0 + r * *pc.len;
    }
    out.push_back(iv);
  }
  Iv range{Rat(0), len};
  return intersect(normalize(out), {range});
}

struct TermVal {
  Exponent e;
  Rat a;
};

std::vector<TermVal> terms_of(const TropPoly& F) {
  std::vector<TermVal> t;
  for (const auto& [e, a] : F.terms) t.push_back({e, a});
  return t;
}

Rat term_at(const TermVal& t, const Rat& x, const Rat& y) { return t.a + t.e[0] * x + t.e[1] * y; }

std::vector<int> argmin_at(const std::vector<TermVal>& ts, const Rat& x, const Rat& y) {
  std::vector<int> am;
  Rat best;
  for (int i = 0; i < static_cast<int>(ts.size()); ++i) {
    Rat v = term_at(ts[i], x, y);
    if (am.empty() || v < best) {
      best = v;
      am = {i};
    } else if (v == best) {
      am.push_back(i);
    }
  }
  return am;
}

Rat min_at(const std::vector<TermVal>& ts, const Rat& x, const Rat& y) {
  return term_at(ts[argmin_at(ts, x, y)[0]], x, y);
}

// Breakpoints of the tropical polynomials along p + s d inside (0, len).
std::vector<Rat> breakpoints(const Piece2& gp, const std::vector<std::vector<TermVal>>& fs) {
  std::set<Rat> out;
  for (const auto& ts : fs)
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        Rat ci = term_at(ts[i], gp.p.x, gp.p.y), cj = term_at(ts[j], gp.p.x, gp.p.y);
        long si = ts[i].e[0] * gp.d[0] + ts[i].e[1] * gp.d[1], sj = ts[j].e[0] * gp.d[0] + ts[j].e[1] * gp.d[1];
        if (si == sj) continue;
        Rat s = (cj - ci) / Rat(si - sj);
        if (s > 0 && (!gp.len || s < *gp.len)) out.insert(s);
      }
  std::vector<Rat> b{Rat(0)};
  b.insert(b.end(), out.begin(), out.end());
  if (gp.len) b.push_back(*gp.len);
  return b;
}

struct Strip {
  Point2 p0;
  Vec2i d;
  std::optional<Rat> len;
  Rat f0, slope;
};

// Graph of pieces in R^n: vertices, edges, per-edge flags.
struct Arrangement {
  std::vector<PtN> vertices;
  std::vector<SpaceCurve::Edge> edges;
  std::vector<bool> active;
};

struct LineKey {
  DirN d;
  PtN base;
  bool operator<(const LineKey& o) const { return d != o.d ? d < o.d : base < o.base; }
};

Arrangement arrange(const std::vector<Piece>& pieces, std::size_t n) {
  struct Member {
    Iv iv;
    int mult;
    bool active;
  };
  std::map<LineKey, std::vector<Member>> lines;
  std::set<PtN> nodes;
  for (const auto& pc : pieces) {
    nodes.insert(pc.p);
    if (pc.len) nodes.insert(point_at(pc.p, pc.d, *pc.len));
    DirN d = pc.d;
    Iv iv{Rat(0), pc.len};
    std::size_t c = 0;
    while (d[c] == 0) ++c;
    if (d[c] < 0) {
      for (auto& x : d) x = -x;
      iv = {pc.len ? std::optional<Rat>(-*pc.len) : std::nullopt, Rat(0)};
    }
    Rat t0 = pc.p[c] / Rat(d[c]);
    PtN base = point_at(pc.p, d, -t0);
    if (iv.lo) iv.lo = *iv.lo + t0;
    if (iv.hi) iv.hi = *iv.hi + t0;
    lines[{d, base}].push_back({iv, pc.mult, pc.active});
  }
  // Merge overlapping members of each line.
  struct Merged {
    LineKey key;
    Iv iv;
    int mult;
    bool active;
  };
  std::vector<Merged> merged;
  for (auto& [key, ms] : lines) {
    std::sort(ms.begin(), ms.end(), [](const Member& a, const Member& b) { return lo_less(a.iv.lo, b.iv.lo); });
    for (const auto& m : ms) {
      if (!merged.empty() && !(merged.back().key < key) && !(key < merged.back().key)) {
        Merged& last = merged.back();
        bool overlap = !last.iv.hi || !m.iv.lo || *m.iv.lo < *last.iv.hi;
        if (overlap) {
          if (hi_less(last.iv.hi, m.iv.hi)) last.iv.hi = m.iv.hi;
          if (last.mult != m.mult) last.mult = -1;
          last.active = last.active || m.active;
          continue;
        }
      }
      merged.push_back({key, m.iv, m.mult, m.active});
    }
  }
  auto param_on = [&](const Merged& m, const PtN& p) -> std::optional<Rat> {
    std::size_t c = 0;
    while (m.key.d[c] == 0) ++c;
    Rat t = (p[c] - m.key.base[c]) / Rat(m.key.d[c]);
    for (std::size_t i = 0; i < n; ++i)
      if (m.key.base[i] + t * m.key.d[i] != p[i]) return std::nullopt;
    if ((m.iv.lo && t < *m.iv.lo) || (m.iv.hi && t > *m.iv.hi)) return std::nullopt;
    return t;
  };
  // Pairwise crossings.
  for (std::size_t a = 0; a < merged.size(); ++a)
    for (std::size_t b = a + 1; b < merged.size(); ++b) {
      const auto &A = merged[a], &B = merged[b];
      if (A.key.d == B.key.d) continue;
      bool found = false;
      for (std::size_t i = 0; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j) {
          Rat det = Rat(A.key.d[i] * -B.key.d[j] + B.key.d[i] * A.key.d[j]);
          if (det == 0) continue;
          Rat ri = B.key.base[i] - A.key.base[i], rj = B.key.base[j] - A.key.base[j];
          Rat t = (ri * -B.key.d[j] + B.key.d[i] * rj) / det;
          PtN p = point_at(A.key.base, A.key.d, t);
          if (param_on(A, p) && param_on(B, p)) nodes.insert(p);
          found = true;
        }
    }
  Arrangement out;
  std::map<PtN, int> vid;
  auto vertex = [&](const PtN& p) {
    auto [it, ins] = vid.try_emplace(p, static_cast<int>(out.vertices.size()));
    if (ins) out.vertices.push_back(p);
    return it->second;
  };
  for (const auto& m : merged) {
    std::set<Rat> ts;
    for (const auto& p : nodes)
      if (auto t = param_on(m, p)) ts.insert(*t);
    std::vector<Rat> tv(ts.begin(), ts.end());
    if (tv.empty()) continue;  // a full line with no vertex cannot occur here
    auto add = [&](const PtN& from, const DirN& d, std::optional<Rat> len, std::optional<PtN> to) {
      SpaceCurve::Edge e;
      e.v0 = vertex(from);
      e.v1 = to ? vertex(*to) : -1;
      e.dir = d;
      if (len) e.length = *len;
      e.mult = m.mult;
      out.edges.push_back(e);
      out.active.push_back(m.active);
    };
    DirN neg = m.key.d;
    for (auto& x : neg) x = -x;
    if (!m.iv.lo) add(point_at(m.key.base, m.key.d, tv.front()), neg, std::nullopt, std::nullopt);
    for (std::size_t k = 0; k + 1 < tv.size(); ++k)
      add(point_at(m.key.base, m.key.d, tv[k]), m.key.d, tv[k + 1] - tv[k], point_at(m.key.base, m.key.d, tv[k + 1]));
    if (!m.iv.hi) add(point_at(m.key.base, m.key.d, tv.back()), m.key.d, std::nullopt, std::nullopt);
  }
  return out;
}

// Drops zero-multiplicity edges and unused vertices, and merges two-valent
// vertices between collinear edges of equal multiplicity.
Arrangement simplify(const Arrangement& in) {
  Arrangement a;
  for (std::size_t i = 0; i < in.edges.size(); ++i)
    if (in.edges[i].mult != 0) {
      a.edges.push_back(in.edges[i]);
      a.active.push_back(in.active[i]);
    }
  a.vertices = in.vertices;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> inc(a.vertices.size());
    for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
      inc[a.edges[i].v0].push_back(i);
      if (a.edges[i].v1 >= 0) inc[a.edges[i].v1].push_back(i);
    }
    for (int v = 0; v < static_cast<int>(a.vertices.size()) && !changed; ++v) {
      if (inc[v].size() != 2) continue;
      int i = inc[v][0], j = inc[v][1];
      auto out_dir = [&](int e) {
        DirN d = a.edges[e].dir;
        if (a.edges[e].v0 != v)
          for (auto& x : d) x = -x;
        return d;
      };
      DirN di = out_dir(i), dj = out_dir(j);
      DirN sum(di.size());
      for (std::size_t k = 0; k < di.size(); ++k) sum[k] = di[k] + dj[k];
      if (std::any_of(sum.begin(), sum.end(), [](long x) { return x != 0; }) || a.edges[i].mult != a.edges[j].mult ||
          a.active[i] != a.active[j])
        continue;
      // Orient i to end at v and j to start at v, then concatenate.
      auto far = [&](int e) { return a.edges[e].v0 == v ? a.edges[e].v1 : a.edges[e].v0; };
      int fi = far(i), fj = far(j);
      SpaceCurve::Edge e;
      e.mult = a.edges[i].mult;
      if (fi >= 0) {
        e.v0 = fi;
        e.dir = dj;
        e.v1 = fj;
        if (fj >= 0) e.length = a.edges[i].length + a.edges[j].length;
      } else if (fj >= 0) {
        e.v0 = fj;
        e.dir = di;
        e.v1 = -1;
      } else {
        continue;  // a line through v; keep v
      }
      bool act = a.active[i];
      std::vector<SpaceCurve::Edge> edges;
      std::vector<bool> active;
      for (int k = 0; k < static_cast<int>(a.edges.size()); ++k)
        if (k != i && k != j) {
          edges.push_back(a.edges[k]);
          active.push_back(a.active[k]);
        }
      edges.push_back(e);
      active.push_back(act);
      a.edges = std::move(edges);
      a.active = std::move(active);
      changed = true;
    }
  }
  // Compact vertices.
  std::vector<int> used(a.vertices.size(), -1);
  Arrangement out;
  for (auto& e : a.edges) {
    for (int* v : {&e.v0, &e.v1}) {
      if (*v < 0) continue;
      if (used[*v] < 0) {
        used[*v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(a.vertices[*v]);
      }
      *v = used[*v];
    }
    out.edges.push_back(e);
  }
  out.active = a.active;
  return out;
}

// Multiplicity bookkeeping between the reconstruction and a projection.
struct Equation {
  std::map<int, Rat> coef;  // edge index -> lattice index
  Rat rhs;
  std::string where;
};

struct ImageSeg {
  int edge;
  Point2 q0;
  Vec2i rho;  // primitive image direction
  long index;
  std::optional<Rat> len;  // in units of rho
};

std::vector<ImageSeg> images(const Arrangement& a, const Projection& q) {
  std::vector<ImageSeg> out;
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
    const auto& e = a.edges[i];
    Vec2i r = q.image(DirN(e.dir.begin(), e.dir.begin() + 3));
    long g = igcd(r[0], r[1]);
    if (g == 0) continue;
    ImageSeg s{i, q.image(a.vertices[e.v0]), {r[0] / g, r[1] / g}, g, std::nullopt};
    if (e.v1 >= 0) s.len = e.length * g;
    out.push_back(s);
  }
  return out;
}

// Parameter of q along the line q0 + s rho, if q is on it.
std::optional<Rat> on_line(const Point2& q0, const Vec2i& rho, const Point2& q) {
  Rat ox = q.x - q0.x, oy = q.y - q0.y;
  if (cross(ox, oy, Rat(rho[0]), Rat(rho[1])) != 0) return std::nullopt;
  return rho[0] != 0 ? ox / rho[0] : oy / rho[1];
}

bool strictly_inside(const Rat& s, const std::optional<Rat>& len) { return s > 0 && (!len || s < *len); }

std::vector<Equation> equations(const Arrangement& a, const Projection& q, const std::vector<ImageSeg>& segs) {
  std::vector<Point2> vimg;
  for (const auto& v : a.vertices) vimg.push_back(q.image(v));
  std::vector<Point2> marks = vimg;
  for (const auto& v : q.curve.vertices) marks.push_back(v);
  for (const auto& pc : q.pieces) marks.push_back(pc.p);

  // Test points: midpoints between marks along every image and every piece.
  std::set<std::pair<Point2, Vec2i>> tests;
  auto sample = [&](const Point2& q0, const Vec2i& rho, const std::optional<Rat>& len) {
    std::set<Rat> ss{Rat(0)};
    if (len) ss.insert(*len);
    for (const auto& m : marks)
      if (auto s = on_line(q0, rho, m); s && strictly_inside(*s, len)) ss.insert(*s);
    std::vector<Rat> sv(ss.begin(), ss.end());
    Vec2i key = rho;
    if (key[0] < 0 || (key[0] == 0 && key[1] < 0)) key = {-key[0], -key[1]};
    auto add = [&](const Rat& s) { tests.insert({{q0.x + s * rho[0], q0.y + s * rho[1]}, key}); };
    for (std::size_t k = 0; k + 1 < sv.size(); ++k) add((sv[k] + sv[k + 1]) / 2);
    if (!len) add(sv.back() + 1);
  };
  for (const auto& s : segs) sample(s.q0, s.rho, s.len);
  for (const auto& pc : q.pieces) sample(pc.p, pc.d, pc.len);

  std::vector<Equation> eqs;
  for (const auto& [pt, dir] : tests) {
    Equation eq;
    for (const auto& s : segs) {
      if (s.rho[0] * dir[1] - s.rho[1] * dir[0] != 0) continue;
      auto t = on_line(s.q0, s.rho, pt);
      if (t && strictly_inside(*t, s.len)) eq.coef[s.edge] += Rat(s.index);
    }
    for (const auto& pc : q.pieces) {
      if (pc.d[0] * dir[1] - pc.d[1] * dir[0] != 0) continue;
      auto t = on_line(pc.p, pc.d, pt);
      if (t && strictly_inside(*t, pc.len)) eq.rhs += pc.mult;
    }
    eq.where = q.name + " at (" + rat_str(pt.x) + "," + rat_str(pt.y) + ")";
    eqs.push_back(eq);
  }
  return eqs;
}

// Solves for unknown multiplicities. Returns reasons on failure.
std::vector<std::string> solve_multiplicities(Arrangement& a, const std::vector<Equation>& eqs) {
  std::vector<int> unknown;
  std::map<int, int> col;
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i)
    if (a.edges[i].mult < 0) {
      col[i] = static_cast<int>(unknown.size());
      unknown.push_back(i);
    }
  const std::size_t nu = unknown.size();
  std::vector<std::vector<Rat>> m;
  std::vector<std::string> where;
  for (const auto& eq : eqs) {
    std::vector<Rat> row(nu + 1, Rat(0));
    Rat rhs = eq.rhs;
    for (const auto& [e, c] : eq.coef) {
      if (a.edges[e].mult >= 0)
        rhs -= c * a.edges[e].mult;
      else
        row[col[e]] += c;
    }
    row[nu] = rhs;
    m.push_back(row);
    where.push_back(eq.where);
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nu && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    std::swap(where[p], where[r]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][c] != 0) {
        Rat f = m[i][c];
        for (std::size_t k = c; k <= nu; ++k) m[i][k] -= f * m[r][k];
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::string> reasons;
  for (std::size_t i = r; i < m.size(); ++i)
    if (m[i][nu] != 0) {
      reasons.push_back("projection multiplicities inconsistent with the reconstruction (" + where[i] + ")");
      return reasons;
    }
  std::vector<bool> determined(nu, false);
  for (std::size_t i = 0; i < r; ++i) {
    int c = pivot_col[i];
    bool unique = true;
    for (std::size_t k = 0; k < nu; ++k)
      if (static_cast<int>(k) != c && m[i][k] != 0) unique = false;
    if (!unique) continue;
    Rat v = m[i][nu];
    if (v < 0 || v.get_den() != 1) {
      reasons.push_back("non-integral multiplicity " + rat_str(v) + " forced by " + where[i]);
      continue;
    }
    a.edges[unknown[c]].mult = static_cast<int>(v.get_num().get_si());
    determined[c] = true;
  }
  for (std::size_t k = 0; k < nu; ++k)
    if (!determined[k])
      reasons.push_back("multiplicity of the edge from " + pt_str(a.vertices[a.edges[unknown[k]].v0]) +
                        " is not determined by the projections");
  return reasons;
}

void log_irregularities(const Arrangement& a, const Projection& q, const std::vector<Equation>& eqs,
                        std::vector<Irregularity>& log) {
  auto segs = images(a, q);
  std::set<std::string> seen;
  auto add = [&](int type, const std::string& d) {
    if (seen.insert(std::to_string(type) + d).second) log.push_back({type, q.name, d});
  };
  for (const auto& s : segs)
    if (s.index > 1)
      add(1, "edge from " + pt_str(a.vertices[a.edges[s.edge].v0]) + " has lattice index " +
                 std::to_string(s.index) + " in the image");
  for (const auto& eq : eqs)
    if (eq.coef.size() > 1) {
      Rat total = 0;
      for (const auto& [e, c] : eq.coef) total += c * a.edges[e].mult;
      add(3, std::to_string(eq.coef.size()) + " edges overlap, multiplicities add to " + rat_str(total) + " (" +
                 eq.where + ")");
    }
  std::vector<Point2> vimg;
  for (const auto& v : a.vertices) vimg.push_back(q.image(v));
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto &A = segs[i], &B = segs[j];
      Rat det = cross(Rat(A.rho[0]), Rat(A.rho[1]), Rat(B.rho[0]), Rat(B.rho[1]));
      if (det == 0) continue;
      Rat ox = B.q0.x - A.q0.x, oy = B.q0.y - A.q0.y;
      Rat s = cross(ox, oy, Rat(B.rho[0]), Rat(B.rho[1])) / det;
      Rat t = cross(ox, oy, Rat(A.rho[0]), Rat(A.rho[1])) / det;
      if (!strictly_inside(s, A.len) || !strictly_inside(t, B.len)) continue;
      Point2 p{A.q0.x + s * A.rho[0], A.q0.y + s * A.rho[1]};
      add(2, "images cross at (" + rat_str(p.x) + "," + rat_str(p.y) + ") without a common vertex");
    }
  for (std::size_t v = 0; v < vimg.size(); ++v) {
    for (const auto& s : segs) {
      const auto& e = a.edges[s.edge];
      if (e.v0 == static_cast<int>(v) || e.v1 == static_cast<int>(v)) continue;
      auto t = on_line(s.q0, s.rho, vimg[v]);
      if (t && strictly_inside(*t, s.len))
        add(4, "vertex " + pt_str(a.vertices[v]) + " maps into the interior of an edge image");
    }
    for (std::size_t w = v + 1; w < vimg.size(); ++w)
      if (vimg[v] == vimg[w]) add(4, "vertices " + pt_str(a.vertices[v]) + " and " + pt_str(a.vertices[w]) + " share an image");
  }
}

void append_table(const Projection& q, std::vector<ProjectionEdge>& table) {
  int id = 0;
  for (const auto& e : q.curve.edges) table.push_back({q.name, id++, e.mult, e.dual});
  for (const auto& r : q.curve.rays) table.push_back({q.name, id++, r.mult, r.dual});
  for (const auto& l : q.curve.lines) table.push_back({q.name, id++, l.mult, l.dual});
}

Projection make_projection(const std::string& name, std::array<std::array<long, 3>, 2> rows, const MPoly& p) {
  Projection q;
  q.name = name;
  q.rows = rows;
  q.curve = trop_curve(p);
  q.pieces = pieces_of(q.curve);
  return q;
}

struct GeneratorResult {
  Arrangement curve;  // in (x, y, z)
  std::vector<std::string> reasons;
};

GeneratorResult reconstruct(const MPoly& g, const Projection& xy, const MPoly& f, const PlaneMatrix& plane,
                            const std::string& suffix, Certificate& cert) {
  GeneratorResult res;
  std::vector<TermVal> F = terms_of(tropicalize(f.with_vars({"x", "y"})));
  std::vector<Projection> qs;
  qs.push_back(make_projection("xz" + suffix, {{{1, 0, 0}, {0, 0, 1}}}, project_xz(g, f)));
  qs.push_back(make_projection("yz" + suffix, {{{0, 1, 0}, {0, 0, 1}}}, project_yz(g, f)));
  qs.push_back(make_projection("generic" + suffix, {{plane[0], plane[1]}}, project_generic(g, f, plane)));

  std::vector<Piece> pieces;
  std::vector<Strip> strips;
  std::set<Point2> corners;
  for (const auto& gp : xy.pieces) {
    std::vector<Rat> b = breakpoints(gp, {F});
    auto at = [&](const Rat& s) { return Point2{gp.p.x + s * gp.d[0], gp.p.y + s * gp.d[1]}; };
    for (const auto& s : b) {
      Point2 p = at(s);
      if (argmin_at(F, p.x, p.y).size() > 1) corners.insert(p);
    }
    std::size_t n = gp.len ? b.size() - 1 : b.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::optional<Rat> len;
      if (k + 1 < b.size()) len = b[k + 1] - b[k];
      Rat mid = len ? Rat(b[k] + *len / 2) : Rat(b[k] + 1);
      Point2 pm = at(mid), p0 = at(b[k]);
      auto am = argmin_at(F, pm.x, pm.y);
      long slope = F[am[0]].e[0] * gp.d[0] + F[am[0]].e[1] * gp.d[1];
      Rat f0 = term_at(F[am[0]], p0.x, p0.y);
      if (am.size() == 1) {
        pieces.push_back({{p0.x, p0.y, f0}, {gp.d[0], gp.d[1], slope}, len, gp.mult, false});
      } else {
        strips.push_back({p0, gp.d, len, f0, Rat(slope)});
      }
    }
  }
  auto survivors = [&](const PtN& p, const DirN& d, const std::optional<Rat>& len) {
    IvSet keep{{Rat(0), len}};
    for (const auto& q : qs) {
      Vec2i r = q.image(d);
      if (r[0] == 0 && r[1] == 0) continue;
      keep = intersect(keep, allowed(p, d, len, q));
      if (keep.empty()) break;
    }
    for (const auto& iv : keep) {
      Piece pc{point_at(p, d, *iv.lo), d, std::nullopt, -1, true};
      if (iv.hi) pc.len = *iv.hi - *iv.lo;
      pieces.push_back(pc);
    }
  };
  for (const auto& st : strips) {
    const Projection* base = nullptr;
    Vec2i alpha, beta;
    for (const auto& q : qs) {
      alpha = q.image(DirN{st.d[0], st.d[1], 0});
      beta = q.image(DirN{0, 0, 1});
      if (alpha[0] * beta[1] - alpha[1] * beta[0] != 0) {
        base = &q;
        break;
      }
    }
    if (!base) {
      res.reasons.push_back("no projection is injective over the corner edge at (" + rat_str(st.p0.x) + "," +
                            rat_str(st.p0.y) + ")");
      continue;
    }
    Rat det(alpha[0] * beta[1] - alpha[1] * beta[0]);
    Point2 q0 = base->image(PtN{st.p0.x, st.p0.y, Rat(0)});
    auto solve = [&](const Rat& u, const Rat& v) {
      return std::pair<Rat, Rat>{(u * beta[1] - v * beta[0]) / det, (alpha[0] * v - alpha[1] * u) / det};
    };
    for (const auto& pc : base->pieces) {
      auto [l0, z0] = solve(pc.p.x - q0.x, pc.p.y - q0.y);
      auto [dl, dz] = solve(Rat(pc.d[0]), Rat(pc.d[1]));
      Iv iv{Rat(0), pc.len};
      auto constrain = [&](const Rat& c, const Rat& m) {
        if (m == 0) {
          if (c < 0) iv = {Rat(1), Rat(0)};
          return;
        }
        Rat s = -c / m;
        if (m > 0) {
          if (!iv.lo || *iv.lo < s) iv.lo = s;
        } else if (!iv.hi || s < *iv.hi) {
          iv.hi = s;
        }
      };
      constrain(l0, dl);
      if (st.len) constrain(*st.len - l0, -dl);
      constrain(z0 - st.f0 - st.slope * l0, dz - st.slope * dl);
      if (!positive_length(iv)) continue;
      auto [dir, scale] = primitive_scaled({dl * st.d[0], dl * st.d[1], dz});
      Rat l = l0 + *iv.lo * dl, z = z0 + *iv.lo * dz;
      PtN start{st.p0.x + l * st.d[0], st.p0.y + l * st.d[1], z};
      std::optional<Rat> len;
      if (iv.hi) len = (*iv.hi - *iv.lo) * scale;
      survivors(start, dir, len);
    }
  }
  for (const auto& c : corners) survivors({c.x, c.y, min_at(F, c.x, c.y)}, {0, 0, 1}, std::nullopt);

  Arrangement arr = arrange(pieces, 3);
  std::vector<Projection> all{xy};
  for (const auto& q : qs) all.push_back(q);
  std::vector<Equation> eqs;
  for (const auto& q : all) {
    auto e = equations(arr, q, images(arr, q));
    eqs.insert(eqs.end(), e.begin(), e.end());
  }
  auto why = solve_multiplicities(arr, eqs);
  res.reasons.insert(res.reasons.end(), why.begin(), why.end());
  if (!why.empty()) return res;
  // Everything is determined; the equations now hold with equality.
  for (const auto& q : qs) {
    Arrangement pos = simplify(arr);
    log_irregularities(pos, q, equations(pos, q, images(pos, q)), cert.irregularities);
    append_table(q, cert.edge_table);
  }
  res.curve = arr;
  return res;
}

// Lifts an active piece of one generator's curve into R^{2+m}.
std::optional<Piece> lift(const PtN& p, const DirN& d, const std::optional<Rat>& len, int mult, std::size_t own,
                          const std::vector<std::vector<TermVal>>& Fs, std::string& why) {
  const std::size_t m = Fs.size();
  PtN q(2 + m);
  DirN e(2 + m);
  q[0] = p[0];
  q[1] = p[1];
  e[0] = d[0];
  e[1] = d[1];
  for (std::size_t j = 0; j < m; ++j) {
    if (j == own) {
      q[2 + j] = p[2];
      e[2 + j] = d[2];
      continue;
    }
    Rat mx = p[0] + Rat(d[0]) * (len ? *len / 2 : Rat(1)), my = p[1] + Rat(d[1]) * (len ? *len / 2 : Rat(1));
    auto am = argmin_at(Fs[j], mx, my);
    auto am0 = argmin_at(Fs[j], p[0], p[1]);
    if (am.size() != 1 || std::find(am0.begin(), am0.end(), am[0]) == am0.end()) {
      why = "modifications " + std::to_string(own + 1) + " and " + std::to_string(j + 1) + " overlap near " +
            pt_str(p);
      return std::nullopt;
    }
    q[2 + j] = term_at(Fs[j][am[0]], p[0], p[1]);
    e[2 + j] = Fs[j][am[0]].e[0] * d[0] + Fs[j][am[0]].e[1] * d[1];
  }
  // The first three coordinates already form a primitive vector.
  return Piece{q, e, len, mult, true};
}

SpaceCurve to_space_curve(const Arrangement& a, std::vector<std::string> coords) {
  SpaceCurve c;
  c.coords = std::move(coords);
  c.vertices = a.vertices;
  c.edges = a.edges;
  return c;
}

void analyse(Certificate& cert, int genus) {
  const SpaceCurve& c = cert.curve;
  for (const auto& b : c.balancing_failures()) cert.reasons.push_back(b);
  int b1 = c.first_betti();
  if (b1 != genus) {
    cert.reasons.push_back("reconstructed curve has " + std::to_string(b1) + " independent cycles, expected " +
                           std::to_string(genus));
    for (const auto& e : c.edges)
      if (e.v1 >= 0 && e.mult > 1)
        cert.reasons.push_back("edge from " + pt_str(c.vertices[e.v0]) + " to " + pt_str(c.vertices[e.v1]) +
                               " has multiplicity " + std::to_string(e.mult));
  }
  auto val = c.valences();
  std::set<int> core_vertices;
  for (int i : c.core_edges()) {
    const auto& e = c.edges[i];
    core_vertices.insert(e.v0);
    core_vertices.insert(e.v1);
    if (e.mult != 1)
      cert.reasons.push_back("cycle edge from " + pt_str(c.vertices[e.v0]) + " to " + pt_str(c.vertices[e.v1]) +
                             " has multiplicity " + std::to_string(e.mult));
  }
  for (int v : core_vertices) {
    cert.skeleton_valences.push_back(val[v]);
    if (!star_multiplicity_one(c.star(v)))
      cert.reasons.push_back("vertex " + pt_str(c.vertices[v]) + " on the cycles is " + std::to_string(val[v]) +
                             "-valent and its star splits into balanced parts");
  }
  cert.cycle_lengths = c.cycle_lengths();
  cert.verdict = cert.reasons.empty() ? Verdict::Faithful : Verdict::NotCertified;
}

}  // namespace

Certificate certify_embedding(const MPoly& g_in, const std::vector<MPoly>& fs, int genus,
                              std::optional<PlaneMatrix> plane) {
  Certificate cert;
  MPoly g = g_in.with_vars({"x", "y"});
  Projection xy = make_projection("xy", {{{1, 0, 0}, {0, 1, 0}}}, g);
  append_table(xy, cert.edge_table);
  if (fs.empty()) {
    std::vector<Piece> pieces;
    for (const auto& gp : xy.pieces) pieces.push_back({{gp.p.x, gp.p.y}, {gp.d[0], gp.d[1]}, gp.len, gp.mult, false});
    cert.curve = to_space_curve(simplify(arrange(pieces, 2)), {"x", "y"});
    analyse(cert, genus);
    return cert;
  }
  PlaneMatrix m = plane ? *plane : choose_plane(fs);
  for (const auto& f : fs) {
    std::string bad = plane_violation(m, f);
    if (!bad.empty()) throw InvalidPlaneError(bad);
  }
  cert.plane = m;
  std::vector<std::vector<TermVal>> Fs;
  for (const auto& f : fs) Fs.push_back(terms_of(tropicalize(f.with_vars({"x", "y"}))));
  std::vector<std::string> coords{"x", "y"};
  if (fs.size() == 1) {
    coords.push_back("z");
  } else {
    for (std::size_t i = 0; i < fs.size(); ++i) coords.push_back("z" + std::to_string(i + 1));
  }

  std::vector<Piece> full;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::string suffix = fs.size() == 1 ? "" : std::to_string(i + 1);
    GeneratorResult r = reconstruct(g, xy, fs[i], m, suffix, cert);
    if (!r.reasons.empty()) {
      for (const auto& why : r.reasons) cert.reasons.push_back(coords[2 + i] + ": " + why);
      continue;
    }
    for (std::size_t k = 0; k < r.curve.edges.size(); ++k) {
      if (!r.curve.active[k] || r.curve.edges[k].mult == 0) continue;
      const auto& e = r.curve.edges[k];
      std::optional<Rat> len;
      if (e.v1 >= 0) len = e.length;
      std::string why;
      auto lifted = lift(r.curve.vertices[e.v0], e.dir, len, e.mult, i, Fs, why);
      if (!lifted) {
        cert.reasons.push_back(why);
        continue;
      }
      full.push_back(*lifted);
    }
  }
  if (!cert.reasons.empty()) {
    cert.verdict = Verdict::NotCertified;
    return cert;
  }
  // Parts of trop(g) where every modification is a graph.
  for (const auto& gp : xy.pieces) {
    std::vector<Rat> b = breakpoints(gp, Fs);
    std::size_t n = gp.len ? b.size() - 1 : b.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::optional<Rat> len;
      if (k + 1 < b.size()) len = b[k + 1] - b[k];
      Rat mid = len ? Rat(b[k] + *len / 2) : Rat(b[k] + 1);
      Rat mx = gp.p.x + mid * gp.d[0], my = gp.p.y + mid * gp.d[1];
      Rat px = gp.p.x + b[k] * gp.d[0], py = gp.p.y + b[k] * gp.d[1];
      int corner = 0;
      Piece pc{{px, py}, {gp.d[0], gp.d[1]}, len, gp.mult, false};
      for (const auto& F : Fs) {
        auto am = argmin_at(F, mx, my);
        if (am.size() > 1) ++corner;
        pc.p.push_back(term_at(F[am[0]], px, py));
        pc.d.push_back(F[am[0]].e[0] * gp.d[0] + F[am[0]].e[1] * gp.d[1]);
      }
      if (corner == 0) full.push_back(pc);
      if (corner > 1) cert.reasons.push_back("two modifications share a corner edge at " + pt_str({px, py}));
    }
  }
  Arrangement a = simplify(arrange(full, coords.size()));
  cert.curve = to_space_curve(a, coords);
  analyse(cert, genus);
  return cert;
}

Certificate certify_faithful(const HECurve& c, const ReembedPlan& plan, std::optional<PlaneMatrix> plane) {
  return certify_embedding(c.defining_poly(), plan.fs, c.genus(), plane);
}

bool audit_certificate(const Certificate& cert, int genus) {
  if (cert.verdict != Verdict::Faithful) return true;
  const SpaceCurve& c = cert.curve;
  const int nv = static_cast<int>(c.vertices.size());
  // Leaf pruning on bounded edges, counted independently of MetricGraph.
  std::vector<int> deg(nv, 0);
  std::vector<bool> alive;
  int bounded = 0;
  for (const auto& e : c.edges) {
    alive.push_back(e.v1 >= 0);
    if (e.v1 >= 0) {
      ++deg[e.v0];
      ++deg[e.v1];
      ++bounded;
    }
  }
  std::vector<int> parent(nv);
  for (int v = 0; v < nv; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  int comps = nv;
  for (const auto& e : c.edges)
    if (e.v1 >= 0 && find(e.v0) != find(e.v1)) {
      parent[find(e.v0)] = find(e.v1);
      --comps;
    }
  if (bounded - nv + comps != genus) return false;
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      if (!alive[i]) continue;
      const auto& e = c.edges[i];
      if (deg[e.v0] == 1 || deg[e.v1] == 1) {
        alive[i] = false;
        --deg[e.v0];
        --deg[e.v1];
        pruned = true;
      }
    }
  }
  // Stars of the surviving vertices, checked by enumerating reachable
  // partial sums rather than sub-weightings.
  std::vector<std::vector<std::pair<std::vector<long>, int>>> stars(nv);
  for (const auto& e : c.edges) {
    stars[e.v0].push_back({e.dir, e.mult});
    if (e.v1 >= 0) {
      std::vector<long> d = e.dir;
      for (auto& x : d) x = -x;
      stars[e.v1].push_back({d, e.mult});
    }
  }
  auto irreducible = [](const std::vector<std::pair<std::vector<long>, int>>& st) {
    int total = 0;
    for (const auto& [d, m] : st) total += m;
    // reachable[(sum, count)]: sub-weightings with that sum and total weight.
    std::set<std::pair<std::vector<long>, int>> reach{{std::vector<long>(st.front().first.size(), 0), 0}};
    for (const auto& [d, m] : st) {
      std::set<std::pair<std::vector<long>, int>> next;
      for (const auto& [sum, cnt] : reach)
        for (int k = 0; k <= m; ++k) {
          std::vector<long> s2 = sum;
          for (std::size_t i = 0; i < s2.size(); ++i) s2[i] += k * d[i];
          next.insert({s2, cnt + k});
        }
      reach = std::move(next);
    }
    for (const auto& [sum, cnt] : reach)
      if (cnt > 0 && cnt < total && std::all_of(sum.begin(), sum.end(), [](long x) { return x == 0; }))
        return false;
    return true;
  };
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (!alive[i]) continue;
    const auto& e = c.edges[i];
    if (e.mult != 1 || !irreducible(stars[e.v0]) || !irreducible(stars[e.v1])) return false;
  }
  return true;
}

SignedPlan certified_plan(const HECurve& c, bool combine, std::optional<PlaneMatrix> plane) {
  ReembedPlan plan = reembedding_plan(c, combine);
  SignedPlan best{plan, certify_faithful(c, plan, plane), {}};
  if (best.certificate.verdict == Verdict::Faithful) return best;
  std::vector<int> js;
  for (const auto& b : plan.blocks)
    for (int j : b.cycle_indices()) js.push_back(j);
  const std::vector<std::string> xy{"x", "y"};
  for (unsigned mask = 1; mask < (1U << js.size()); ++mask) {
    std::vector<int> flip;
    for (std::size_t k = 0; k < js.size(); ++k)
      if (mask >> k & 1U) flip.push_back(js[k]);
    std::vector<MPoly> fs;
    for (const auto& f : plan.fs) {
      MPoly g = f.with_vars(xy);
      for (int j : flip) {
        RatFunc cj = g.coefficient({j, 0});
        if (!cj.is_zero()) g -= MPoly::monomial(cj * RatFunc(2), {j, 0}, xy);
      }
      fs.push_back(g);
    }
    ReembedPlan alt = plan_from_fs(c, plan.blocks, fs, plan.combined);
    alt.notes = plan.notes;
    Certificate cert = certify_faithful(c, alt, plane);
    if (cert.verdict == Verdict::Faithful) {
      alt.notes.push_back("certified after flipping the sign of cycle coefficients");
      return {alt, cert, flip};
    }
  }
  return best;
}

}  // namespace hypertrop
