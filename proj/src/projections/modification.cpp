#include <numeric>
#include <set>

#include "hypertrop/lp.hpp"
#include "hypertrop/errors.hpp"
#include "hypertrop/projections.hpp"

namespace hypertrop {

namespace {

using P3 = std::array<Rat, 3>;

// T_i(w) - T_j(w) as a form on R^3 (no z dependence).
AffineForm term_diff(const Exponent& ei, const Rat& ai, const Exponent& ej, const Rat& aj) {
  AffineForm f;
  f.a = {Rat(ei[0] - ej[0]), Rat(ei[1] - ej[1]), Rat(0)};
  f.b = ai - aj;
  return f;
}

AffineForm negate_coords(AffineForm f) {
  for (auto& c : f.a) c = -c;
  return f;
}

// Scale to coprime integers; the sign is kept for inequalities.
AffineForm primitive_form(AffineForm f, bool fix_sign) {
  Int den = 1;
  for (const auto& c : f.a) den = lcm(den, Int(c.get_den()));
  den = lcm(den, Int(f.b.get_den()));
  Int g = 0;
  for (auto& c : f.a) {
    c *= den;
    g = gcd(g, Int(c.get_num()));
  }
  f.b *= den;
  g = gcd(g, Int(f.b.get_num()));
  if (g != 0)
    for (Rat* c : {&f.a[0], &f.a[1], &f.a[2], &f.b}) *c /= Rat(g);
  if (fix_sign) {
    for (const Rat* c : {&f.a[0], &f.a[1], &f.a[2], &f.b})
      if (*c != 0) {
        if (*c < 0)
          for (Rat* d : {&f.a[0], &f.a[1], &f.a[2], &f.b}) *d = -*d;
        break;
      }
  }
  return f;
}

std::vector<LinRow> rows_of(const Cell3& c) {
  std::vector<LinRow> rows;
  for (const auto& e : c.eqs) rows.push_back({{e.a[0], e.a[1], e.a[2]}, Rel::Eq, -e.b});
  for (const auto& e : c.ineqs) rows.push_back({{e.a[0], e.a[1], e.a[2]}, Rel::Ge, -e.b});
  return rows;
}

// min of form over the polyhedron; nullopt if unbounded below.
std::optional<Rat> min_over(const AffineForm& f, const std::vector<LinRow>& rows) {
  LpResult r = lp_minimize({f.a[0], f.a[1], f.a[2]}, rows);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.value + f.b;
}

bool contained(const Cell3& a, const Cell3& b) {
  auto rows = rows_of(a);
  for (const auto& e : b.ineqs) {
    auto m = min_over(e, rows);
    if (!m || *m < 0) return false;
  }
  for (const auto& e : b.eqs) {
    auto lo = min_over(e, rows);
    AffineForm neg{{-e.a[0], -e.a[1], -e.a[2]}, -e.b};
    auto hi = min_over(neg, rows);
    if (!lo || !hi || *lo != 0 || *hi != 0) return false;
  }
  return true;
}

std::string term_name(const Exponent& e) {
  std::string s;
  auto add = [&](const char* v, int k) {
    if (k == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (k != 1) s += "^" + std::to_string(k);
  };
  add("x", e[0]);
  add("y", e[1]);
  return s.empty() ? "1" : s;
}

}  // namespace

bool same_polyhedron(const Cell3& a, const Cell3& b) {
  bool ea = !lp_feasible(rows_of(a), 3), eb = !lp_feasible(rows_of(b), 3);
  if (ea || eb) return ea && eb;
  return contained(a, b) && contained(b, a);
}

Cell3 reduce_cell(const Cell3& c) {
  Cell3 out = c;
  out.eqs.clear();
  for (const auto& e : c.eqs) out.eqs.push_back(primitive_form(e, true));
  std::vector<AffineForm> keep;
  for (const auto& e : c.ineqs) keep.push_back(primitive_form(e, false));
  for (std::size_t i = 0; i < keep.size();) {
    Cell3 rest = out;
    rest.ineqs = keep;
    rest.ineqs.erase(rest.ineqs.begin() + static_cast<long>(i));
    auto m = min_over(keep[i], rows_of(rest));
    if (m && *m >= 0)
      keep.erase(keep.begin() + static_cast<long>(i));
    else
      ++i;
  }
  out.ineqs = keep;
  return out;
}

std::string to_string(const Cell3& c, const std::array<std::string, 3>& names) {
  auto form = [&](const AffineForm& f) {
    std::string s;
    for (int i = 0; i < 3; ++i) {
      if (f.a[i] == 0) continue;
      Rat v = f.a[i];
      if (!s.empty()) s += v < 0 ? " - " : " + ";
      else if (v < 0) s += "-";
      Rat av = abs(v);
      if (av != 1) s += rat_str(av) + "*";
      s += names[i];
    }
    if (f.b != 0 || s.empty()) {
      if (s.empty()) s = rat_str(f.b);
      else s += (f.b < 0 ? " - " : " + ") + rat_str(abs(f.b));
    }
    return s;
  };
  std::string s = "{";
  bool first = true;
  for (const auto& e : c.eqs) {
    s += (first ? "" : ", ") + form(e) + " = 0";
    first = false;
  }
  for (const auto& e : c.ineqs) {
    s += (first ? "" : ", ") + form(e) + " >= 0";
    first = false;
  }
  return s + "}";
}

PolyComplex3 modification_complex(const TropPoly& F, Convention conv) {
  PolyComplex3 pc;
  pc.convention = conv;
  std::vector<std::pair<Exponent, Rat>> terms(F.terms.begin(), F.terms.end());
  for (auto& [e, a] : terms)
    if (e.size() != 2) throw DomainError("modification_complex expects a tropical polynomial in two variables");
  std::vector<Cell3> cells;
  const AffineForm zf{{Rat(0), Rat(0), Rat(1)}, Rat(0)};
  auto z_minus = [&](std::size_t i) {
    AffineForm f = zf;
    f.a[0] = -terms[i].first[0];
    f.a[1] = -terms[i].first[1];
    f.b = -terms[i].second;
    return f;
  };
  // Graph cells: Z = T_i where T_i is minimal, kept when two-dimensional.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Cell3 c;
    c.eqs.push_back(z_minus(i));
    std::vector<LinRow> interior;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (j == i) continue;
      AffineForm d = term_diff(terms[j].first, terms[j].second, terms[i].first, terms[i].second);
      c.ineqs.push_back(d);
      interior.push_back({{d.a[0], d.a[1], Rat(-1)}, Rel::Ge, -d.b});
    }
    // Slack variable in the z slot: maximize s with T_j - T_i >= s.
    interior.push_back({{Rat(0), Rat(0), Rat(1)}, Rel::Le, Rat(1)});
    LpResult r = lp_maximize({Rat(0), Rat(0), Rat(1)}, interior);
    if (terms.size() > 1 && !(r.status == LpStatus::Optimal && r.value > 0)) continue;
    c.label = "Z = " + term_name(terms[i].first);
    cells.push_back(c);
  }
  // Attached cells over each edge of the tropical curve, along +e3.
  TropCurve tc = trop_curve(F);
  auto attach = [&](const std::array<Vec2i, 2>& dual) {
    auto index_of = [&](const Vec2i& p) {
      for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].first[0] == p[0] && terms[i].first[1] == p[1]) return i;
      throw DomainError("dual edge endpoint is not a term");
    };
    std::size_t i = index_of(dual[0]), j = index_of(dual[1]);
    Cell3 c;
    c.eqs.push_back(term_diff(terms[i].first, terms[i].second, terms[j].first, terms[j].second));
    for (std::size_t k = 0; k < terms.size(); ++k)
      if (k != i && k != j) c.ineqs.push_back(term_diff(terms[k].first, terms[k].second, terms[i].first, terms[i].second));
    c.ineqs.push_back(z_minus(i));
    c.label = term_name(terms[i].first) + " = " + term_name(terms[j].first) + " <= Z";
    return c;
  };
  std::vector<Cell3> walls;
  for (const auto& e : tc.edges) walls.push_back(attach(e.dual));
  for (const auto& r : tc.rays) walls.push_back(attach(r.dual));
  for (const auto& l : tc.lines) walls.push_back(attach(l.dual));
  // Edges of the curve split at vertices give distinct walls already;
  // only exact duplicates (lines reported twice) are dropped.
  for (auto& w : walls) {
    bool dup = false;
    for (const auto& c : cells) dup = dup || same_polyhedron(c, w);
    if (!dup) cells.push_back(w);
  }
  for (auto& c : cells) {
    c = reduce_cell(c);
    if (conv == Convention::Max) {
      for (auto& e : c.eqs) e = primitive_form(negate_coords(e), true);
      for (auto& e : c.ineqs) e = negate_coords(e);
    }
    c.dim = 2;
    pc.cells.push_back(c);
  }
  return pc;
}

}  // namespace hypertrop
