#include "report.hpp"

#include <fstream>
#include <stdexcept>

#include "hypertrop/errors.hpp"
#include "hypertrop/parse.hpp"

namespace hypertrop::cli {

namespace {

const std::vector<std::string> kXY{"x", "y"};

Json vec_json(const Vec2i& v) { return Json::array({v[0], v[1]}); }

Json point_json(const Point2& p) { return Json::array({rat_str(p.x), rat_str(p.y)}); }

Json dual_json(const std::array<Vec2i, 2>& d) { return Json::array({vec_json(d[0]), vec_json(d[1])}); }

RootSpec root_from_json(const Json& r) {
  if (r.is_string()) return RootSpec::of(parse_ratfunc(r.get<std::string>()));
  if (r.is_object() && r.contains("square")) {
    int sign = r.value("sign", 1);
    if (sign != 1 && sign != -1) throw std::invalid_argument("root sign must be 1 or -1");
    return RootSpec::square(parse_ratfunc(r.at("square").get<std::string>()), sign);
  }
  throw std::invalid_argument("each root must be a string or {\"square\": ..., \"sign\": +-1}");
}

bool is_hyperelliptic_form(const MPoly& g) {
  MPoly rest = g.with_vars(kXY) - MPoly::monomial(RatFunc(1), {0, 2}, kXY);
  return rest.is_zero() || rest.degree("y") <= 0;
}

PlaneMatrix plane_from_json(const Json& p) {
  if (!p.is_array() || p.size() != 9) throw std::invalid_argument("plane must list nine integers");
  PlaneMatrix m{};
  for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = p.at(i).get<long>();
  return m;
}

}  // namespace

CurveFile parse_curve_file(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("curve file must be a JSON object");
  CurveFile cf;
  if (!j.contains("genus")) throw std::invalid_argument("curve file needs \"genus\"");
  cf.genus = j.at("genus").get<int>();
  if (j.contains("roots") == j.contains("poly"))
    throw std::invalid_argument("curve file needs exactly one of \"roots\" and \"poly\"");
  if (j.contains("roots")) {
    std::vector<RootSpec> roots;
    for (const auto& r : j.at("roots")) roots.push_back(root_from_json(r));
    if (static_cast<int>(roots.size()) != 2 * cf.genus)
      throw DomainError("genus " + std::to_string(cf.genus) + " needs " + std::to_string(2 * cf.genus) +
                        " nonzero roots, got " + std::to_string(roots.size()));
    cf.hyperelliptic = HECurve::from_roots(roots);
    cf.poly = cf.hyperelliptic->defining_poly();
  } else {
    cf.poly = parse_expr(j.at("poly").get<std::string>(), kXY);
    if (is_hyperelliptic_form(cf.poly)) {
      cf.hyperelliptic = HECurve::from_poly(cf.poly);
      if (cf.hyperelliptic->genus() != cf.genus)
        throw DomainError("polynomial has genus " + std::to_string(cf.hyperelliptic->genus()) + ", file says " +
                          std::to_string(cf.genus));
    }
  }
  if (j.contains("options")) {
    const Json& o = j.at("options");
    cf.combine = o.value("combine", false);
    cf.identity = o.value("identity", false);
    if (o.contains("fs"))
      for (const auto& f : o.at("fs")) cf.fs.push_back(parse_expr(f.get<std::string>(), kXY));
    if (o.contains("plane")) cf.plane = plane_from_json(o.at("plane"));
  }
  return cf;
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return parse_curve_file(j);
}

Json rat_json(const Rat& r) { return rat_str(r); }

Json to_json(const TropPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms) terms.push_back({{"exponent", e}, {"coefficient", rat_str(c)}});
  return {{"vars", p.vars}, {"terms", terms}};
}

Json to_json(const TropCurve& c) {
  Json vs = Json::array(), es = Json::array(), rs = Json::array(), ls = Json::array(), cyc = Json::array();
  for (const auto& v : c.vertices) vs.push_back(point_json(v));
  for (const auto& e : c.edges)
    es.push_back({{"v0", e.v0},
                  {"v1", e.v1},
                  {"dir", vec_json(e.dir)},
                  {"length", rat_str(e.length)},
                  {"mult", e.mult},
                  {"dual", dual_json(e.dual)}});
  for (const auto& r : c.rays)
    rs.push_back({{"v", r.v}, {"dir", vec_json(r.dir)}, {"mult", r.mult}, {"dual", dual_json(r.dual)}});
  for (const auto& l : c.lines)
    ls.push_back(
        {{"point", point_json(l.point)}, {"dir", vec_json(l.dir)}, {"mult", l.mult}, {"dual", dual_json(l.dual)}});
  for (const auto& len : c.cycle_lengths()) cyc.push_back(rat_str(len));
  return {{"trop_poly", to_json(c.poly)}, {"vertices", vs}, {"edges", es},   {"rays", rs},
          {"lines", ls},                  {"betti", c.first_betti()}, {"cycle_lengths", cyc},
          {"balanced", c.is_balanced()}};
}

Json to_json(const BuildingBlock& b) {
  Json j{{"kind", to_string(b.kind)},
         {"start_index", b.start_index},
         {"positions", Json::array({b.first_position, b.last_position})},
         {"cycles", b.cycles()}};
  if (b.kind == BlockKind::KPoint) j["k"] = b.k;
  return j;
}

Json to_json(const ReembedPlan& p) {
  Json blocks = Json::array(), fs = Json::array(), gens = Json::array();
  for (const auto& b : p.blocks) blocks.push_back(to_json(b));
  for (const auto& f : p.fs) fs.push_back(f.to_string(true));
  for (const auto& g : p.generators) gens.push_back(g.to_string(true));
  return {{"blocks", blocks}, {"fs", fs},           {"new_vars", p.new_vars},
          {"generators", gens}, {"combined", p.combined}, {"notes", p.notes}};
}

Json plane_json(const PlaneMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(Json::array({r[0], r[1], r[2]}));
  return rows;
}

Json to_json(const Certificate& c) {
  Json vs = Json::array(), es = Json::array(), table = Json::array(), irr = Json::array(), cyc = Json::array();
  for (const auto& v : c.curve.vertices) {
    Json p = Json::array();
    for (const auto& x : v) p.push_back(rat_str(x));
    vs.push_back(p);
  }
  for (const auto& e : c.curve.edges) {
    Json j{{"v0", e.v0}, {"v1", e.v1 < 0 ? Json(nullptr) : Json(e.v1)}, {"dir", e.dir}, {"mult", e.mult}};
    if (e.v1 >= 0) j["length"] = rat_str(e.length);
    es.push_back(j);
  }
  for (const auto& t : c.edge_table)
    table.push_back({{"projection", t.projection}, {"edge", t.id}, {"mult", t.mult}, {"dual", dual_json(t.dual)}});
  static const char* roman[] = {"", "i", "ii", "iii", "iv"};
  for (const auto& i : c.irregularities)
    irr.push_back({{"type", roman[i.type]}, {"projection", i.projection}, {"detail", i.detail}});
  for (const auto& len : c.cycle_lengths) cyc.push_back(rat_str(len));
  Json j{{"verdict", c.verdict == Verdict::Faithful ? "Faithful" : "NotCertified"},
         {"reasons", c.reasons},
         {"skeleton", {{"cycle_lengths", cyc}, {"vertex_valences", c.skeleton_valences}}},
         {"curve", {{"coords", c.curve.coords}, {"vertices", vs}, {"edges", es}}},
         {"edge_table", table},
         {"irregularities", irr}};
  if (c.plane) j["plane"] = plane_json(*c.plane);
  return j;
}

Json to_json(const Cell3& c) {
  auto form = [](const AffineForm& f) {
    return Json::array({rat_str(f.a[0]), rat_str(f.a[1]), rat_str(f.a[2]), rat_str(f.b)});
  };
  Json eqs = Json::array(), ineqs = Json::array();
  for (const auto& e : c.eqs) eqs.push_back(form(e));
  for (const auto& e : c.ineqs) ineqs.push_back(form(e));
  return {{"label", c.label}, {"system", to_string(c)}, {"eqs", eqs}, {"ineqs", ineqs}};
}

}  // namespace hypertrop::cli
