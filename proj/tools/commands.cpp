#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "hypertrop/cones.hpp"
#include "hypertrop/errors.hpp"
#include "hypertrop/parse.hpp"
#include "report.hpp"
#include "svg.hpp"

namespace hypertrop::cli {

namespace {

const std::vector<std::string> kXY{"x", "y"};

struct Options {
  std::string input;
  std::string vars = "x,y";
  std::string out, dual;
  double bbox = 3;
  std::vector<long> plane;
  bool combine = false;
  bool identity = false;
  bool max = false;
  bool integral = false;
  std::string cone;
  std::string u;
  std::string exponents;
  std::vector<std::string> ineqs;
  unsigned seed = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

Rat parse_rat(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: " + s);
  }
}

std::vector<Rat> parse_rats(const std::string& s, std::size_t n) {
  std::vector<Rat> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rat(part));
  if (out.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " comma-separated numbers in \"" + s + "\"");
  return out;
}

std::optional<PlaneMatrix> plane_option(const std::vector<long>& p) {
  if (p.empty()) return std::nullopt;
  if (p.size() != 9) throw std::invalid_argument("--plane takes nine integers");
  PlaneMatrix m{};
  for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = p[i];
  return m;
}

bool looks_like_file(const std::string& s) {
  return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0 && std::filesystem::exists(s);
}

Json weight_json(const Weight& u) {
  Json j = Json::array();
  for (const auto& x : u) j.push_back(rat_str(x));
  return j;
}

// All named cones: the 3-theta cone, the sixteen xz cones and their
// dominance refinements.
std::vector<Cone> all_cones() {
  std::vector<Cone> out{theta3_cone()};
  for (const auto& c : xz_cones()) {
    out.push_back(c);
    for (auto& r : dominance_refinement(c))
      if (r.label != c.label) out.push_back(r);
  }
  return out;
}

// Cones matching a label; "C_{3}" selects the four cones of that row.
std::vector<Cone> find_cones(const std::string& label) {
  std::vector<Cone> out;
  for (auto& c : all_cones())
    if (c.label == label) out.push_back(c);
  if (out.empty() && label.size() == 5 && label.rfind("C_{", 0) == 0 && label[4] == '}')
    for (auto& c : xz_cones())
      if (c.xz_row == label[3] - '0') out.push_back(c);
  if (out.empty()) throw std::invalid_argument("unknown cone label " + label);
  return out;
}

std::string beta_monomial(const std::vector<int>& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += std::string("b") + kWeightNames[k];
    if (e[k] != 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

Json cmd_tropicalize(const Options& o) {
  MPoly p;
  if (looks_like_file(o.input))
    p = load_curve_file(o.input).poly;
  else
    p = parse_expr(o.input, split(o.vars, ','));
  TropCurve c = trop_curve(p);
  SvgOptions svg{o.bbox};
  if (!o.out.empty()) write_file(o.out, curve_svg(c, svg));
  if (!o.dual.empty()) write_file(o.dual, subdivision_svg(c, svg));
  return to_json(c);
}

const HECurve& require_hyperelliptic(const CurveFile& cf) {
  if (!cf.hyperelliptic) throw DomainError("curve is not of the form y^2 - h(x)");
  return *cf.hyperelliptic;
}

Json cmd_classify(const Options& o) {
  CurveFile cf = load_curve_file(o.input);
  const HECurve& c = require_hyperelliptic(cf);
  Json ordered = Json::array();
  for (const auto& r : c.ordered()) {
    Json j{{"omega", r.minus_infinity ? Json("-inf") : Json(rat_str(r.omega))}};
    if (r.init) j["init"] = rat_str(*r.init);
    ordered.push_back(j);
  }
  auto blocks = detect_blocks(c);
  Json bs = Json::array();
  for (const auto& b : blocks) bs.push_back(to_json(b));
  return {{"genus", c.genus()}, {"ordered_roots", ordered}, {"blocks", bs}, {"expected_betti", expected_betti(blocks)}};
}

Json cmd_reembed(const Options& o) {
  CurveFile cf = load_curve_file(o.input);
  return to_json(reembedding_plan(require_hyperelliptic(cf), o.combine || cf.combine));
}

Json cmd_certify(const Options& o, int& code) {
  CurveFile cf = load_curve_file(o.input);
  std::optional<PlaneMatrix> plane = plane_option(o.plane);
  if (!plane) plane = cf.plane;
  bool identity = o.identity || cf.identity;
  Json j;
  Certificate cert;
  std::vector<MPoly> fs;
  if (identity || !cf.fs.empty() || !cf.hyperelliptic) {
    if (!identity) fs = cf.fs;
    cert = certify_embedding(cf.poly, fs, cf.genus, plane);
    Json fj = Json::array();
    for (const auto& f : fs) fj.push_back(f.to_string(true));
    j["fs"] = fj;
  } else {
    SignedPlan sp = certified_plan(*cf.hyperelliptic, o.combine || cf.combine, plane);
    fs = sp.plan.fs;
    cert = sp.certificate;
    j["plan"] = to_json(sp.plan);
    j["flipped"] = sp.flipped;
  }
  j["certificate"] = to_json(cert);
  if (!o.out.empty()) {
    MPoly shown = fs.empty() ? cf.poly : project_xz(cf.poly, fs.front());
    write_file(o.out, curve_svg(trop_curve(shown), SvgOptions{o.bbox}));
  }
  code = cert.verdict == Verdict::Faithful ? kOk : kNotCertified;
  return j;
}

Json cmd_modification(const Options& o) {
  TropPoly F = tropicalize(parse_expr(o.input, kXY));
  PolyComplex3 pc = modification_complex(F, o.max ? Convention::Max : Convention::Min);
  Json cells = Json::array();
  for (const auto& c : pc.cells) cells.push_back(to_json(c));
  if (!o.out.empty()) write_file(o.out, complex_svg(pc, SvgOptions{o.bbox}));
  return {{"convention", o.max ? "max" : "min"}, {"trop_poly", to_json(F)}, {"cells", cells}};
}

Json cmd_cones_classify(const Options& o) {
  Weight u = parse_rats(o.u, kNumWeights);
  bool inside = theta3_cone().closure_contains(u);
  Json j{{"u", weight_json(u)}, {"in_theta3", inside}};
  int row = inside ? xz_row_of(u) : 0;
  char letter = inside ? xz_letter_of(u) : 0;
  j["xz_cone"] = row && letter ? Json(std::string("C_{") + std::to_string(row) + letter + "}") : Json(nullptr);
  j["refined"] = classify_weight(u);
  return j;
}

Cone single_cone(const Options& o) {
  auto cs = find_cones(o.cone);
  if (cs.size() != 1) throw std::invalid_argument("label " + o.cone + " names several cones");
  Cone c = cs.front();
  for (const auto& q : o.ineqs) c.add({parse_rats(q, kNumWeights), true});
  return c;
}

Json cmd_cones_sample(const Options& o) {
  Cone c = single_cone(o);
  Weight u = o.integral ? integral_sample_point(c) : sample_point(c);
  return {{"cone", c.label}, {"point", weight_json(u)}, {"integral", o.integral}};
}

Json cmd_cones_leading(const Options& o) {
  std::vector<std::vector<int>> exps;
  for (const auto& part : split(o.exponents, ';')) {
    std::vector<int> e;
    for (const auto& r : parse_rats(part, kNumWeights)) {
      if (r.get_den() != 1) throw std::invalid_argument("exponents must be integers");
      e.push_back(static_cast<int>(r.get_num().get_si()));
    }
    exps.push_back(e);
  }
  if (exps.empty()) throw std::invalid_argument("--exponents needs at least one exponent vector");
  Json per = Json::array();
  std::set<int> all;
  for (const auto& c : find_cones(o.cone)) {
    std::set<int> lead = leading_terms_over_cone(exps, c);
    Json names = Json::array();
    for (int i : lead) {
      names.push_back(beta_monomial(exps[i]));
      all.insert(i);
    }
    per.push_back({{"cone", c.label}, {"leading", names}});
  }
  Json names = Json::array();
  for (int i : all) names.push_back(beta_monomial(exps[i]));
  return {{"cone", o.cone}, {"per_cone", per}, {"leading", names}};
}

Json cmd_cones_instance(const Options& o) {
  Cone c = single_cone(o);
  Weight u = integral_sample_point(c);
  std::mt19937 rng(o.seed);
  std::uniform_int_distribution<int> coef(1, 9);
  std::vector<Rat> cs;
  for (std::size_t k = 0; k < kNumWeights; ++k) cs.push_back(Rat(coef(rng)));
  std::vector<RatFunc> b = instantiate_beta(u, cs);
  ThreeThetaInstance inst = three_theta_instance(b);
  auto sq = [](const RatFunc& r, int sign) { return Json{{"square", r.to_string()}, {"sign", sign}}; };
  return {{"genus", 3},
          {"roots", Json::array({sq(b[W2], 1), sq(b[W4] + b[W34], 1), sq(b[W4], 1), sq(b[W6] + b[W56], 1),
                                 sq(b[W6], 1), sq(b[W7], -1)})},
          {"options", {{"fs", Json::array({inst.f.to_string(true)})}}},
          {"weight", weight_json(u)},
          {"cone", c.label},
          {"seed", o.seed}};
}

Json cmd_cones_list() {
  Json j = Json::array();
  for (const auto& c : all_cones()) j.push_back(c.label);
  return j;
}

// CLI11 reads any token with a leading '-' as an option name. No option here
// has a short form, so such a token is either the value of the preceding
// option (rewritten as --opt=value) or a positional expression like "-x+y"
// (moved behind a "--" separator).
std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
  static const std::set<std::string> kValued{"--vars", "--out",  "--dual",      "--bbox", "--u",
                                             "--cone", "--ineq", "--exponents", "--seed"};
  static const std::regex kNumber(R"(-[0-9]+(\.[0-9]*)?)");
  if (std::find(args.begin(), args.end(), "--") != args.end()) return args;
  std::vector<std::string> front, tail;
  for (const auto& a : args) {
    bool dashed = a.size() > 1 && a[0] == '-' && a[1] != '-' && !std::regex_match(a, kNumber);
    if (!dashed) {
      front.push_back(a);
    } else if (!front.empty() && kValued.count(front.back())) {
      front.back() += "=" + a;
    } else {
      tail.push_back(a);
    }
  }
  if (tail.empty()) return front;
  front.push_back("--");
  front.insert(front.end(), tail.begin(), tail.end());
  return front;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical plane curves and faithful re-embeddings of hyperelliptic curves"};
  app.require_subcommand(1);
  Options o;

  auto* trop = app.add_subcommand("tropicalize", "Tropical curve of a polynomial or a curve file");
  trop->add_option("input", o.input, "Polynomial expression or curve file (.json)")->required();
  trop->add_option("--vars", o.vars, "Comma-separated variables of the expression");
  trop->add_option("--out", o.out, "Write the curve as SVG");
  trop->add_option("--dual", o.dual, "Write the dual subdivision as SVG");
  trop->add_option("--bbox", o.bbox, "Ray clipping margin in lattice units");

  auto* classify = app.add_subcommand("classify", "Building blocks of a hyperelliptic curve");
  classify->add_option("file", o.input, "Curve file")->required();

  auto* reembed = app.add_subcommand("reembed", "Re-embedding polynomials");
  reembed->add_option("file", o.input, "Curve file")->required();
  reembed->add_flag("--combine", o.combine, "Combine blocks into one polynomial");

  auto* certify = app.add_subcommand("certify", "Certify a faithful re-embedding");
  certify->add_option("file", o.input, "Curve file")->required();
  certify->add_flag("--combine", o.combine, "Combine blocks into one polynomial");
  certify->add_flag("--identity", o.identity, "Certify the plane embedding itself");
  certify->add_option("--plane", o.plane, "Projection matrix, nine integers row by row")->expected(9);
  certify->add_option("--out", o.out, "Write the xz projection (or the plane curve) as SVG");
  certify->add_option("--bbox", o.bbox, "Ray clipping margin in lattice units");

  auto* modif = app.add_subcommand("modification", "Modification of the plane along trop(F)");
  modif->add_option("input", o.input, "Polynomial expression in x, y")->required();
  modif->add_flag("--max", o.max, "Report in max convention (negated coordinates)");
  modif->add_option("--out", o.out, "Write the cells as SVG");
  modif->add_option("--bbox", o.bbox, "Clipping margin in lattice units");

  auto* cones = app.add_subcommand("cones", "Weight cones of the 3-theta family");
  cones->require_subcommand(1);
  auto* cclass = cones->add_subcommand("classify", "Cones containing a weight");
  cclass->add_option("--u", o.u, "Six comma-separated rationals (u2,u34,u4,u56,u6,u7)")->required();
  auto* csample = cones->add_subcommand("sample", "Interior point of a cone");
  csample->add_option("--cone", o.cone, "Cone label")->required();
  csample->add_option("--ineq", o.ineqs, "Extra strict inequality a.u > 0, six comma-separated rationals");
  csample->add_flag("--integral", o.integral, "Integral point");
  auto* clead = cones->add_subcommand("leading-terms", "Exponents that can lead over a cone");
  clead->add_option("--cone", o.cone, "Cone label, or C_{i} for a whole row")->required();
  clead->add_option("--exponents", o.exponents, "Beta exponent vectors, ';'-separated")->required();
  auto* cinst = cones->add_subcommand("instance", "Curve file for a random 3-theta instance");
  cinst->add_option("--cone", o.cone, "Cone label")->required();
  cinst->add_option("--seed", o.seed, "Seed for the coefficients");
  auto* clist = cones->add_subcommand("list", "Labels of all named cones");

  std::vector<std::string> norm = normalize_args(args);
  std::vector<std::string> rev(norm.rbegin(), norm.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  std::string name;
  for (auto* s : app.get_subcommands()) name = s->get_name();
  for (auto* s : cones->get_subcommands()) name = "cones " + s->get_name();

  Json report{{"command", name}};
  if (!o.input.empty()) report["input"] = o.input;
  int code = kOk;
  try {
    Json result;
    if (trop->parsed())
      result = cmd_tropicalize(o);
    else if (classify->parsed())
      result = cmd_classify(o);
    else if (reembed->parsed())
      result = cmd_reembed(o);
    else if (certify->parsed())
      result = cmd_certify(o, code);
    else if (modif->parsed())
      result = cmd_modification(o);
    else if (cclass->parsed())
      result = cmd_cones_classify(o);
    else if (csample->parsed())
      result = cmd_cones_sample(o);
    else if (clead->parsed())
      result = cmd_cones_leading(o);
    else if (cinst->parsed())
      result = cmd_cones_instance(o);
    else if (clist->parsed())
      result = cmd_cones_list();
    report["result"] = result;
  } catch (const ParseError& e) {
    code = kUsage;
    report["error"] = e.what();
  } catch (const DomainError& e) {
    code = kDomain;
    report["error"] = e.what();
  } catch (const std::invalid_argument& e) {
    code = kUsage;
    report["error"] = e.what();
  } catch (const Json::exception& e) {
    code = kUsage;
    report["error"] = e.what();
  } catch (const std::runtime_error& e) {
    code = kUsage;
    report["error"] = e.what();
  }
  report["exit"] = code;
  out << report.dump(2) << "\n";
  if (report.contains("error")) err << report["error"].get<std::string>() << "\n";
  return code;
}

}  // namespace hypertrop::cli
