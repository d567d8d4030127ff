#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "hypertrop/cones.hpp"
#include "hypertrop/parse.hpp"
#include "hypertrop/projections.hpp"
#include "report.hpp"

using namespace hypertrop;
using cli::Json;

namespace {

const std::string kData = HYPERTROP_TEST_DATA;

struct Outcome {
  int code;
  Json report;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  Json j = out.str().empty() ? Json() : Json::parse(out.str());
  return {code, j, err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hypertrop_cli_" + name)).string();
}

}  // namespace

TEST_CASE("tropicalize reports the library curve") {
  const std::string expr = "-x^3-4*x^2+y^2-8*t^4*x";
  Outcome o = run({"tropicalize", expr});
  REQUIRE(o.code == 0);
  CHECK(o.report["exit"] == 0);
  CHECK(o.report["result"] == cli::to_json(trop_curve(parse_expr(expr, {"x", "y"}))));
}

TEST_CASE("tropicalize accepts an explicit separator and custom variables") {
  Outcome a = run({"tropicalize", "--", "-x+y+1"});
  Outcome b = run({"tropicalize", "--vars", "u,v", "-u+v+1"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.report["result"]["vertices"] == b.report["result"]["vertices"]);
  CHECK(a.report["result"]["rays"].size() == 3);
}

TEST_CASE("a constant polynomial has an empty curve and an empty canvas") {
  std::string svg = tmp_path("empty.svg");
  Outcome o = run({"tropicalize", "1+t", "--out", svg});
  REQUIRE(o.code == 0);
  CHECK(o.report["result"]["vertices"].empty());
  CHECK(o.report["result"]["edges"].empty());
  CHECK(o.report["result"]["rays"].empty());
  std::string s = slurp(svg);
  CHECK(s.find("<svg") == 0);
  CHECK(s.find("stroke=\"black\"") == std::string::npos);
  std::filesystem::remove(svg);
}

TEST_CASE("svg output is deterministic") {
  std::string a = tmp_path("a.svg"), b = tmp_path("b.svg");
  std::string da = tmp_path("da.svg"), db = tmp_path("db.svg");
  const std::string expr = "x^3+y^3+t*x*y+t^2*x^2*y+1";
  REQUIRE(run({"tropicalize", expr, "--out", a, "--dual", da}).code == 0);
  REQUIRE(run({"tropicalize", expr, "--out", b, "--dual", db}).code == 0);
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(da) == slurp(db));
  std::string ma = tmp_path("ma.svg"), mb = tmp_path("mb.svg");
  REQUIRE(run({"modification", "t^2*x+y+x^2", "--out", ma}).code == 0);
  REQUIRE(run({"modification", "t^2*x+y+x^2", "--out", mb}).code == 0);
  CHECK(slurp(ma) == slurp(mb));
  for (const auto& p : {a, b, da, db, ma, mb}) std::filesystem::remove(p);
}

TEST_CASE("parse errors exit with the usage code") {
  Outcome o = run({"tropicalize", "x+"});
  CHECK(o.code == cli::kUsage);
  CHECK(o.report["exit"] == cli::kUsage);
  CHECK(o.report.contains("error"));
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"certify", data("missing.json")}).code == cli::kUsage);
}

TEST_CASE("certify exit codes follow the verdict") {
  Outcome w = run({"certify", data("weierstrass.json")});
  CHECK(w.code == cli::kOk);
  CHECK(w.report["result"]["certificate"]["verdict"] == "Faithful");

  Outcome two = run({"certify", data("two_cycles.json")});
  CHECK(two.code == cli::kNotCertified);
  CHECK(two.report["result"]["certificate"]["verdict"] == "NotCertified");

  Outcome neg = run({"certify", data("two_cycles_negated.json")});
  CHECK(neg.code == cli::kOk);
  CHECK(neg.report["result"]["certificate"]["skeleton"]["cycle_lengths"] == Json::array({"4", "4"}));

  CHECK(run({"certify", data("bad_genus.json")}).code == cli::kDomain);
  CHECK(run({"certify", data("weierstrass.json"), "--identity"}).code == cli::kNotCertified);
}

TEST_CASE("certify matches the library certificate") {
  cli::CurveFile cf = cli::load_curve_file(data("weierstrass.json"));
  REQUIRE(cf.hyperelliptic);
  SignedPlan sp = certified_plan(*cf.hyperelliptic, false);
  Outcome o = run({"certify", data("weierstrass.json")});
  CHECK(o.report["result"]["certificate"] == cli::to_json(sp.certificate));
  CHECK(o.report["result"]["plan"] == cli::to_json(sp.plan));
}

TEST_CASE("translated cubic certifies with one cycle of length 10") {
  Outcome o = run({"certify", data("cubic_translated.json")});
  CHECK(o.code == cli::kOk);
  CHECK(o.report["result"]["certificate"]["skeleton"]["cycle_lengths"] == Json::array({"10"}));
}

TEST_CASE("classify and reembed wrap the library") {
  Outcome c = run({"classify", data("two_cycles.json")});
  REQUIRE(c.code == 0);
  Json kinds = Json::array();
  for (const auto& b : c.report["result"]["blocks"]) kinds.push_back(b["kind"]);
  CHECK(kinds == Json::array({"Cycle", "Bridge", "Cycle"}));
  CHECK(c.report["result"]["expected_betti"] == 2);

  cli::CurveFile cf = cli::load_curve_file(data("two_cycles.json"));
  Outcome r = run({"reembed", data("two_cycles.json")});
  CHECK(r.report["result"] == cli::to_json(reembedding_plan(*cf.hyperelliptic, true)));
}

TEST_CASE("modification wraps the library complex") {
  Outcome o = run({"modification", "t^2*x+y"});
  REQUIRE(o.code == 0);
  PolyComplex3 pc = modification_complex(tropicalize(parse_expr("t^2*x+y", {"x", "y"})), Convention::Min);
  REQUIRE(o.report["result"]["cells"].size() == pc.cells.size());
  for (std::size_t i = 0; i < pc.cells.size(); ++i) CHECK(o.report["result"]["cells"][i] == cli::to_json(pc.cells[i]));
  CHECK(run({"modification", "t^2*x+y", "--max"}).report["result"]["convention"] == "max");
}

TEST_CASE("cones classify agrees with classify_weight") {
  Weight u = sample_point(xz_cones().front());
  std::string arg;
  for (std::size_t k = 0; k < u.size(); ++k) arg += (k ? "," : "") + rat_str(u[k]);
  Outcome o = run({"cones", "classify", "--u", arg});
  REQUIRE(o.code == 0);
  CHECK(o.report["result"]["in_theta3"] == true);
  Json expected = classify_weight(u);
  CHECK(o.report["result"]["refined"] == expected);
  CHECK(run({"cones", "classify", "--u", "1,2"}).code == cli::kUsage);
}

TEST_CASE("cones sample honours extra inequalities") {
  Outcome plain = run({"cones", "sample", "--cone", "C_{1A}", "--integral"});
  REQUIRE(plain.code == 0);
  for (const auto& x : plain.report["result"]["point"]) CHECK(x.get<std::string>().find('/') == std::string::npos);
  Outcome infeasible =
      run({"cones", "sample", "--cone", "C_{1A}", "--ineq", "1,0,0,0,0,0", "--ineq", "-1,0,0,0,0,0"});
  CHECK(infeasible.code == cli::kDomain);
  CHECK(run({"cones", "sample", "--cone", "C_{9Z}"}).code == cli::kUsage);
}

TEST_CASE("leading terms over a row are the union of its cones") {
  const std::string exps = "1,0,0,0,0,0;0,0,1,0,0,0;0,1,0,0,0,0;0,0,0,1,0,1";
  Outcome o = run({"cones", "leading-terms", "--cone", "C_{3}", "--exponents", exps});
  REQUIRE(o.code == 0);
  CHECK(o.report["result"]["per_cone"].size() == 4);
  std::set<std::string> uni;
  for (const auto& pc : o.report["result"]["per_cone"])
    for (const auto& n : pc["leading"]) uni.insert(n.get<std::string>());
  std::set<std::string> all;
  for (const auto& n : o.report["result"]["leading"]) all.insert(n.get<std::string>());
  CHECK(uni == all);
}

TEST_CASE("cones instance produces a 3-theta curve file") {
  Outcome o = run({"cones", "instance", "--cone", "C_{2B}", "--seed", "5"});
  REQUIRE(o.code == 0);
  cli::CurveFile cf = cli::parse_curve_file(o.report["result"]);
  REQUIRE(cf.hyperelliptic);
  CHECK(cf.genus == 3);
  CHECK(cf.fs.size() == 1);
  auto blocks = detect_blocks(*cf.hyperelliptic);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks.front().kind == BlockKind::ThreeTheta);
}
