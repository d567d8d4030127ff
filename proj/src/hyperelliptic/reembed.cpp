#include <algorithm>
#include <set>

#include "hypertrop/errors.hpp"
#include "hypertrop/hyperelliptic.hpp"
#include "hypertrop/tropical.hpp"

namespace hypertrop {

namespace {

const std::vector<std::string> kXY{"x", "y"};

struct Coefficient {
  RatFunc value;
  bool flipped = false;
};

// Coefficient of x^j in f for the cycle dual to (0,2)-(2j,0). Its square
// is the leading term of the x^{2j} coefficient of h, which for given roots
// is -prod(alpha at positions 2j+1..N). The opposite sign is the fallback.
Coefficient cycle_coefficient(int j, const HECurve& c) {
  RatFunc square;
  if (c.has_roots()) {
    square = RatFunc(-1);
    const auto& ord = c.ordered();
    for (std::size_t p = 2 * j; p < ord.size(); ++p) square *= c.roots()[ord[p].source].value;
  } else {
    RatFunc a = c.h().coefficient({2 * j, 0});
    if (a.is_zero()) throw NotASquareError("x^" + std::to_string(2 * j) + " coefficient of h vanishes");
    square = a.leading_term();
  }
  if (is_square_ratfunc(square)) return {sqrt_ratfunc(square), false};
  RatFunc other = -square;
  if (is_square_ratfunc(other)) return {sqrt_ratfunc(other), true};
  throw NotASquareError("cycle " + std::to_string(j) + ": neither " + square.to_string() + " nor its negative is a square in Q(t)");
}

int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

MPoly y_minus(const std::vector<std::pair<int, RatFunc>>& terms) {
  MPoly f = MPoly::variable("y", kXY);
  for (const auto& [j, cj] : terms) f -= MPoly::monomial(cj, {j, 0}, kXY);
  return f;
}

}  // namespace

std::string pass_through_failure(const MPoly& f, const MPoly& g, const std::vector<int>& js) {
  TropPoly tf = tropicalize(f.with_vars(kXY));
  TropCurve tg = trop_curve(g.with_vars(kXY));
  auto tied = [&](const std::vector<Point2>& pts) {
    // Some pair of terms of trop(f) is minimal at every point; the set where
    // a fixed pair attains the minimum is convex, so endpoints suffice.
    std::vector<std::set<Exponent>> mins;
    for (const auto& p : pts) {
      auto am = tf.argmin({p.x, p.y});
      mins.emplace_back(am.begin(), am.end());
    }
    std::set<Exponent> common = mins[0];
    for (std::size_t i = 1; i < mins.size(); ++i) {
      std::set<Exponent> next;
      std::set_intersection(common.begin(), common.end(), mins[i].begin(), mins[i].end(),
                            std::inserter(next, next.begin()));
      common = std::move(next);
    }
    return common.size() >= 2;
  };
  auto is_target = [&](const std::array<Vec2i, 2>& dual, int j) {
    Vec2i a{0, 2}, b{2 * j, 0};
    return (dual[0] == a && dual[1] == b) || (dual[0] == b && dual[1] == a);
  };
  for (int j : js) {
    bool found = false;
    for (const auto& e : tg.edges) {
      if (e.mult < 2 || !is_target(e.dual, j)) continue;
      found = true;
      if (!tied({tg.vertices[e.v0], tg.vertices[e.v1]}))
        return "edge dual to (0,2)-(" + std::to_string(2 * j) + ",0) between (" + tg.vertices[e.v0].x.get_str() +
               "," + tg.vertices[e.v0].y.get_str() + ") and (" + tg.vertices[e.v1].x.get_str() + "," +
               tg.vertices[e.v1].y.get_str() + ")";
    }
    for (const auto& r : tg.rays) {
      if (r.mult < 2 || !is_target(r.dual, j)) continue;
      found = true;
      const Point2& v = tg.vertices[r.v];
      Point2 far{v.x + Rat(r.dir[0]) * 1000, v.y + Rat(r.dir[1]) * 1000};
      if (!tied({v, far}))
        return "ray dual to (0,2)-(" + std::to_string(2 * j) + ",0) from (" + v.x.get_str() + "," + v.y.get_str() + ")";
    }
    if (!found) return "trop(g) has no multiplicity-2 edge dual to (0,2)-(" + std::to_string(2 * j) + ",0)";
  }
  return "";
}

BlockReembedding reembedding_for_block(const BuildingBlock& b, const HECurve& c) {
  std::vector<int> js = b.cycle_indices();
  if (js.empty()) throw DomainError(to_string(b.kind) + " carries no genus and needs no re-embedding");
  BlockReembedding out;
  std::vector<std::pair<int, RatFunc>> terms;
  for (int j : js) {
    Coefficient cj = cycle_coefficient(j, c);
    if (cj.flipped) out.sign_flipped.push_back(j);
    if (!terms.empty()) {
      // Across a theta junction at position 2j-1 the coefficients alternate
      // against the sign of the junction's initial coefficient.
      const OrderedRoot& junction = c.ordered()[2 * j - 2];
      int s = -sign_of(*junction.init) * sign_of(terms.back().second.initial_coeff());
      if (sign_of(cj.value.initial_coeff()) != s) cj.value = -cj.value;
    }
    terms.push_back({j, cj.value});
  }
  out.f = y_minus(terms);
  std::string miss = pass_through_failure(out.f, c.defining_poly(), js);
  if (!miss.empty()) throw ConstructionError("re-embedding " + out.f.to_string(true) + " misses the " + miss);
  return out;
}

MPoly combine_reembeddings(const std::vector<MPoly>& fs, const HECurve& c) {
  if (fs.empty()) throw CombinationError("nothing to combine");
  MPoly y = MPoly::variable("y", kXY);
  MPoly rest(kXY);
  std::set<int> used;
  for (const auto& f0 : fs) {
    MPoly h = y - f0.with_vars(kXY);
    for (const auto& [e, coef] : h.terms()) {
      if (e[1] != 0) throw CombinationError("re-embedding " + f0.to_string(true) + " is not of the form y - h(x)");
      if (!used.insert(e[0]).second)
        throw CombinationError("overlapping support at x^" + std::to_string(e[0]));
    }
    rest += h;
  }
  if (rest.degree("x") > 7) throw CombinationError("combined re-embedding has degree above 7 in x");
  (void)c;
  return y - rest;
}

ReembedPlan plan_from_fs(const HECurve& c, const std::vector<BuildingBlock>& blocks, std::vector<MPoly> fs,
                         bool combined) {
  ReembedPlan plan;
  plan.blocks = blocks;
  plan.fs = std::move(fs);
  plan.combined = combined;
  plan.generators.push_back(c.defining_poly());
  if (plan.fs.size() == 1) {
    plan.new_vars = {"z"};
  } else {
    for (std::size_t i = 0; i < plan.fs.size(); ++i) plan.new_vars.push_back("z" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < plan.fs.size(); ++i) {
    std::vector<std::string> vars = kXY;
    vars.push_back(plan.new_vars[i]);
    plan.generators.push_back(MPoly::variable(plan.new_vars[i], vars) - plan.fs[i].with_vars(vars));
  }
  return plan;
}

ReembedPlan reembedding_plan(const HECurve& c, bool combine) {
  std::vector<BuildingBlock> blocks = detect_blocks(c);
  std::vector<MPoly> fs;
  std::vector<std::string> notes;
  bool bridges_only = true;
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::KPoint || b.kind == BlockKind::PointConnector) bridges_only = false;
    if (b.cycles() == 0) continue;
    BlockReembedding r = reembedding_for_block(b, c);
    for (int j : r.sign_flipped)
      notes.push_back("cycle " + std::to_string(j) + ": coefficient taken with the opposite sign under the root");
    fs.push_back(r.f);
  }
  if (fs.empty()) throw UnsupportedStratumError("no genus-carrying block; nothing to re-embed");
  bool combined = false;
  if (combine && fs.size() > 1) {
    if (bridges_only) {
      fs = {combine_reembeddings(fs, c)};
      combined = true;
    } else {
      notes.push_back("blocks are joined by point connectors; kept one generator per block");
    }
  }
  ReembedPlan plan = plan_from_fs(c, blocks, std::move(fs), combined);
  plan.notes = std::move(notes);
  return plan;
}

}  // namespace hypertrop
