#include <algorithm>

#include "hypertrop/errors.hpp"
#include "hypertrop/hyperelliptic.hpp"

namespace hypertrop {

RootSpec RootSpec::of(const RatFunc& v) {
  RootSpec r;
  r.value = v;
  return r;
}

RootSpec RootSpec::square(const RatFunc& beta, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("root sign must be +1 or -1");
  RootSpec r;
  r.beta = beta;
  r.sign = sign;
  r.value = beta * beta * RatFunc(sign);
  return r;
}

namespace {

const std::vector<std::string> kXY{"x", "y"};

bool is_squarefree(const PolyT& p) {
  if (p.degree() <= 0) return true;
  return PolyT::gcd(p, p.derivative()).degree() == 0;
}

}  // namespace

HECurve HECurve::from_roots(std::vector<RootSpec> roots) {
  if (roots.empty() || roots.size() % 2 != 0 || roots.size() > 6)
    throw DomainError("a curve of genus 1..3 needs 2, 4 or 6 nonzero roots");
  for (auto& r : roots) {
    if (r.beta) r.value = *r.beta * *r.beta * RatFunc(r.sign);
    if (r.value.is_zero()) throw DomainError("roots must be nonzero (the root 0 is implicit)");
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].value == roots[j].value)
        throw DomainError("duplicate root " + roots[i].value.to_string() + " at positions " + std::to_string(i + 1) +
                          " and " + std::to_string(j + 1));

  HECurve c;
  c.genus_ = static_cast<int>(roots.size() / 2);
  c.roots_ = std::move(roots);
  MPoly x = MPoly::variable("x", kXY), y = MPoly::variable("y", kXY);
  c.h_ = x;
  for (const auto& r : c.roots_) c.h_ *= x - MPoly::constant(r.value, kXY);
  c.g_ = y * y - c.h_;

  std::vector<int> idx(c.roots_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    int va = c.roots_[a].value.val(), vb = c.roots_[b].value.val();
    if (va != vb) return va > vb;
    return c.roots_[a].value.initial_coeff() < c.roots_[b].value.initial_coeff();
  });
  OrderedRoot zero;
  zero.minus_infinity = true;
  c.ordered_.push_back(zero);
  for (int i : idx) {
    OrderedRoot o;
    o.omega = -c.roots_[i].value.val();
    o.source = i;
    o.init = c.roots_[i].value.initial_coeff();
    c.ordered_.push_back(o);
  }
  c.build_groups();
  return c;
}

void HECurve::build_groups() {
  groups_.clear();
  for (std::size_t p = 0; p < ordered_.size();) {
    std::size_t q = p + 1;
    while (p > 0 && q < ordered_.size() && ordered_[q].omega == ordered_[p].omega) ++q;
    RootGroup g;
    g.first = static_cast<int>(p) + 1;
    g.size = static_cast<int>(q - p);
    g.inits_all_equal = true;
    g.inits_distinct = true;
    for (std::size_t a = p; a < q; ++a)
      for (std::size_t b = a + 1; b < q; ++b) {
        bool same = ordered_[a].init && ordered_[b].init && *ordered_[a].init == *ordered_[b].init;
        g.inits_all_equal = g.inits_all_equal && same;
        g.inits_distinct = g.inits_distinct && !same;
      }
    for (std::size_t a = p; a < q; ++a) ordered_[a].group = static_cast<int>(groups_.size());
    groups_.push_back(g);
    p = q;
  }
}

HECurve HECurve::from_poly(const MPoly& g_in) {
  MPoly g = g_in.compact_vars();
  for (const auto& v : g.vars())
    if (v != "x" && v != "y") throw DomainError("hyperelliptic curves are given in the variables x and y");
  g = g.with_vars(kXY);
  MPoly y = MPoly::variable("y", kXY);
  MPoly h = y * y - g;
  if (h.degree("y") > 0 || h.min_degree("x") < 0) throw DomainError("expected a defining polynomial y^2 - h(x)");
  int n1 = h.degree("x");
  if (n1 < 3 || n1 > 7 || n1 % 2 == 0) throw DomainError("h(x) must have degree 3, 5 or 7");
  if (!h.leading_coeff().is_one()) throw DomainError("h(x) must be monic");
  if (h.coefficient({0, 0}).is_zero() == false) throw DomainError("h(x) must vanish at x = 0");
  if (h.coefficient({1, 0}).is_zero()) throw DomainError("x = 0 is a repeated root of h");

  HECurve c;
  c.genus_ = (n1 - 1) / 2;
  c.h_ = h;
  c.g_ = g;
  // q(x) = h(x) / x; Newton polygon of (k, val q_k).
  std::vector<std::pair<int, RatFunc>> q;
  for (int k = 0; k < n1; ++k) {
    RatFunc a = h.coefficient({k + 1, 0});
    if (!a.is_zero()) q.push_back({k, a});
  }
  std::vector<std::size_t> hull{0};
  for (std::size_t i = 1; i < q.size(); ++i) {
    while (hull.size() >= 2) {
      const auto& a = q[hull[hull.size() - 2]];
      const auto& b = q[hull.back()];
      const auto& cpt = q[i];
      // Drop b if it lies on or above segment a-c.
      Rat lhs = Rat(b.second.val() - a.second.val()) * (cpt.first - a.first);
      Rat rhs = Rat(cpt.second.val() - a.second.val()) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  OrderedRoot zero;
  zero.minus_infinity = true;
  c.ordered_.push_back(zero);
  c.groups_.push_back({1, 1, true, true});
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    int k1 = q[hull[s]].first, k2 = q[hull[s + 1]].first;
    int v1 = q[hull[s]].second.val(), v2 = q[hull[s + 1]].second.val();
    Rat slope = Rat(v2 - v1) / (k2 - k1);
    // Initial polynomial of the segment; its roots are the initials.
    std::vector<std::pair<int, Int>> terms;
    PolyT init_poly;
    for (const auto& [k, a] : q) {
      if (k < k1 || k > k2) continue;
      if (Rat(a.val() - v1) == slope * (k - k1)) init_poly = init_poly + PolyT::monomial(a.initial_coeff(), k - k1);
    }
    RootGroup grp;
    grp.first = static_cast<int>(c.ordered_.size()) + 1;
    grp.size = k2 - k1;
    std::optional<Rat> init;
    PolyT monic = init_poly.monic();
    Rat r = -monic.coeff(grp.size - 1) / grp.size;
    PolyT lin = PolyT::monomial(Rat(1), 1) - PolyT(r);
    PolyT pw(1);
    for (int i = 0; i < grp.size; ++i) pw = pw * lin;
    grp.inits_all_equal = grp.size == 1 || pw == monic;
    grp.inits_distinct = is_squarefree(monic);
    if (grp.inits_all_equal) init = r;
    for (int i = 0; i < grp.size; ++i) {
      OrderedRoot o;
      o.omega = slope;  // omega = -val(root) = slope of the segment
      o.init = init;
      o.group = static_cast<int>(c.groups_.size());
      c.ordered_.push_back(o);
    }
    c.groups_.push_back(grp);
  }
  return c;
}

MPoly defining_poly(const HECurve& c) { return c.defining_poly(); }

std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::ThreeTheta:
      return "ThreeTheta";
    case BlockKind::TwoTheta:
      return "TwoTheta";
    case BlockKind::Cycle:
      return "Cycle";
    case BlockKind::KPoint:
      return "KPoint";
    case BlockKind::Bridge:
      return "Bridge";
    case BlockKind::PointConnector:
      return "PointConnector";
  }
  return "?";
}

int BuildingBlock::cycles() const {
  switch (kind) {
    case BlockKind::ThreeTheta:
      return 3;
    case BlockKind::TwoTheta:
      return 2;
    case BlockKind::Cycle:
      return 1;
    default:
      return 0;
  }
}

std::vector<int> BuildingBlock::cycle_indices() const {
  std::vector<int> js;
  for (int c = 0; c < cycles(); ++c) js.push_back((start_index + 1) / 2 + c);
  return js;
}

int expected_betti(const std::vector<BuildingBlock>& blocks) {
  int b = 0;
  for (const auto& blk : blocks) b += blk.cycles();
  return b;
}

namespace {

class Detector {
 public:
  explicit Detector(const HECurve& c) : c_(c), n_(static_cast<int>(c.ordered().size())) {}

  std::vector<BuildingBlock> run() {
    int i = 1;
    while (i < n_) {
      if (i + 2 <= n_ && eq(i + 1, i + 2)) {
        i = kpoint(i);
        continue;
      }
      i = chain(i);
      if (i >= n_) break;
      require(lt(i - 1, i) && lt(i, i + 1), "bridge at x^" + std::to_string(i) + ": omega_" + std::to_string(i - 1) +
                                                " < omega_" + std::to_string(i) + " < omega_" +
                                                std::to_string(i + 1));
      out_.push_back({BlockKind::Bridge, i, i - 1, i + 1, 0});
    }
    return out_;
  }

 private:
  // Position p in 1..n_+1; n_+1 is the +infinity sentinel.
  int cmp(int p, int q) const {
    auto key = [&](int r) -> std::pair<int, Rat> {
      if (r > n_) return {1, Rat(0)};
      const OrderedRoot& o = c_.ordered()[r - 1];
      if (o.minus_infinity) return {-1, Rat(0)};
      return {0, o.omega};
    };
    auto a = key(p), b = key(q);
    if (a.first != b.first) return a.first < b.first ? -1 : 1;
    if (a.first != 0) return 0;
    return a.second < b.second ? -1 : (a.second == b.second ? 0 : 1);
  }
  bool lt(int p, int q) const { return cmp(p, q) < 0; }
  bool eq(int p, int q) const { return cmp(p, q) == 0; }
  const RootGroup& group(int p) const { return c_.groups()[c_.ordered()[p - 1].group]; }

  static void require(bool ok, const std::string& what) {
    if (!ok) throw UnsupportedStratumError("no building block matches: expected " + what);
  }

  int kpoint(int i) {
    require(lt(i, i + 1), "omega_" + std::to_string(i) + " < omega_" + std::to_string(i + 1));
    const RootGroup& g = group(i + 1);
    require(g.size % 2 == 0, "an even run of equal valuations at positions " + std::to_string(g.first) + ".." +
                                 std::to_string(g.first + g.size - 1));
    require(g.inits_distinct, "pairwise distinct initial coefficients at positions " + std::to_string(g.first) +
                                  ".." + std::to_string(g.first + g.size - 1));
    out_.push_back({BlockKind::KPoint, i, i, i + g.size, g.size / 2});
    return i + g.size;
  }

  int chain(int i) {
    require(lt(i, i + 1) && lt(i + 1, i + 2), "omega_" + std::to_string(i) + " < omega_" + std::to_string(i + 1) +
                                                  " < omega_" + std::to_string(i + 2));
    std::vector<bool> theta;
    int p = i + 2;
    while (p + 1 <= n_ && eq(p, p + 1)) {
      const RootGroup& g = group(p);
      require(g.size == 2, "a pair of equal valuations at positions " + std::to_string(p) + "," +
                               std::to_string(p + 1));
      require(g.inits_all_equal || g.inits_distinct, "comparable initial coefficients at positions " +
                                                         std::to_string(p) + "," + std::to_string(p + 1));
      theta.push_back(g.inits_all_equal);
      p += 2;
      require(lt(p - 1, p), "omega_" + std::to_string(p - 1) + " < omega_" + std::to_string(p));
    }
    // Split the chain of cycles at point junctions.
    int start = i, run = 1;
    auto flush = [&](int end_start) {
      static const BlockKind kinds[] = {BlockKind::Cycle, BlockKind::TwoTheta, BlockKind::ThreeTheta};
      out_.push_back({kinds[run - 1], start, start, start + 2 * run, 0});
      (void)end_start;
    };
    for (std::size_t l = 0; l < theta.size(); ++l) {
      if (theta[l]) {
        ++run;
        continue;
      }
      flush(0);
      int junction = start + 2 * run;
      out_.push_back({BlockKind::PointConnector, junction, junction, junction + 1, 0});
      start = junction;
      run = 1;
    }
    flush(0);
    return p;
  }

  const HECurve& c_;
  int n_;
  std::vector<BuildingBlock> out_;
};

}  // namespace

std::vector<BuildingBlock> detect_blocks(const HECurve& c) { return Detector(c).run(); }

}  // namespace hypertrop
