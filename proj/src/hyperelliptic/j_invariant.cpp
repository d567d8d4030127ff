#include <array>
#include <map>

#include "hypertrop/errors.hpp"
#include "hypertrop/hyperelliptic.hpp"

namespace hypertrop {

namespace {

// Coefficients of a ternary cubic indexed by (p, q, r) with p + q + r = 3,
// the exponents of x, y, z.
constexpr int kCubicTerms = 10;

int term_index(int p, int q) {
  // Enumerates p = 3..0, then q = 3-p..0.
  int idx = 0;
  for (int pp = 3; pp >= 0; --pp)
    for (int qq = 3 - pp; qq >= 0; --qq) {
      if (pp == p && qq == q) return idx;
      ++idx;
    }
  return -1;
}

using CoeffPoly = std::map<std::array<int, kCubicTerms>, Rat>;

// Symbolic expansion of a product of bracket factors [s1 s2 s3] in the
// umbral symbols, followed by the symbolic rule a1^p a2^q a3^r -> F_pqr /
// (3! / (p! q! r!)).
CoeffPoly expand_brackets(int nsym, const std::vector<std::array<int, 3>>& brackets) {
  using Umbral = std::vector<int>;  // exponent of symbol s, coordinate k at 3s+k
  std::map<Umbral, long> acc{{Umbral(3 * nsym, 0), 1}};
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  static const int psign[6] = {1, 1, 1, -1, -1, -1};
  for (const auto& br : brackets) {
    std::map<Umbral, long> next;
    for (const auto& [m, c] : acc)
      for (int p = 0; p < 6; ++p) {
        Umbral e = m;
        for (int row = 0; row < 3; ++row) ++e[3 * br[row] + perms[p][row]];
        next[e] += c * psign[p];
      }
    acc.clear();
    for (auto& [m, c] : next)
      if (c != 0) acc.emplace(m, c);
  }
  static const long fact[4] = {1, 1, 2, 6};
  CoeffPoly out;
  for (const auto& [m, c] : acc) {
    std::array<int, kCubicTerms> e{};
    Rat coef(c);
    for (int s = 0; s < nsym; ++s) {
      int p = m[3 * s], q = m[3 * s + 1], r = m[3 * s + 2];
      ++e[term_index(p, q)];
      coef *= Rat(fact[p] * fact[q] * fact[r], 6);
    }
    out[e] += coef;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

const CoeffPoly& aronhold_s() {
  static const CoeffPoly s = expand_brackets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  return s;
}

const CoeffPoly& aronhold_t() {
  static const CoeffPoly t =
      expand_brackets(6, {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}, {3, 4, 5}});
  return t;
}

template <class T>
T evaluate(const CoeffPoly& p, const std::array<T, kCubicTerms>& f) {
  T total(0);
  for (const auto& [e, c] : p) {
    T term(c);
    for (int i = 0; i < kCubicTerms; ++i)
      for (int k = 0; k < e[i]; ++k) term *= f[i];
    total += term;
  }
  return total;
}

Rat evaluate_rat(const CoeffPoly& p, const std::map<std::pair<int, int>, Rat>& terms) {
  std::array<Rat, kCubicTerms> f{};
  for (const auto& [pq, c] : terms) f[term_index(pq.first, pq.second)] = c;
  return evaluate(p, f);
}

}  // namespace

RatFunc j_invariant_cubic(const MPoly& f_in) {
  MPoly f = f_in.compact_vars();
  for (const auto& v : f.vars())
    if (v != "x" && v != "y") throw DomainError("j-invariant expects a cubic in x and y, found variable " + v);
  f = f.with_vars({"x", "y"});
  if (f.is_zero() || f.total_degree() != 3 || f.min_degree("x") < 0 || f.min_degree("y") < 0)
    throw DomainError("j-invariant expects a polynomial of total degree 3");

  std::array<RatFunc, kCubicTerms> coeffs{};
  for (const auto& [e, c] : f.terms()) coeffs[term_index(e[0], e[1])] = c;

  // Reference values on y^2 = x^3 + x and y^2 = x^3 + 1.
  static const Rat s0 = evaluate_rat(aronhold_s(), {{{0, 2}, Rat(1)}, {{3, 0}, Rat(-1)}, {{1, 0}, Rat(-1)}});
  static const Rat t0 = evaluate_rat(aronhold_t(), {{{0, 2}, Rat(1)}, {{3, 0}, Rat(-1)}, {{0, 0}, Rat(-1)}});

  RatFunc s = evaluate(aronhold_s(), coeffs);
  RatFunc t = evaluate(aronhold_t(), coeffs);
  RatFunc s3 = s * s * s;
  RatFunc num = RatFunc(Rat(4) * t0 * t0) * s3;
  RatFunc den = num + RatFunc(Rat(27) * s0 * s0 * s0) * t * t;
  if (den.is_zero()) throw DomainError("singular cubic: the discriminant vanishes");
  return RatFunc(1728) * num / den;
}

}  // namespace hypertrop
