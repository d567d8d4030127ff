#pragma once

#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hypertrop/mpoly.hpp"

namespace hypertrop {

// Weight space of the 3-theta parameters, ordered (u2, u34, u4, u56, u6, u7).
// A weight u corresponds to valuations val(beta_k) = -u_k, so larger u means
// a dominant parameter. Dominance conditions are written in omega = -u.
enum WeightIndex { W2 = 0, W34, W4, W56, W6, W7 };
inline constexpr std::size_t kNumWeights = 6;
inline constexpr std::array<const char*, kNumWeights> kWeightNames = {"2", "34", "4", "56", "6", "7"};

using Weight = std::vector<Rat>;

// a.u > 0 when strict, a.u >= 0 otherwise.
struct ConeIneq {
  std::vector<Rat> a;
  bool strict = true;
};

struct Cone {
  std::vector<ConeIneq> ineqs;
  std::string label;
  int xz_row = 0;       // 1..4 for the xz cones
  char xz_letter = 0;   // 'A'..'D' for the xz cones

  bool contains(const Weight& u) const;
  bool closure_contains(const Weight& u) const;
  bool is_feasible() const;
  Cone& add(const ConeIneq& q) {
    ineqs.push_back(q);
    return *this;
  }
};

// Linear form in the weights, e.g. 2*W6 - W56 - W7.
using WeightForm = std::array<long, kNumWeights>;
WeightForm wf(std::initializer_list<std::pair<WeightIndex, long>> terms);
// The condition lhs < rhs on omega = -u.
ConeIneq omega_lt(const WeightForm& lhs, const WeightForm& rhs);
Rat omega_value(const WeightForm& f, const Weight& u);

Cone theta3_cone();
// C_{1A} ... C_{4D}, each intersected with the 3-theta cone.
std::vector<Cone> xz_cones();
// Refinement of beta4-dominant cones by the alpha, beta, gamma, delta, phi
// conditions; beta56-dominant cones come back unchanged.
std::vector<Cone> dominance_refinement(const Cone& c);
// Labels of all refined cones whose closure contains u; empty when u is
// outside the closed 3-theta cone.
std::vector<std::string> classify_weight(const Weight& u);

// Deterministic interior point: maximizes the normalized slack over the
// box [-1, 1]^6. Throws InfeasibleConeError for empty interiors.
Weight sample_point(const Cone& c);
// Smallest integer multiple-and-round of sample_point that stays interior.
Weight integral_sample_point(const Cone& c);

// Indices m such that some u in the interior of c makes exponent m a
// minimal-valuation term, i.e. <u, a_m> >= <u, a_j> for all j.
std::set<int> leading_terms_over_cone(const std::vector<std::vector<int>>& exponents, const Cone& c);

// beta_k = coeffs_k * t^(-u_k); u must be integral.
std::vector<RatFunc> instantiate_beta(const Weight& u, const std::vector<Rat>& coeffs);

// Curve g = y^2 - x(x-b2^2)(x-(b4+b34)^2)(x-b4^2)(x-(b6+b56)^2)(x-b6^2)(x+b7^2)
// together with its roots (0 first) and the 3-theta re-embedding
// f = y - b4(b4+b34)b6(b6+b56)b7 x + b6(b6+b56)b7 x^2 - b7 x^3.
struct ThreeThetaInstance {
  std::vector<RatFunc> roots;
  MPoly g;
  MPoly f;
};
ThreeThetaInstance three_theta_instance(const std::vector<RatFunc>& beta);

// Conditions used by the refinement and the yz leading-term table.
enum class Dominance { Alpha, Beta, Gamma, Delta, Phi };
// lhs - rhs in omega for the condition "lhs < rhs", where min/max(w2, w34)
// are resolved by `two_below` (true when omega_2 < omega_34).
std::pair<WeightForm, WeightForm> dominance_condition(Dominance d, bool two_below);
// Sign of rhs - lhs at u: +1 for the "<" side, -1 for ">", 0 on the wall.
int dominance_side(Dominance d, const Weight& u);
// Row 1..4 and letter A..D of the xz cone containing u (0 on a wall).
int xz_row_of(const Weight& u);
char xz_letter_of(const Weight& u);

}  // namespace hypertrop

namespace hypertrop {

// Leading terms of the yz-projection coefficients of the 3-theta
// re-embedding, one row per group of monomials y^i z^j. Valuations are
// relative to the coefficient of y^7.
struct YzCandidate {
  std::array<int, kNumWeights> beta_exp;  // exponents of (b2, b34, b4, b56, b6, b7)
  std::string cones;                      // applicability as printed
  std::function<bool(const Weight&)> applies;
};

struct YzTableRow {
  std::vector<std::pair<int, int>> monomials;  // (i, j) for y^i z^j
  std::vector<YzCandidate> candidates;
};

const std::vector<YzTableRow>& yz_leading_table();

// Valuation of prod beta_k^e_k at u.
Rat beta_monomial_valuation(const std::array<int, kNumWeights>& e, const Weight& u);

struct YzPrediction {
  Rat valuation;
  std::vector<int> applicable;  // candidate indices
  bool fallback = false;        // no candidate applied; minimum over all
};
YzPrediction predict_yz_valuation(const YzTableRow& row, const Weight& u);

}  // namespace hypertrop
