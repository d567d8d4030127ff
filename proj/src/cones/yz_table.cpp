#include <algorithm>

#include "hypertrop/cones.hpp"

namespace hypertrop {

namespace {

using Pred = std::function<bool(const Weight&)>;

Pred all() {
  return [](const Weight&) { return true; };
}

Pred in(std::string rows, std::string letters = "ABCD") {
  return [rows, letters](const Weight& u) {
    int r = xz_row_of(u);
    char l = xz_letter_of(u);
    return r != 0 && l != 0 && rows.find(static_cast<char>('0' + r)) != std::string::npos &&
           letters.find(l) != std::string::npos;
  };
}

Pred side(Dominance d, int s) {
  return [d, s](const Weight& u) { return dominance_side(d, u) == s; };
}

Pred both(Pred a, Pred b) {
  return [a, b](const Weight& u) { return a(u) && b(u); };
}

Pred either(Pred a, Pred b) {
  return [a, b](const Weight& u) { return a(u) || b(u); };
}

constexpr int kLt = 1, kGt = -1;

std::vector<YzTableRow> build() {
  using D = Dominance;
  std::vector<YzTableRow> t;
  t.push_back({{{6, 0}},
               {{{0, 0, 2, 0, 2, 3}, "(2,4)", in("24")}, {{0, 0, 0, 2, 2, 3}, "(1,3)", in("13")}}});
  t.push_back({{{5, 1}}, {{{0, 0, 2, 0, 0, 5}, "(2,4)", in("24")}, {{0, 0, 0, 2, 0, 5}, "(1,3)", in("13")}}});
  t.push_back({{{4, 2}}, {{{0, 0, 0, 0, 2, 5}, "all", all()}}});
  t.push_back({{{3, 3}, {2, 4}, {1, 5}, {0, 6}}, {{{0, 0, 0, 0, 0, 7}, "all", all()}}});
  t.push_back({{{5, 0}},
               {{{0, 0, 0, 2, 8, 4}, "(1,2)", in("12")},
                {{0, 0, 6, 0, 0, 8}, "(4)", in("4")},
                {{0, 0, 0, 6, 0, 8}, "(3)", in("3")}}});
  t.push_back({{{4, 1}},
               {{{0, 0, 0, 2, 6, 6}, "(1,2)", in("12")},
                {{0, 0, 4, 0, 2, 8}, "(4)", in("4")},
                {{0, 0, 0, 4, 2, 8}, "(3)", in("3")}}});
  t.push_back({{{3, 2}, {2, 3}, {1, 4}, {0, 5}},
               {{{0, 0, 2, 0, 4, 8}, "(2,4)", in("24")}, {{0, 0, 0, 2, 4, 8}, "(1,3)", in("13")}}});
  t.push_back({{{4, 0}},
               {{{0, 2, 0, 2, 10, 7}, "(1A,1C,2A,2C) delta<", both(in("12", "AC"), side(D::Delta, kLt))},
                {{2, 0, 0, 2, 10, 7}, "(1B,1D,2B,2D) delta<", both(in("12", "BD"), side(D::Delta, kLt))},
                {{0, 2, 0, 4, 6, 9}, "(3A,3C,4A,4C) alpha>", both(in("34", "AC"), side(D::Alpha, kGt))},
                {{2, 0, 0, 4, 6, 9}, "(3B,3D,4B,4D) alpha>", both(in("34", "BD"), side(D::Alpha, kGt))},
                {{0, 0, 4, 2, 6, 9}, "(alpha<,delta>)", both(side(D::Alpha, kLt), side(D::Delta, kGt))}}});
  t.push_back({{{3, 1}}, {{{0, 0, 2, 2, 8, 9}, "all", all()}}});
  t.push_back({{{2, 2}, {1, 3}, {0, 4}}, {{{0, 0, 0, 2, 10, 9}, "all", all()}}});
  t.push_back({{{3, 0}},
               {{{4, 0, 0, 2, 12, 10}, "(D)", in("1234", "D")},
                {{0, 4, 0, 2, 12, 10}, "(C)", in("1234", "C")},
                {{2, 0, 4, 2, 10, 10}, "(B)", in("1234", "B")},
                {{0, 2, 4, 2, 10, 10}, "(A)", in("1234", "A")}}});
  t.push_back({{{2, 1}, {1, 2}, {0, 3}},
               {{{2, 0, 2, 2, 12, 10}, "(B,D)", in("1234", "BD")},
                {{0, 2, 2, 2, 12, 10}, "(A,C)", in("1234", "AC")}}});
  t.push_back(
      {{{2, 0}},
       {{{2, 2, 4, 2, 14, 11}, "(D beta>, C beta>)", both(in("1234", "CD"), side(D::Beta, kGt))},
        {{4, 0, 4, 4, 12, 11}, "(B alpha>, D beta<)",
         either(both(in("1234", "B"), side(D::Alpha, kGt)), both(in("1234", "D"), side(D::Beta, kLt)))},
        {{0, 4, 4, 4, 12, 11}, "(A alpha>, C beta<)",
         either(both(in("1234", "A"), side(D::Alpha, kGt)), both(in("1234", "C"), side(D::Beta, kLt)))},
        {{2, 0, 8, 2, 12, 11}, "(B alpha<)", both(in("1234", "B"), side(D::Alpha, kLt))},
        {{0, 2, 8, 2, 12, 11}, "(A alpha<)", both(in("1234", "A"), side(D::Alpha, kLt))}}});
  t.push_back({{{1, 1}, {0, 2}}, {{{0, 2, 6, 2, 14, 11}, "all", all()}}});
  t.push_back(
      {{{1, 0}, {0, 1}},
       {{{2, 2, 8, 2, 16, 12}, "(phi> gamma<)", both(side(D::Phi, kGt), side(D::Gamma, kLt))},
        {{4, 0, 8, 4, 14, 12}, "(1B,1D,3B,3D)", in("13", "BD")},
        {{0, 4, 8, 4, 14, 12}, "(1A,1C,3A,3C)", in("13", "AC")},
        {{2, 2, 12, 0, 14, 12}, "(2 phi< gamma>, 4 phi< gamma>)",
         both(in("24"), both(side(D::Phi, kLt), side(D::Gamma, kGt)))},
        {{4, 0, 10, 2, 14, 12}, "(2B,2D,4B,4D) gamma<", both(in("24", "BD"), side(D::Gamma, kLt))},
        {{0, 4, 10, 2, 14, 12}, "(2A,2C,4A,4C) gamma<", both(in("24", "AC"), side(D::Gamma, kLt))}}});
  return t;
}

}  // namespace

const std::vector<YzTableRow>& yz_leading_table() {
  static const std::vector<YzTableRow> table = build();
  return table;
}

Rat beta_monomial_valuation(const std::array<int, kNumWeights>& e, const Weight& u) {
  Rat v;
  for (std::size_t k = 0; k < kNumWeights; ++k) v -= e[k] * u[k];
  return v;
}

YzPrediction predict_yz_valuation(const YzTableRow& row, const Weight& u) {
  YzPrediction p;
  for (std::size_t i = 0; i < row.candidates.size(); ++i)
    if (row.candidates[i].applies(u)) p.applicable.push_back(static_cast<int>(i));
  std::vector<int> use = p.applicable;
  if (use.empty()) {
    p.fallback = true;
    for (std::size_t i = 0; i < row.candidates.size(); ++i) use.push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < use.size(); ++k) {
    Rat v = beta_monomial_valuation(row.candidates[use[k]].beta_exp, u);
    if (k == 0 || v < p.valuation) p.valuation = v;
  }
  return p;
}

}  // namespace hypertrop
