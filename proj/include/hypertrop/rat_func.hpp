#pragma once

#include <string>

#include "hypertrop/poly_t.hpp"

namespace hypertrop {

// Element of Q(t) as num/den with gcd(num, den) = 1 and den monic.
// Laurent monomials in t stay cheap: no polynomial gcd is computed
// unless both parts have more than one term.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const Rat& c) : num_(c), den_(1) {}
  explicit RatFunc(const PolyT& p) : num_(p), den_(1) {}
  RatFunc(const PolyT& num, const PolyT& den);

  // c * t^k for any integer k.
  static RatFunc monomial(const Rat& c, int k);
  static RatFunc t() { return monomial(Rat(1), 1); }

  const PolyT& num() const { return num_; }
  const PolyT& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_ == PolyT(1) && num_ == PolyT(1); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }

  // t-adic valuation; kNoDegree for zero.
  int val() const;
  // Lowest-order coefficient of the Laurent expansion; 0 for zero.
  Rat initial_coeff() const;
  // initial_coeff() * t^val().
  RatFunc leading_term() const;
  Rat eval(const Rat& t) const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  std::string to_string() const;

 private:
  void normalize();

  PolyT num_;
  PolyT den_;
};

// Square root in Q(t), normalized to a positive initial coefficient.
// Throws NotASquareError naming the first failing reason.
RatFunc sqrt_ratfunc(const RatFunc& r);
bool is_square_ratfunc(const RatFunc& r);

}  // namespace hypertrop
