#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <utility>
#include <vector>

namespace hypertrop {

using Rat = mpq_class;
using Int = mpz_class;

// Sentinel degree/order of the zero polynomial.
inline constexpr int kNoDegree = INT_MIN;

// Sparse univariate polynomial over Q in the parameter t.
// Stored as integer numerators over one positive common denominator,
// kept in lowest terms, so products never touch rational gcds.
class PolyT {
 public:
  PolyT() = default;
  PolyT(long c);  // NOLINT(google-explicit-constructor)
  explicit PolyT(const Rat& c);

  static PolyT monomial(const Rat& c, int deg);
  static PolyT t() { return monomial(Rat(1), 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t term_count() const { return terms_.size(); }

  int degree() const { return terms_.empty() ? kNoDegree : terms_.back().first; }
  int order() const { return terms_.empty() ? kNoDegree : terms_.front().first; }

  Rat coeff(int deg) const;
  Rat leading_coeff() const;
  Rat trailing_coeff() const;
  std::vector<std::pair<int, Rat>> terms() const;

  // Multiply by t^k; k may be negative as long as the result stays polynomial.
  PolyT shifted(int k) const;
  PolyT derivative() const;
  Rat eval(const Rat& x) const;
  PolyT monic() const;

  PolyT operator-() const;
  PolyT& operator+=(const PolyT& o);
  PolyT& operator-=(const PolyT& o);
  PolyT& operator*=(const PolyT& o);
  PolyT& operator*=(const Rat& c);
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  friend PolyT operator*(PolyT a, const Rat& c) { return a *= c; }
  friend bool operator==(const PolyT& a, const PolyT& b) { return a.den_ == b.den_ && a.terms_ == b.terms_; }

  // Euclidean division over Q.
  static std::pair<PolyT, PolyT> divmod(const PolyT& a, const PolyT& b);
  // Monic gcd; gcd(0, 0) = 0.
  static PolyT gcd(const PolyT& a, const PolyT& b);
  // Exact quotient; throws DomainError when b does not divide a.
  static PolyT divide_exact(const PolyT& a, const PolyT& b);

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  static void add_scaled(PolyT& acc, const PolyT& o, int sign);

  std::vector<std::pair<int, Int>> terms_;  // ascending degree, nonzero
  Int den_ = 1;
};

bool is_rational_square(const Rat& q);
Rat rational_sqrt(const Rat& q);  // requires is_rational_square

}  // namespace hypertrop
