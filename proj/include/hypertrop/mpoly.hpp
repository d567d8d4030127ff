#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypertrop/rat_func.hpp"

namespace hypertrop {

using Exponent = std::vector<int>;

// Laurent polynomial in named variables with coefficients in Q(t).
// Terms are kept in a lex-ordered map; the leading term is the lex maximum
// with variables compared in declaration order.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(const RatFunc& c, std::vector<std::string> vars = {});
  static MPoly variable(const std::string& name, std::vector<std::string> vars = {});
  static MPoly monomial(const RatFunc& c, const Exponent& e, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponent, RatFunc>& terms() const { return terms_; }
  int var_index(const std::string& name) const;
  std::size_t nvars() const { return vars_.size(); }

  // Same polynomial viewed in a ring whose variables include all of ours.
  MPoly with_vars(const std::vector<std::string>& vars) const;
  // Drops variables that do not occur.
  MPoly compact_vars() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  RatFunc constant_value() const;  // requires is_constant()
  RatFunc coefficient(const Exponent& e) const;
  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
  const RatFunc& leading_coeff() const { return terms_.rbegin()->second; }

  int degree(const std::string& var) const;      // kNoDegree for zero
  int min_degree(const std::string& var) const;  // kNoDegree for zero
  int total_degree() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const RatFunc& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const RatFunc& c) { return a *= c; }
  friend MPoly operator*(const RatFunc& c, MPoly a) { return a *= c; }
  // Equality ignores variables that do not occur.
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(int e) const;  // negative e only for monomials

  // Coefficients of var^0..var^deg as polynomials in the remaining
  // variables. Requires min_degree(var) >= 0.
  std::vector<MPoly> coeffs_in(const std::string& var) const;
  static MPoly from_coeffs(const std::vector<MPoly>& coeffs, const std::string& var,
                           const std::vector<std::string>& vars);

  // Replace var by expr. A negative power of var needs expr to be a unit
  // (a single term); otherwise UnsupportedSubstitutionError.
  MPoly substitute(const std::string& var, const MPoly& expr) const;
  // Exact quotient in the Laurent ring; throws DomainError if not exact.
  MPoly divide_exact(const MPoly& d) const;
  // Multiply by a monomial x^e (e may be negative).
  MPoly shift(const Exponent& e) const;

  Rat eval(const std::map<std::string, Rat>& point, const Rat& t) const;

  // Terms in descending lex order, or ascending when requested.
  std::string to_string(bool ascending = false) const;

 private:
  static std::vector<std::string> merged_vars(const MPoly& a, const MPoly& b);
  void add_term(const Exponent& e, const RatFunc& c);

  std::vector<std::string> vars_;
  std::map<Exponent, RatFunc> terms_;
};

// Divide by the Q(t)-content and scale so the leading term has initial
// coefficient 1. Zero stays zero.
MPoly normalize_content(const MPoly& p);
// Divide by the largest monomial x^m (componentwise minimum exponent).
MPoly strip_monomial_factor(const MPoly& p);

}  // namespace hypertrop
