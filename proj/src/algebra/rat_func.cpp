#include "hypertrop/rat_func.hpp"

#include <algorithm>

#include "hypertrop/errors.hpp"

namespace hypertrop {

RatFunc::RatFunc(const PolyT& num, const PolyT& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::monomial(const Rat& c, int k) {
  RatFunc r;
  if (c == 0) return r;
  if (k >= 0) {
    r.num_ = PolyT::monomial(c, k);
  } else {
    r.num_ = PolyT(c);
    r.den_ = PolyT::monomial(Rat(1), -k);
  }
  return r;
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = PolyT(1);
    return;
  }
  int k = std::min(num_.order(), den_.order());
  if (k > 0) {
    num_ = num_.shifted(-k);
    den_ = den_.shifted(-k);
  }
  if (!den_.is_monomial() && !num_.is_monomial()) {
    PolyT g = PolyT::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = PolyT::divide_exact(num_, g);
      den_ = PolyT::divide_exact(den_, g);
    }
  }
  Rat lc = den_.leading_coeff();
  if (lc != 1) {
    Rat inv = Rat(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

int RatFunc::val() const {
  if (num_.is_zero()) return kNoDegree;
  return num_.order() - den_.order();
}

Rat RatFunc::initial_coeff() const {
  if (num_.is_zero()) return Rat(0);
  return num_.trailing_coeff() / den_.trailing_coeff();
}

RatFunc RatFunc::leading_term() const {
  if (num_.is_zero()) return {};
  return monomial(initial_coeff(), val());
}

Rat RatFunc::eval(const Rat& t) const {
  Rat d = den_.eval(t);
  if (d == 0) throw DomainError("evaluation at a pole");
  return num_.eval(t) / d;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_monomial()) normalize();
    else if (num_.is_zero()) den_ = PolyT(1);
    else normalize();
    return *this;
  }
  if (den_.is_monomial() && o.den_.is_monomial()) {
    // Both Laurent: align on the larger power of t.
    int a = den_.order(), b = o.den_.order();
    int m = std::max(a, b);
    num_ = num_.shifted(m - a) + o.num_.shifted(m - b);
    den_ = PolyT::monomial(Rat(1), m);
    normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_monomial() && o.den_.is_monomial()) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  // Cross-cancel before multiplying to keep degrees down.
  PolyT g1 = PolyT::gcd(num_, o.den_);
  PolyT g2 = PolyT::gcd(o.num_, den_);
  PolyT n = PolyT::divide_exact(num_, g1) * PolyT::divide_exact(o.num_, g2);
  PolyT d = PolyT::divide_exact(den_, g2) * PolyT::divide_exact(o.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(t)");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc result(1);
  RatFunc base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string RatFunc::to_string() const {
  std::string n = num_.to_string();
  if (den_ == PolyT(1)) return n;
  auto wrap = [](const PolyT& p, const std::string& s) {
    return p.is_monomial() && p.trailing_coeff() > 0 ? s : "(" + s + ")";
  };
  return wrap(num_, n) + "/" + wrap(den_, den_.to_string());
}

namespace {

// Monic square root of a monic polynomial, or nullopt.
bool poly_sqrt_monic(const PolyT& p, PolyT& out) {
  int d = p.degree();
  if (d % 2 != 0) return false;
  int h = d / 2;
  // Top-down: s = t^h + s_{h-1} t^{h-1} + ...; coefficient of t^{h+k} in s^2
  // determines s_k.
  std::vector<Rat> s(h + 1, Rat(0));
  s[h] = 1;
  for (int k = h - 1; k >= 0; --k) {
    Rat acc = p.coeff(h + k);
    for (int i = k + 1; i < h; ++i) {
      int j = h + k - i;
      if (j > k && j <= h && j != h) acc -= s[i] * s[j];
    }
    // Terms involving s_h * s_k appear twice.
    s[k] = acc / 2;
  }
  PolyT r;
  for (int k = 0; k <= h; ++k)
    if (s[k] != 0) r += PolyT::monomial(s[k], k);
  if (!(r * r == p)) return false;
  out = r;
  return true;
}

}  // namespace

RatFunc sqrt_ratfunc(const RatFunc& r) {
  if (r.is_zero()) return r;
  if (r.val() % 2 != 0) throw NotASquareError("not a square: odd t-adic order " + std::to_string(r.val()));
  const PolyT& n = r.num();
  const PolyT& d = r.den();
  // Both parts must have even order; their leading coefficients combine
  // into one rational that must be a square.
  if (n.order() % 2 != 0 || d.order() % 2 != 0)
    throw NotASquareError("not a square: odd t-adic order in numerator or denominator");
  Rat lead = n.leading_coeff() / d.leading_coeff();
  if (!is_rational_square(lead))
    throw NotASquareError("not a square: leading rational coefficient " + lead.get_str() + " is not a square");
  Rat init = r.initial_coeff();
  if (!is_rational_square(init))
    throw NotASquareError("not a square: initial coefficient " + init.get_str() + " is not a square");
  PolyT sn, sd;
  if (!poly_sqrt_monic(n.monic(), sn) || !poly_sqrt_monic(d.monic(), sd))
    throw NotASquareError("not a square: polynomial part is not a perfect square");
  RatFunc s(sn * rational_sqrt(lead), sd);
  if (s.initial_coeff() < 0) s = -s;
  return s;
}

bool is_square_ratfunc(const RatFunc& r) {
  try {
    sqrt_ratfunc(r);
    return true;
  } catch (const NotASquareError&) {
    return false;
  }
}

}  // namespace hypertrop
