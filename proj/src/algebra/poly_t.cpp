#include "hypertrop/poly_t.hpp"

#include <algorithm>
#include <sstream>

#include "hypertrop/errors.hpp"

namespace hypertrop {

PolyT::PolyT(long c) {
  if (c != 0) terms_.emplace_back(0, Int(c));
}

PolyT::PolyT(const Rat& c) {
  if (c != 0) {
    terms_.emplace_back(0, c.get_num());
    den_ = c.get_den();
  }
}

PolyT PolyT::monomial(const Rat& c, int deg) {
  PolyT p;
  if (c != 0) {
    p.terms_.emplace_back(deg, c.get_num());
    p.den_ = c.get_den();
  }
  return p;
}

void PolyT::normalize() {
  std::erase_if(terms_, [](const auto& tm) { return tm.second == 0; });
  if (terms_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& tm : terms_) tm.second = -tm.second;
  }
  if (den_ == 1) return;
  Int g = den_;
  for (const auto& tm : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), tm.second.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& tm : terms_) mpz_divexact(tm.second.get_mpz_t(), tm.second.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rat PolyT::coeff(int deg) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), deg,
                             [](const auto& tm, int d) { return tm.first < d; });
  if (it == terms_.end() || it->first != deg) return Rat(0);
  Rat r(it->second, den_);
  r.canonicalize();
  return r;
}

Rat PolyT::leading_coeff() const {
  if (terms_.empty()) return Rat(0);
  Rat r(terms_.back().second, den_);
  r.canonicalize();
  return r;
}

Rat PolyT::trailing_coeff() const {
  if (terms_.empty()) return Rat(0);
  Rat r(terms_.front().second, den_);
  r.canonicalize();
  return r;
}

std::vector<std::pair<int, Rat>> PolyT::terms() const {
  std::vector<std::pair<int, Rat>> out;
  out.reserve(terms_.size());
  for (const auto& [d, c] : terms_) {
    Rat r(c, den_);
    r.canonicalize();
    out.emplace_back(d, r);
  }
  return out;
}

PolyT PolyT::shifted(int k) const {
  PolyT p = *this;
  if (!p.terms_.empty() && p.terms_.front().first + k < 0)
    throw DomainError("shift would produce a negative power of t");
  for (auto& tm : p.terms_) tm.first += k;
  return p;
}

PolyT PolyT::derivative() const {
  PolyT p;
  p.den_ = den_;
  for (const auto& [d, c] : terms_)
    if (d != 0) p.terms_.emplace_back(d - 1, c * d);
  p.normalize();
  return p;
}

Rat PolyT::eval(const Rat& x) const {
  Rat acc = 0;
  Rat pw = 1;
  int cur = 0;
  for (const auto& [d, c] : terms_) {
    while (cur < d) {
      pw *= x;
      ++cur;
    }
    acc += Rat(c) * pw;
  }
  acc /= Rat(den_);
  return acc;
}

PolyT PolyT::monic() const {
  if (terms_.empty()) return *this;
  PolyT p = *this;
  p.den_ = terms_.back().second;
  p.normalize();
  return p;
}

PolyT PolyT::operator-() const {
  PolyT p = *this;
  for (auto& tm : p.terms_) tm.second = -tm.second;
  return p;
}

// acc += sign * o, merging two sorted term lists over a common denominator.
void PolyT::add_scaled(PolyT& acc, const PolyT& o, int sign) {
  if (o.terms_.empty()) return;
  if (acc.terms_.empty()) {
    acc = sign > 0 ? o : -o;
    return;
  }
  Int l;
  mpz_lcm(l.get_mpz_t(), acc.den_.get_mpz_t(), o.den_.get_mpz_t());
  Int fa = l / acc.den_;
  Int fo = l / o.den_;
  std::vector<std::pair<int, Int>> out;
  out.reserve(acc.terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < acc.terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < acc.terms_.size() && acc.terms_[i].first < o.terms_[j].first)) {
      out.emplace_back(acc.terms_[i].first, acc.terms_[i].second * fa);
      ++i;
    } else if (i == acc.terms_.size() || o.terms_[j].first < acc.terms_[i].first) {
      Int v = o.terms_[j].second * fo;
      out.emplace_back(o.terms_[j].first, sign > 0 ? v : Int(-v));
      ++j;
    } else {
      Int v = acc.terms_[i].second * fa;
      if (sign > 0)
        v += o.terms_[j].second * fo;
      else
        v -= o.terms_[j].second * fo;
      if (v != 0) out.emplace_back(acc.terms_[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  acc.terms_ = std::move(out);
  acc.den_ = l;
  acc.normalize();
}

PolyT& PolyT::operator+=(const PolyT& o) {
  add_scaled(*this, o, 1);
  return *this;
}

PolyT& PolyT::operator-=(const PolyT& o) {
  add_scaled(*this, o, -1);
  return *this;
}

PolyT operator*(const PolyT& a, const PolyT& b) {
  PolyT p;
  if (a.terms_.empty() || b.terms_.empty()) return p;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const PolyT& m = a.terms_.size() == 1 ? a : b;
    const PolyT& o = a.terms_.size() == 1 ? b : a;
    p.terms_.reserve(o.terms_.size());
    for (const auto& [d, c] : o.terms_) p.terms_.emplace_back(d + m.terms_[0].first, c * m.terms_[0].second);
  } else {
    int lo = a.order() + b.order();
    int hi = a.degree() + b.degree();
    std::size_t span = static_cast<std::size_t>(hi - lo + 1);
    if (span <= 4 * a.terms_.size() * b.terms_.size() + 64) {
      std::vector<Int> buf(span);
      for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_)
          mpz_addmul(buf[da + db - lo].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      for (std::size_t k = 0; k < span; ++k)
        if (buf[k] != 0) p.terms_.emplace_back(static_cast<int>(k) + lo, std::move(buf[k]));
    } else {
      std::vector<std::pair<int, Int>> raw;
      raw.reserve(a.terms_.size() * b.terms_.size());
      for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) raw.emplace_back(da + db, ca * cb);
      std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (auto& tm : raw) {
        if (!p.terms_.empty() && p.terms_.back().first == tm.first)
          p.terms_.back().second += tm.second;
        else
          p.terms_.push_back(std::move(tm));
      }
    }
  }
  p.den_ = a.den_ * b.den_;
  p.normalize();
  return p;
}

PolyT& PolyT::operator*=(const PolyT& o) {
  *this = *this * o;
  return *this;
}

PolyT& PolyT::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    den_ = 1;
    return *this;
  }
  for (auto& tm : terms_) tm.second *= c.get_num();
  den_ *= c.get_den();
  normalize();
  return *this;
}

std::pair<PolyT, PolyT> PolyT::divmod(const PolyT& a, const PolyT& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  PolyT q;
  PolyT r = a;
  const int db = b.degree();
  const Rat lb = b.leading_coeff();
  while (!r.is_zero() && r.degree() >= db) {
    PolyT m = monomial(r.leading_coeff() / lb, r.degree() - db);
    q += m;
    r -= m * b;
  }
  return {q, r};
}

PolyT PolyT::gcd(const PolyT& a, const PolyT& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  // Common power of t first; the remaining gcd is often trivial.
  int k = std::min(a.order(), b.order());
  PolyT x = a.shifted(-a.order());
  PolyT y = b.shifted(-b.order());
  if (x.is_constant() || y.is_constant()) return monomial(Rat(1), k);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    PolyT r = divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();
  }
  return x.monic().shifted(k);
}

PolyT PolyT::divide_exact(const PolyT& a, const PolyT& b) {
  if (b.is_monomial()) {
    PolyT r = a.shifted(-b.order());
    r *= Rat(1) / b.leading_coeff();
    return r;
  }
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("polynomial division is not exact");
  return q;
}

std::string PolyT::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms()) {
    Rat mag = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    if (d == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (d != 1) os << "^" << d;
  }
  return os.str();
}

bool is_rational_square(const Rat& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Rat rational_sqrt(const Rat& q) {
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace hypertrop
