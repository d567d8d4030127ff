#include "hypertrop/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "hypertrop/errors.hpp"

namespace hypertrop {

MPoly MPoly::constant(const RatFunc& c, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_.emplace(Exponent(p.vars_.size(), 0), c);
  return p;
}

MPoly MPoly::variable(const std::string& name, std::vector<std::string> vars) {
  if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
  MPoly p(std::move(vars));
  Exponent e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.terms_.emplace(std::move(e), RatFunc(1));
  return p;
}

MPoly MPoly::monomial(const RatFunc& c, const Exponent& e, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  if (e.size() != p.vars_.size()) throw DomainError("exponent length does not match variable count");
  if (!c.is_zero()) p.terms_.emplace(e, c);
  return p;
}

int MPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      if (degree(vars_[i]) != 0 || min_degree(vars_[i]) != 0) {
        if (!is_zero()) throw DomainError("variable " + vars_[i] + " missing from target ring");
      }
      where[i] = -1;
    } else {
      where[i] = static_cast<int>(it - vars.begin());
    }
  }
  MPoly p(vars);
  for (const auto& [e, c] : terms_) {
    Exponent ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (where[i] >= 0) ne[where[i]] = e[i];
    p.terms_.emplace(std::move(ne), c);
  }
  return p;
}

MPoly MPoly::compact_vars() const {
  std::vector<std::string> used;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    bool occurs = false;
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) {
        occurs = true;
        break;
      }
    if (occurs) used.push_back(vars_[i]);
  }
  return with_vars(used);
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

RatFunc MPoly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? RatFunc() : terms_.begin()->second;
}

RatFunc MPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RatFunc() : it->second;
}

int MPoly::degree(const std::string& var) const {
  int i = var_index(var);
  if (terms_.empty()) return kNoDegree;
  if (i < 0) return 0;
  int d = kNoDegree;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int MPoly::min_degree(const std::string& var) const {
  int i = var_index(var);
  if (terms_.empty()) return kNoDegree;
  if (i < 0) return 0;
  int d = INT_MAX;
  for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
  return d;
}

int MPoly::total_degree() const {
  int d = kNoDegree;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::vector<std::string> MPoly::merged_vars(const MPoly& a, const MPoly& b) {
  std::vector<std::string> v = a.vars_;
  for (const auto& n : b.vars_)
    if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
  return v;
}

void MPoly::add_term(const Exponent& e, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (vars_ != o.vars_) {
    auto v = merged_vars(*this, o);
    *this = with_vars(v);
    MPoly oo = o.with_vars(v);
    for (const auto& [e, c] : oo.terms_) add_term(e, c);
    return *this;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.vars_ != b.vars_) {
    auto v = MPoly::merged_vars(a, b);
    return a.with_vars(v) * b.with_vars(v);
  }
  MPoly p(a.vars_);
  if (a.terms_.empty() || b.terms_.empty()) return p;
  const std::size_t n = a.vars_.size();
  Exponent e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly& MPoly::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  auto v = MPoly::merged_vars(a, b);
  return a.with_vars(v).terms_ == b.with_vars(v).terms_;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) {
    if (!is_monomial()) throw DomainError("negative power of a non-monomial");
    const auto& [ex, c] = *terms_.begin();
    Exponent ne(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) ne[i] = ex[i] * e;
    return monomial(c.pow(e), ne, vars_);
  }
  MPoly result = constant(RatFunc(1), vars_);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::vector<MPoly> MPoly::coeffs_in(const std::string& var) const {
  int i = var_index(var);
  std::vector<std::string> rest = vars_;
  if (i >= 0) rest.erase(rest.begin() + i);
  if (terms_.empty()) return {};
  if (i < 0) return {with_vars(rest)};
  if (min_degree(var) < 0) throw DomainError("negative power of " + var + " in coefficient extraction");
  std::vector<MPoly> out(degree(var) + 1, MPoly(rest));
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne.erase(ne.begin() + i);
    out[e[i]].terms_.emplace(std::move(ne), c);
  }
  return out;
}

MPoly MPoly::from_coeffs(const std::vector<MPoly>& coeffs, const std::string& var,
                         const std::vector<std::string>& vars) {
  MPoly p(vars);
  int vi = p.var_index(var);
  if (vi < 0) throw DomainError("variable " + var + " not in ring");
  std::vector<std::string> rest = vars;
  rest.erase(rest.begin() + vi);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    MPoly c = coeffs[k].with_vars(rest);
    for (const auto& [e, v] : c.terms_) {
      Exponent ne = e;
      ne.insert(ne.begin() + vi, static_cast<int>(k));
      p.terms_.emplace(std::move(ne), v);
    }
  }
  return p;
}

MPoly MPoly::substitute(const std::string& var, const MPoly& expr) const {
  int i = var_index(var);
  if (i < 0) return *this;
  std::vector<std::string> target = merged_vars(*this, expr);
  // The substituted variable disappears unless expr itself uses it.
  int ei = expr.var_index(var);
  bool expr_uses = false;
  if (ei >= 0)
    for (const auto& [e, c] : expr.terms_) expr_uses = expr_uses || e[ei] != 0;
  if (!expr_uses) target.erase(std::find(target.begin(), target.end(), var));
  MPoly ex = expr.with_vars(target);
  std::map<int, MPoly> groups;
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne[i] = 0;
    auto [it, ins] = groups.try_emplace(e[i], MPoly(vars_));
    it->second.terms_.emplace(std::move(ne), c);
  }
  MPoly result(target);
  std::map<int, MPoly> powers;
  for (auto& [k, g] : groups) {
    if (k < 0 && !ex.is_monomial())
      throw UnsupportedSubstitutionError("cannot substitute a non-unit for " + var + " appearing with negative power");
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, ex.pow(k)).first;
    std::vector<std::string> without = vars_;
    without.erase(without.begin() + i);
    result += g.with_vars(without).with_vars(target) * it->second;
  }
  return result;
}

MPoly MPoly::shift(const Exponent& s) const {
  MPoly p(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += s[i];
    p.terms_.emplace(std::move(ne), c);
  }
  return p;
}

MPoly MPoly::divide_exact(const MPoly& d) const {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  if (vars_ != d.vars_) {
    auto v = merged_vars(*this, d);
    return with_vars(v).divide_exact(d.with_vars(v));
  }
  const std::size_t n = vars_.size();
  MPoly q(vars_);
  if (terms_.empty()) return q;
  // Quotient exponents are bounded below; anything lower means the
  // division cannot be exact (Laurent division would not terminate).
  Exponent lo(n, INT_MAX), dhi(n, INT_MIN);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], e[i]);
  for (const auto& [e, c] : d.terms_)
    for (std::size_t i = 0; i < n; ++i) dhi[i] = std::max(dhi[i], e[i]);
  if (d.is_monomial()) {
    const auto& [de, dc] = *d.terms_.begin();
    RatFunc inv = dc.inverse();
    for (const auto& [e, c] : terms_) {
      Exponent ne = e;
      for (std::size_t i = 0; i < n; ++i) ne[i] -= de[i];
      q.terms_.emplace(std::move(ne), c * inv);
    }
    return q;
  }
  std::map<Exponent, RatFunc> r = terms_;
  const Exponent& ld = d.terms_.rbegin()->first;
  RatFunc linv = d.terms_.rbegin()->second.inverse();
  Exponent qe(n), pe(n);
  while (!r.empty()) {
    auto lt = std::prev(r.end());
    for (std::size_t i = 0; i < n; ++i) {
      qe[i] = lt->first[i] - ld[i];
      if (qe[i] < lo[i] - dhi[i]) throw DomainError("polynomial division is not exact");
    }
    RatFunc qc = lt->second * linv;
    for (const auto& [e, c] : d.terms_) {
      for (std::size_t i = 0; i < n; ++i) pe[i] = qe[i] + e[i];
      RatFunc v = qc * c;
      auto [it, ins] = r.try_emplace(pe, -v);
      if (!ins) {
        it->second -= v;
        if (it->second.is_zero()) r.erase(it);
      }
    }
    q.terms_.emplace(qe, std::move(qc));
  }
  return q;
}

Rat MPoly::eval(const std::map<std::string, Rat>& point, const Rat& t) const {
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat v = c.eval(t);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw DomainError("no value for variable " + vars_[i]);
      Rat b = it->second;
      int k = e[i];
      if (k < 0) {
        if (b == 0) throw DomainError("evaluation at a pole");
        b = 1 / b;
        k = -k;
      }
      Rat pw = 1;
      for (int j = 0; j < k; ++j) pw *= b;
      v *= pw;
    }
    acc += v;
  }
  return acc;
}

std::string MPoly::to_string(bool ascending) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exponent, RatFunc>*> order;
  for (const auto& term : terms_) order.push_back(&term);
  if (!ascending) std::reverse(order.begin(), order.end());
  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const auto& [e, c] = *term;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    // Pull a leading minus out of simple coefficients.
    bool neg = false;
    std::string cs;
    if (c.is_monomial() && c.den() == PolyT(1) && c.initial_coeff() < 0) {
      neg = true;
      cs = (-c).to_string();
    } else {
      cs = c.to_string();
      if (!c.is_monomial() || c.den() != PolyT(1)) cs = "(" + cs + ")";
    }
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << cs;
    else if (cs == "1")
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

MPoly normalize_content(const MPoly& p) {
  if (p.is_zero()) return p;
  PolyT l(1);
  for (const auto& [e, c] : p.terms()) {
    if (c.den() == PolyT(1)) continue;
    PolyT g = PolyT::gcd(l, c.den());
    l = PolyT::divide_exact(l, g) * c.den();
  }
  PolyT g;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    PolyT n = PolyT::divide_exact(l, c.den()) * c.num();
    g = first ? n.monic() : PolyT::gcd(g, n);
    first = false;
    if (g.is_constant()) break;
  }
  RatFunc scale(l, g);
  MPoly q = p * scale;
  Rat ic = q.leading_coeff().initial_coeff();
  return q * RatFunc(Rat(1) / ic);
}

MPoly strip_monomial_factor(const MPoly& p) {
  if (p.is_zero()) return p;
  Exponent m(p.nvars(), INT_MAX);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = std::min(m[i], e[i]);
  for (int& v : m) v = -v;
  return p.shift(m);
}

}  // namespace hypertrop
