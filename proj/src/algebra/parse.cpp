#include "hypertrop/parse.hpp"

#include <cctype>

#include "hypertrop/errors.hpp"

namespace hypertrop {

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::vector<std::string> vars) : s_(s), vars_(std::move(vars)) {}

  MPoly run() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    MPoly e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e.with_vars(vars_);
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    skip_ws();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    MPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        MPoly d = unary();
        acc = divide(acc, d, at);
      } else {
        return acc;
      }
    }
  }

  MPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  MPoly divide(const MPoly& a, const MPoly& d, std::size_t at) {
    if (d.is_zero()) throw ParseError("division by zero", at);
    if (d.is_constant()) return a * d.constant_value().inverse();
    if (d.is_monomial()) return a * d.pow(-1);
    throw ParseError("division by a non-unit polynomial", at);
  }

  MPoly power() {
    MPoly b = primary();
    skip_ws();
    std::size_t at = pos_;
    if (!accept('^')) return b;
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    if (e > 100000) throw ParseError("exponent too large", start);
    int k = static_cast<int>(neg ? -e : e);
    if (k < 0) {
      if (b.is_constant()) return MPoly::constant(b.constant_value().pow(k), b.vars());
      if (!b.is_monomial()) throw ParseError("negative power of a non-unit polynomial", at);
    }
    return b.pow(k);
  }

  MPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Int v(std::string(s_.substr(start, pos_ - start)));
      return MPoly::constant(RatFunc(Rat(v)), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "t") return MPoly::constant(RatFunc::t(), vars_);
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) vars_.push_back(name);
      return MPoly::variable(name, vars_);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_expr(std::string_view src, const std::vector<std::string>& vars) {
  return Parser(src, vars).run();
}

RatFunc parse_ratfunc(std::string_view src) {
  MPoly p = parse_expr(src);
  if (!p.is_constant()) throw ParseError("expected an element of Q(t), found variables", 0);
  return p.constant_value();
}

}  // namespace hypertrop
