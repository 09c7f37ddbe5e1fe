#include <cctype>
#include <sstream>

#include "weilreg/exactalg.hpp"

namespace weilreg {

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (names.size() < p.arity()) throw ArityMismatch("not enough variable names to print polynomial");
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Scalar c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (negative) os << '-';
    else if (!first) os << '+';
    first = false;
    bool need_star = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) os << '*';
      os << names[i];
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      need_star = true;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names) : s_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + std::string(s_) + "\"");
  }

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

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Polynomial d = unary();
        auto c = d.constant_value();
        if (!c || sgn(*c) == 0) fail("division by a non-constant or zero");
        acc = acc * (1 / *c);
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 1000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Scalar v(mpz_class(std::string(s_.substr(start, pos_ - start))));
      return Polynomial::constant(names_.size(), v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return Polynomial::variable(names_.size(), i);
      pos_ = start;
      fail("unknown variable '" + std::string(id) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).parse();
}

}  // namespace weilreg
