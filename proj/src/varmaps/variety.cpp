#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "weilreg/varmaps.hpp"

namespace weilreg {

// ---------------------------------------------------------------------------
// AffineVariety

AffineVariety::AffineVariety(std::vector<std::string> vars, Ideal ideal, bool irreducible)
    : vars_(std::move(vars)), ideal_(std::move(ideal)), irreducible_(irreducible) {
  if (ideal_.arity() != vars_.size()) throw ArityMismatch("variety ideal arity differs from variable count");
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw InvalidVariety("repeated coordinate name");
  if (is_empty_variety(ideal_)) throw InvalidVariety("defining ideal is the unit ideal (empty variety)");
}

AffineVariety AffineVariety::affine_space(std::vector<std::string> vars) {
  std::size_t n = vars.size();
  return AffineVariety(std::move(vars), Ideal(n), true);
}

AffineVariety AffineVariety::parse(std::vector<std::string> vars, const std::vector<std::string>& generators,
                                   bool irreducible) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(parse_polynomial(g, vars));
  std::size_t n = vars.size();
  return AffineVariety(std::move(vars), Ideal(n, std::move(gens)), irreducible);
}

bool AffineVariety::contains_point(std::span<const Scalar> point) const {
  if (point.size() != arity()) return false;
  for (const auto& g : ideal_.generators())
    if (sgn(g.evaluate(point)) != 0) return false;
  return true;
}

bool same_variety(const AffineVariety& a, const AffineVariety& b) {
  return a.arity() == b.arity() && ideals_equal(a.ideal(), b.ideal());
}

AffineVariety product(const AffineVariety& a, const AffineVariety& b) {
  const std::size_t n = a.arity(), m = b.arity();
  std::vector<std::string> names = a.vars();
  for (auto name : b.vars()) {
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
  }
  std::vector<std::size_t> left(n), right(m);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), n);
  Ideal ideal = a.ideal().embed(n + m, left) + b.ideal().embed(n + m, right);
  return AffineVariety(std::move(names), std::move(ideal), a.irreducible() && b.irreducible());
}

// ---------------------------------------------------------------------------
// OpenSubset

OpenSubset::OpenSubset(AffineVariety host) : host_(std::move(host)) {
  witnesses_.push_back(Polynomial::constant(host_.arity(), Scalar(1)));
}

OpenSubset::OpenSubset(AffineVariety host, std::vector<Polynomial> witnesses) : host_(std::move(host)) {
  for (auto& w : witnesses) {
    if (w.arity() != host_.arity()) throw ArityMismatch("open subset witness arity");
    Polynomial r = normal_form(w, host_.ideal());
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      witnesses_.assign(1, Polynomial::constant(host_.arity(), Scalar(1)));
      return;
    }
    Polynomial m = w.monic();
    if (std::find(witnesses_.begin(), witnesses_.end(), m) == witnesses_.end()) witnesses_.push_back(std::move(m));
  }
}

OpenSubset OpenSubset::principal(AffineVariety host, Polynomial q) {
  return OpenSubset(std::move(host), std::vector<Polynomial>{std::move(q)});
}

Ideal OpenSubset::complement() const { return host_.ideal().with(witnesses_); }

bool OpenSubset::is_whole() const { return is_empty_variety(complement()); }

bool OpenSubset::is_empty() const {
  for (const auto& w : witnesses_)
    if (!radical_contains(host_.ideal(), w)) return false;
  return true;
}

bool OpenSubset::contains_point(std::span<const Scalar> point) const {
  if (!host_.contains_point(point)) return false;
  for (const auto& w : witnesses_)
    if (sgn(w.evaluate(point)) != 0) return true;
  return false;
}

OpenSubset OpenSubset::intersect(const OpenSubset& o) const {
  if (!same_variety(host_, o.host_)) throw VarietyMismatch("intersecting open subsets of different varieties");
  std::vector<Polynomial> w;
  // D(a) and D(b) meet in D(lcm(a, b)).
  for (const auto& a : witnesses_)
    for (const auto& b : o.witnesses_) w.push_back(*exact_divide(a * b, gcd(a, b)));
  return OpenSubset(host_, std::move(w));
}

OpenSubset product(const OpenSubset& a, const OpenSubset& b) {
  AffineVariety host = product(a.host(), b.host());
  const std::size_t n = a.host().arity(), m = b.host().arity();
  std::vector<std::size_t> left(n), right(m);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), n);
  std::vector<Polynomial> w;
  for (const auto& p : a.witnesses())
    for (const auto& q : b.witnesses()) w.push_back(p.embed(n + m, left) * q.embed(n + m, right));
  return OpenSubset(std::move(host), std::move(w));
}

// ---------------------------------------------------------------------------
// Fraction

Fraction Fraction::of(Polynomial p) {
  std::size_t n = p.arity();
  return Fraction{std::move(p), Polynomial::constant(n, Scalar(1))};
}

Fraction Fraction::raw(Polynomial num, Polynomial den) {
  if (num.arity() != den.arity()) throw ArityMismatch("fraction numerator and denominator arities differ");
  if (den.is_zero()) throw ZeroDenominator("fraction with zero denominator");
  if (num.is_zero()) return of(Polynomial(num.arity()));
  Scalar scale = 1 / den.lead().coeff;
  return Fraction{num * scale, den * scale};
}

Fraction Fraction::make(Polynomial num, Polynomial den) {
  if (num.arity() != den.arity()) throw ArityMismatch("fraction numerator and denominator arities differ");
  if (den.is_zero()) throw ZeroDenominator("fraction with zero denominator");
  if (num.is_zero()) return of(Polynomial(num.arity()));
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = *exact_divide(num, g);
      den = *exact_divide(den, g);
    }
  }
  return raw(std::move(num), std::move(den));
}

Fraction Fraction::operator+(const Fraction& o) const {
  if (den == o.den) return make(num + o.num, den);
  return make(num * o.den + o.num * den, den * o.den);
}

Fraction Fraction::operator-(const Fraction& o) const {
  if (den == o.den) return make(num - o.num, den);
  return make(num * o.den - o.num * den, den * o.den);
}

Fraction Fraction::operator*(const Fraction& o) const { return make(num * o.num, den * o.den); }

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.num.is_zero()) throw ZeroDenominator("division by the zero function");
  return make(num * o.den, den * o.num);
}

Fraction substitute(const Polynomial& p, std::span<const Fraction> images) {
  if (images.size() != p.arity()) throw ArityMismatch("fraction substitution needs one image per variable");
  if (images.empty()) throw ArityMismatch("substitution into a polynomial without variables");
  const std::size_t out = images[0].num.arity();
  // Clear denominators variable by variable: p(a/b) = N / prod b_j^{d_j}.
  std::vector<std::uint32_t> deg(p.arity());
  for (std::size_t j = 0; j < p.arity(); ++j) deg[j] = images[j].is_polynomial() ? 0 : p.degree_in(j);
  std::vector<std::vector<Polynomial>> num_pow(p.arity()), den_pow(p.arity());
  auto power = [&](std::vector<Polynomial>& cache, const Polynomial& base, std::uint32_t k) -> const Polynomial& {
    if (cache.empty()) cache.push_back(Polynomial::constant(out, Scalar(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  Polynomial numerator(out);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(out, t.coeff);
    for (std::size_t j = 0; j < p.arity(); ++j) {
      const Fraction& im = images[j];
      std::uint32_t e = t.mono[j];
      if (im.is_polynomial()) {
        if (e == 0) continue;
        Scalar inv = 1 / *im.den.constant_value();
        term = term * power(num_pow[j], im.num * inv, e);
      } else {
        if (e > 0) term = term * power(num_pow[j], im.num, e);
        if (deg[j] > e) term = term * power(den_pow[j], im.den, deg[j] - e);
      }
    }
    numerator += term;
  }
  Polynomial denominator = Polynomial::constant(out, Scalar(1));
  for (std::size_t j = 0; j < p.arity(); ++j)
    if (deg[j] > 0) denominator = denominator * power(den_pow[j], images[j].den, deg[j]);
  return Fraction::make(std::move(numerator), std::move(denominator));
}

Fraction substitute(const Fraction& f, std::span<const Fraction> images) {
  return substitute(f.num, images) / substitute(f.den, images);
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(AffineVariety host, Fraction f) : host_(std::move(host)), f_(std::move(f)) {
  if (f_.num.arity() != host_.arity()) throw ArityMismatch("rational function arity");
  if (normal_form(f_.den, host_.ideal()).is_zero())
    throw ZeroDenominator("denominator vanishes identically on the host");
}

bool functions_equal(const AffineVariety& host, const Fraction& a, const Fraction& b) {
  return normal_form(a.num * b.den - b.num * a.den, host.ideal()).is_zero();
}

bool RationalFunction::equals(const RationalFunction& o) const {
  if (!same_variety(host_, o.host_)) throw VarietyMismatch("comparing functions on different varieties");
  return functions_equal(host_, f_, o.f_);
}

std::optional<Polynomial> RationalFunction::as_polynomial() const {
  if (f_.is_polynomial()) return f_.num * (1 / *f_.den.constant_value());
  if (auto q = exact_divide(f_.num, f_.den)) return *q;
  Polynomial num = normal_form(f_.num, host_.ideal()), den = normal_form(f_.den, host_.ideal());
  if (auto c = den.constant_value(); c && sgn(*c) != 0) return num * (1 / *c);
  if (auto q = exact_divide(num, den)) return *q;
  if (!contains(host_.ideal().with(den), num)) return std::nullopt;
  // In (I + (den*t - num)) : den^inf the variable t reduces to num/den.
  const std::size_t n = host_.arity();
  std::vector<Polynomial> gens;
  for (const auto& g : host_.ideal().generators()) gens.push_back(g.shift(n + 1, 1));
  gens.push_back(den.shift(n + 1, 1) * Polynomial::variable(n + 1, 0) - num.shift(n + 1, 1));
  Ideal k = saturate(Ideal(n + 1, std::move(gens)), den.shift(n + 1, 1));
  std::vector<bool> t_first(n + 1, false);
  t_first[0] = true;
  Polynomial r = normal_form(Polynomial::variable(n + 1, 0), k, MonomialOrder::block(t_first));
  if (r.uses_var(0)) return std::nullopt;
  return r.drop_front(1);
}

// ---------------------------------------------------------------------------
// Rational expression parser

namespace {

class FractionParser {
 public:
  FractionParser(std::string_view text, std::span<const std::string> names, bool reduce)
      : s_(text), names_(names), reduce_(reduce) {}

  Fraction parse() {
    Fraction f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return f;
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

  Fraction combine(Polynomial num, Polynomial den) const {
    return reduce_ ? Fraction::make(std::move(num), std::move(den)) : Fraction::raw(std::move(num), std::move(den));
  }

  Fraction add(const Fraction& a, const Fraction& b, bool negate) const {
    Polynomial bn = negate ? -b.num : b.num;
    if (a.den == b.den) return combine(a.num + bn, a.den);
    return combine(a.num * b.den + bn * a.den, a.den * b.den);
  }

  Fraction expr() {
    Fraction acc = term();
    while (true) {
      if (accept('+')) acc = add(acc, term(), false);
      else if (accept('-')) acc = add(acc, term(), true);
      else return acc;
    }
  }

  Fraction term() {
    Fraction acc = unary();
    while (true) {
      if (accept('*')) {
        Fraction r = unary();
        acc = combine(acc.num * r.num, acc.den * r.den);
      } else if (accept('/')) {
        std::size_t at = pos_;
        Fraction r = unary();
        if (r.num.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = combine(acc.num * r.den, acc.den * r.num);
      } else {
        return acc;
      }
    }
  }

  Fraction unary() {
    if (accept('-')) {
      Fraction f = unary();
      return Fraction{-f.num, f.den};
    }
    if (accept('+')) return unary();
    Fraction base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 1000) fail("exponent too large");
      base = combine(base.num.pow(static_cast<unsigned>(k)), base.den.pow(static_cast<unsigned>(k)));
    }
    return base;
  }

  Fraction primary() {
    skip_ws();
    const std::size_t n = names_.size();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Scalar v(mpz_class(std::string(s_.substr(start, pos_ - start))));
      return Fraction::of(Polynomial::constant(n, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < n; ++i)
        if (names_[i] == id) return Fraction::of(Polynomial::variable(n, i));
      pos_ = start;
      fail("unknown variable '" + std::string(id) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::span<const std::string> names_;
  bool reduce_;
  std::size_t pos_ = 0;
};

}  // namespace

Fraction parse_fraction(std::string_view text, std::span<const std::string> names, bool reduce) {
  return FractionParser(text, names, reduce).parse();
}

Representative parse_representative(const AffineVariety& source, std::string_view text) {
  std::size_t a = text.find_first_not_of(" \t\n");
  std::size_t b = text.find_last_not_of(" \t\n");
  if (a == std::string_view::npos || text[a] != '(' || text[b] != ')')
    throw ParseError("representative must be a parenthesized tuple: \"" + std::string(text) + "\"");
  std::string_view inner = text.substr(a + 1, b - a - 1);
  Representative rep;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
      rep.push_back(parse_fraction(inner.substr(start, i - start), source.vars()));
      start = i + 1;
    } else if (inner[i] == '(') {
      ++depth;
    } else if (inner[i] == ')') {
      --depth;
    }
  }
  return rep;
}

}  // namespace weilreg
