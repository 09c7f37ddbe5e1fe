#include <algorithm>
#include <cassert>
#include <numeric>

#include "weilreg/exactalg.hpp"

namespace weilreg {

Scalar make_scalar(long num, long den) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

Monomial Monomial::operator*(const Monomial& o) const {
  assert(arity() == o.arity());
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ = degree_ + o.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  assert(o.divides(*this));
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= o.exps_[i];
  r.degree_ = degree_ - o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = std::max(exps_[i], o.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && o.exps_[i] != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

bool grevlex_greater(const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; }

// Merge of two descending term lists: a + c*b.
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, const Scalar& c) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = grevlex_cmp(a[i].mono, b[j].mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({b[j].mono, c * b[j].coeff});
      ++j;
    } else {
      Scalar s = a[i].coeff + c * b[j].coeff;
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t arity, const Scalar& c) {
  Polynomial p(arity);
  if (sgn(c) != 0) p.terms_.push_back({Monomial(arity), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  assert(index < arity);
  std::vector<std::uint32_t> e(arity, 0);
  e[index] = 1;
  return monomial(Monomial(std::move(e)), Scalar(1));
}

Polynomial Polynomial::monomial(const Monomial& m, const Scalar& c) {
  Polynomial p(m.arity());
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t arity, std::vector<Term> terms) {
  Polynomial p(arity);
  for (const auto& t : terms)
    if (t.mono.arity() != arity) throw ArityMismatch("term arity differs from polynomial arity");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), grevlex_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

std::optional<Scalar> Polynomial::constant_value() const {
  if (terms_.empty()) return Scalar(0);
  if (terms_.size() == 1 && terms_[0].mono.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool Polynomial::uses_var(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] != 0; });
}

bool Polynomial::uses_any(const std::vector<bool>& vars) const {
  for (std::size_t v = 0; v < vars.size() && v < arity_; ++v)
    if (vars[v] && uses_var(v)) return true;
  return false;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("polynomial addition");
  Polynomial r(arity_);
  r.terms_ = merge_add(terms_, o.terms_, Scalar(1));
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("polynomial subtraction");
  Polynomial r(arity_);
  r.terms_ = merge_add(terms_, o.terms_, Scalar(-1));
  return r;
}

Polynomial Polynomial::operator*(const Scalar& c) const {
  if (sgn(c) == 0) return Polynomial(arity_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Scalar& c) const {
  if (sgn(c) == 0) return Polynomial(arity_);
  Polynomial r(arity_);
  r.terms_.reserve(terms_.size());
  // Multiplication by a monomial preserves grevlex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("polynomial multiplication");
  if (terms_.empty() || o.terms_.empty()) return Polynomial(arity_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  std::map<std::vector<std::uint32_t>, std::pair<Monomial, Scalar>> acc;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.mono * b.mono;
      auto it = acc.find(m.exponents());
      if (it == acc.end()) {
        acc.emplace(m.exponents(), std::make_pair(m, a.coeff * b.coeff));
      } else {
        it->second.second += a.coeff * b.coeff;
      }
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, v] : acc)
    if (sgn(v.second) != 0) terms.push_back({std::move(v.first), std::move(v.second)});
  Polynomial r(arity_);
  r.terms_ = std::move(terms);
  std::sort(r.terms_.begin(), r.terms_.end(), grevlex_greater);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(arity_, Scalar(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Scalar inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const auto& t : terms_) {
    den_lcm = lcm(den_lcm, mpz_class(t.coeff.get_den()));
    num_gcd = gcd(num_gcd, mpz_class(t.coeff.get_num()));
  }
  Scalar scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(terms_.front().coeff) < 0) scale = -scale;
  return *this * scale;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != arity_) throw ArityMismatch("evaluation point has wrong length");
  Scalar total = 0;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < arity_; ++i) {
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    total += v;
  }
  return total;
}

Polynomial Polynomial::partial_evaluate(const std::vector<std::optional<Scalar>>& values) const {
  if (values.size() != arity_) throw ArityMismatch("partial evaluation");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    std::vector<std::uint32_t> e = t.mono.exponents();
    for (std::size_t i = 0; i < arity_; ++i) {
      if (values[i] && e[i] > 0) {
        for (std::uint32_t k = 0; k < e[i]; ++k) c *= *values[i];
        e[i] = 0;
      }
    }
    out.push_back({Monomial(std::move(e)), std::move(c)});
  }
  return from_terms(arity_, std::move(out));
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != arity_) throw ArityMismatch("substitution needs one image per variable");
  std::size_t out_arity = images.empty() ? 0 : images[0].arity();
  for (const auto& im : images)
    if (im.arity() != out_arity) throw ArityMismatch("substitution images differ in arity");
  std::vector<std::vector<Polynomial>> powers(arity_);
  auto power = [&](std::size_t var, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(out_arity, Scalar(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  Polynomial result(out_arity);
  for (const auto& t : terms_) {
    Polynomial term = constant(out_arity, t.coeff);
    for (std::size_t i = 0; i < arity_; ++i)
      if (t.mono[i] > 0) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

Polynomial Polynomial::embed(std::size_t new_arity, std::span<const std::size_t> map) const {
  if (map.size() != arity_) throw ArityMismatch("embedding map has wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.mono[i] == 0) continue;
      if (map[i] >= new_arity) throw ArityMismatch("embedding target out of range");
      e[map[i]] += t.mono[i];
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(new_arity, std::move(out));
}

Polynomial Polynomial::shift(std::size_t new_arity, std::size_t offset) const {
  if (offset + arity_ > new_arity) throw ArityMismatch("shift target out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(new_arity, 0);
    std::copy(t.mono.exponents().begin(), t.mono.exponents().end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(new_arity, std::move(out));
}

Polynomial Polynomial::drop_front(std::size_t count) const {
  if (count > arity_) throw ArityMismatch("dropping more variables than present");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const auto& e = t.mono.exponents();
    for (std::size_t i = 0; i < count; ++i)
      if (e[i] != 0) throw ArityMismatch("dropped variable occurs in the polynomial");
    out.push_back({Monomial(std::vector<std::uint32_t>(e.begin() + static_cast<std::ptrdiff_t>(count), e.end())),
                   t.coeff});
  }
  return from_terms(arity_ - count, std::move(out));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    std::vector<std::uint32_t> e = t.mono.exponents();
    Scalar c = t.coeff * Scalar(e[var]);
    e[var] -= 1;
    out.push_back({Monomial(std::move(e)), std::move(c)});
  }
  return from_terms(arity_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g) {
  if (f.arity() != g.arity()) throw ArityMismatch("exact division");
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return Polynomial(f.arity());
  // Grevlex is a term order, so dividing by the leading term terminates.
  Polynomial rem = f;
  std::vector<Term> quotient;
  const Term& lg = g.lead();
  while (!rem.is_zero()) {
    const Term& lr = rem.lead();
    if (!lg.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lg.mono;
    Scalar c = lr.coeff / lg.coeff;
    quotient.push_back({m, c});
    rem = rem - g.mul_term(m, c);
  }
  return Polynomial::from_terms(f.arity(), std::move(quotient));
}

namespace {

// Largest monomial dividing every term.
Monomial monomial_content(const Polynomial& f) {
  std::vector<std::uint32_t> e = f.terms().front().mono.exponents();
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t.mono[i]);
  return Monomial(std::move(e));
}

Polynomial divide_by_monomial(const Polynomial& f, const Monomial& m) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.mono / m, t.coeff});
  return Polynomial::from_terms(f.arity(), std::move(out));
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  if (f.arity() != g.arity()) throw ArityMismatch("gcd");
  const std::size_t n = f.arity();
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  Monomial mf = monomial_content(f), mg = monomial_content(g);
  std::vector<std::uint32_t> common(n);
  for (std::size_t i = 0; i < n; ++i) common[i] = std::min(mf[i], mg[i]);
  Polynomial mono_part = Polynomial::monomial(Monomial(common), Scalar(1));
  Polynomial a = divide_by_monomial(f, mf), b = divide_by_monomial(g, mg);
  if (a.is_constant() || b.is_constant()) return mono_part;
  if (exact_divide(a, b)) return mono_part * b.monic();
  if (exact_divide(b, a)) return mono_part * a.monic();
  // (a) cap (b) = (lcm), computed by eliminating t from (t a, (1 - t) b).
  std::vector<std::size_t> lift(n);
  std::iota(lift.begin(), lift.end(), 0);
  Polynomial ea = a.embed(n + 1, lift), eb = b.embed(n + 1, lift);
  Polynomial t = Polynomial::variable(n + 1, n);
  Polynomial one = Polynomial::constant(n + 1, Scalar(1));
  Ideal both(n + 1, {t * ea, (one - t) * eb});
  Ideal lcm_ideal = eliminate(both, {n});
  Polynomial l;
  for (const auto& p : lcm_ideal.generators())
    if (!p.is_zero()) { l = p; break; }
  // t does not occur in the elimination output; drop its slot.
  std::vector<Term> back;
  for (const auto& term : l.terms()) {
    std::vector<std::uint32_t> e(term.mono.exponents().begin(), term.mono.exponents().end() - 1);
    back.push_back({Monomial(std::move(e)), term.coeff});
  }
  Polynomial lcm_poly = Polynomial::from_terms(n, std::move(back));
  auto q = exact_divide(a * b, lcm_poly);
  assert(q);
  return mono_part * q->monic();
}

}  // namespace weilreg
