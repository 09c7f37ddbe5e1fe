#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <tuple>

#include "weilreg/exactalg.hpp"

namespace weilreg {

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder MonomialOrder::lex() {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  return o;
}

MonomialOrder MonomialOrder::grevlex() {
  MonomialOrder o;
  o.kind_ = Kind::Grevlex;
  return o;
}

MonomialOrder MonomialOrder::block(const std::vector<bool>& eliminate) {
  std::vector<int> ids(eliminate.size());
  for (std::size_t i = 0; i < eliminate.size(); ++i) ids[i] = eliminate[i] ? 0 : 1;
  return blocks(std::move(ids));
}

MonomialOrder MonomialOrder::blocks(std::vector<int> block_of_var) {
  MonomialOrder o;
  o.kind_ = Kind::Block;
  o.block_of_var_ = std::move(block_of_var);
  std::vector<int> ranks = o.block_of_var_;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  o.groups_.assign(ranks.size(), {});
  for (std::size_t v = 0; v < o.block_of_var_.size(); ++v) {
    auto pos = std::lower_bound(ranks.begin(), ranks.end(), o.block_of_var_[v]) - ranks.begin();
    o.groups_[static_cast<std::size_t>(pos)].push_back(v);
  }
  return o;
}

namespace {

int grevlex_on(const Monomial& a, const Monomial& b, const std::vector<std::size_t>& vars) {
  std::uint32_t da = 0, db = 0;
  for (auto v : vars) {
    da += a[v];
    db += b[v];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = vars.size(); k-- > 0;) {
    auto v = vars[k];
    if (a[v] != b[v]) return a[v] > b[v] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::Grevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = a.arity(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case Kind::Block:
      if (block_of_var_.size() != a.arity()) throw ArityMismatch("block order does not match ring arity");
      for (const auto& g : groups_) {
        int c = grevlex_on(a, b, g);
        if (c != 0) return c;
      }
      return 0;
  }
  return 0;
}

std::string MonomialOrder::key() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::Grevlex: return "grevlex";
    case Kind::Block: {
      std::ostringstream os;
      os << "block";
      for (int b : block_of_var_) os << ':' << b;
      return os.str();
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Step accounting

namespace {
thread_local GroebnerSettings tl_settings;
thread_local std::uint64_t tl_steps = 0;
}  // namespace

GroebnerSettings& groebner_settings() { return tl_settings; }
std::uint64_t groebner_steps_taken() { return tl_steps; }

ScopedGroebnerBudget::ScopedGroebnerBudget(std::uint64_t max_steps) : saved_(tl_settings.max_steps) {
  tl_settings.max_steps = max_steps;
}
ScopedGroebnerBudget::~ScopedGroebnerBudget() { tl_settings.max_steps = saved_; }

// ---------------------------------------------------------------------------
// Engine: polynomials as term vectors sorted descending under `ord`.

namespace {

using Terms = std::vector<Term>;

Terms sorted_terms(const Polynomial& p, const MonomialOrder& ord) {
  Terms t = p.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
  return t;
}

void make_monic(Terms& t) {
  if (t.empty()) return;
  Scalar inv = 1 / t.front().coeff;
  for (auto& x : t) x.coeff *= inv;
}

// f[start..] - c * m * g, all lists descending under ord.
Terms sub_scaled(const Terms& f, std::size_t start, const Scalar& c, const Monomial& m, const Terms& g,
                 const MonomialOrder& ord) {
  Terms out;
  out.reserve(f.size() - start + g.size());
  std::size_t i = start, j = 0;
  while (i < f.size() || j < g.size()) {
    int cmp;
    Monomial gm;
    if (j < g.size()) gm = g[j].mono * m;
    if (i == f.size()) cmp = -1;
    else if (j == g.size()) cmp = 1;
    else cmp = ord.compare(f[i].mono, gm);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -c * g[j].coeff});
      ++j;
    } else {
      Scalar s = f[i].coeff - c * g[j].coeff;
      if (sgn(s) != 0) out.push_back({std::move(gm), std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of f by monic divisors.
Terms reduce_terms(Terms f, const std::vector<const Terms*>& divisors, const MonomialOrder& ord) {
  Terms rem;
  std::size_t start = 0;
  while (start < f.size()) {
    const Term& lt = f[start];
    const Terms* hit = nullptr;
    for (const Terms* d : divisors) {
      if ((*d).front().mono.divides(lt.mono)) {
        hit = d;
        break;
      }
    }
    if (hit == nullptr) {
      rem.push_back(lt);
      ++start;
      continue;
    }
    Monomial m = lt.mono / hit->front().mono;
    Scalar c = lt.coeff;  // divisors are monic
    f = sub_scaled(f, start, c, m, *hit, ord);
    start = 0;
  }
  return rem;
}

Terms spoly_terms(const Terms& f, const Terms& g, const MonomialOrder& ord) {
  Monomial l = f.front().mono.lcm(g.front().mono);
  Monomial mf = l / f.front().mono, mg = l / g.front().mono;
  Terms a;
  a.reserve(f.size());
  for (const auto& t : f) a.push_back({t.mono * mf, t.coeff / f.front().coeff});
  Scalar c = 1 / g.front().coeff;
  return sub_scaled(a, 0, c, mg, g, ord);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(std::size_t arity, const MonomialOrder& ord) : arity_(arity), ord_(ord) {}

  std::vector<Polynomial> run(std::vector<Polynomial> gens) {
    std::vector<Terms> input;
    for (auto& g : gens) {
      if (g.arity() != arity_) throw ArityMismatch("generator arity differs from ideal arity");
      if (g.is_zero()) continue;
      if (g.is_constant()) return {Polynomial::constant(arity_, Scalar(1))};
      Terms t = sorted_terms(g, ord_);
      make_monic(t);
      input.push_back(std::move(t));
    }
    // Deterministic processing order: ascending leading monomial, then terms.
    std::sort(input.begin(), input.end(), [&](const Terms& a, const Terms& b) {
      int c = ord_.compare(a.front().mono, b.front().mono);
      if (c != 0) return c < 0;
      return a.size() < b.size();
    });
    for (auto& t : input) {
      Terms h = reduce_terms(std::move(t), current_divisors(), ord_);
      if (h.empty()) continue;
      make_monic(h);
      if (h.front().mono.is_one()) return {Polynomial::constant(arity_, Scalar(1))};
      add(std::move(h));
    }
    const std::uint64_t budget = groebner_settings().max_steps;
    std::uint64_t local_steps = 0;
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        int c = ord_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      Pair p = *best;
      pairs_.erase(best);
      ++local_steps;
      ++tl_steps;
      if (local_steps > budget) {
        throw BudgetExceeded("Groebner basis computation exceeded " + std::to_string(budget) + " S-pairs");
      }
      Terms s = spoly_terms(polys_[p.i], polys_[p.j], ord_);
      Terms h = reduce_terms(std::move(s), current_divisors(), ord_);
      if (h.empty()) continue;
      make_monic(h);
      if (h.front().mono.is_one()) return {Polynomial::constant(arity_, Scalar(1))};
      add(std::move(h));
    }
    return reduced_output();
  }

 private:
  std::vector<const Terms*> current_divisors() const {
    std::vector<const Terms*> out;
    out.reserve(basis_.size());
    for (auto k : basis_) out.push_back(&polys_[k]);
    return out;
  }

  // Gebauer-Moeller update.
  void add(Terms h_terms) {
    polys_.push_back(std::move(h_terms));
    const std::size_t h = polys_.size() - 1;
    const Monomial& lh = polys_[h].front().mono;

    std::vector<Pair> c;
    for (auto g : basis_) c.push_back({g, h, lh.lcm(polys_[g].front().mono)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool coprime = lh.coprime(polys_[p.i].front().mono);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t r = k + 1; r < c.size() && !dominated; ++r)
          if (c[r].lcm.divides(p.lcm)) dominated = true;
        for (std::size_t r = 0; r < d.size() && !dominated; ++r)
          if (d[r].lcm.divides(p.lcm)) dominated = true;
      }
      if (coprime || !dominated) d.push_back(p);
    }
    std::vector<Pair> e;
    for (auto& p : d)
      if (!lh.coprime(polys_[p.i].front().mono)) e.push_back(std::move(p));

    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lh.lcm(polys_[p.i].front().mono) == p.lcm) &&
                  !(lh.lcm(polys_[p.j].front().mono) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : e) kept.push_back(std::move(p));
    pairs_ = std::move(kept);

    std::vector<std::size_t> new_basis;
    for (auto g : basis_)
      if (!lh.divides(polys_[g].front().mono)) new_basis.push_back(g);
    new_basis.push_back(h);
    basis_ = std::move(new_basis);
  }

  std::vector<Polynomial> reduced_output() {
    std::vector<Terms> out;
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      std::vector<const Terms*> others;
      for (std::size_t b = 0; b < basis_.size(); ++b)
        if (b != a) others.push_back(&polys_[basis_[b]]);
      const Terms& g = polys_[basis_[a]];
      Terms tail(g.begin() + 1, g.end());
      Terms reduced = reduce_terms(std::move(tail), others, ord_);
      Terms full;
      full.reserve(reduced.size() + 1);
      full.push_back(g.front());
      for (auto& t : reduced) full.push_back(std::move(t));
      out.push_back(std::move(full));
    }
    std::sort(out.begin(), out.end(),
              [&](const Terms& a, const Terms& b) { return ord_.greater(a.front().mono, b.front().mono); });
    std::vector<Polynomial> result;
    result.reserve(out.size());
    for (auto& t : out) result.push_back(Polynomial::from_terms(arity_, std::move(t)));
    return result;
  }

  std::size_t arity_;
  MonomialOrder ord_;
  std::vector<Terms> polys_;
  std::vector<std::size_t> basis_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<Polynomial> compute_groebner_basis(std::size_t arity, std::vector<Polynomial> gens,
                                               const MonomialOrder& ord) {
  Buchberger engine(arity, ord);
  return engine.run(std::move(gens));
}

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& ord) {
  return ideal.groebner_basis(ord);
}

Term leading_term(const Polynomial& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw Error("ZeroPolynomial", "leading term of zero");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms())
    if (ord.greater(t.mono, best->mono)) best = &t;
  return *best;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
  Terms s = spoly_terms(sorted_terms(f, ord), sorted_terms(g, ord), ord);
  return Polynomial::from_terms(f.arity(), std::move(s));
}

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& ord) {
  std::vector<Terms> sorted;
  sorted.reserve(basis.size());
  for (const auto& b : basis) {
    if (b.arity() != f.arity()) throw ArityMismatch("reduction basis arity");
    if (b.is_zero()) continue;
    Terms t = sorted_terms(b, ord);
    make_monic(t);
    sorted.push_back(std::move(t));
  }
  std::vector<const Terms*> divisors;
  for (const auto& t : sorted) divisors.push_back(&t);
  Terms r = reduce_terms(sorted_terms(f, ord), divisors, ord);
  return Polynomial::from_terms(f.arity(), std::move(r));
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(std::size_t arity) : arity_(arity), cache_(std::make_shared<Cache>()) {}

Ideal::Ideal(std::size_t arity, std::vector<Polynomial> generators)
    : arity_(arity), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.arity() != arity) throw ArityMismatch("ideal generator arity");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(std::size_t arity) { return Ideal(arity, {Polynomial::constant(arity, Scalar(1))}); }

const std::vector<Polynomial>& Ideal::groebner_basis(const MonomialOrder& ord) const {
  const std::string key = ord.key();
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->bases.find(key);
    if (it != cache_->bases.end()) return *it->second;
  }
  auto computed = std::make_shared<const std::vector<Polynomial>>(compute_groebner_basis(arity_, gens_, ord));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->bases.emplace(key, std::move(computed));
  return *it->second;
}

Ideal Ideal::operator+(const Ideal& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("ideal sum");
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(arity_, std::move(g));
}

Ideal Ideal::with(const Polynomial& f) const {
  std::vector<Polynomial> g = gens_;
  g.push_back(f);
  return Ideal(arity_, std::move(g));
}

Ideal Ideal::with(const std::vector<Polynomial>& fs) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), fs.begin(), fs.end());
  return Ideal(arity_, std::move(g));
}

Ideal Ideal::embed(std::size_t new_arity, std::span<const std::size_t> map) const {
  std::vector<Polynomial> g;
  g.reserve(gens_.size());
  for (const auto& p : gens_) g.push_back(p.embed(new_arity, map));
  return Ideal(new_arity, std::move(g));
}

// ---------------------------------------------------------------------------
// Ideal operations

Polynomial normal_form(const Polynomial& f, const Ideal& ideal, const MonomialOrder& ord) {
  if (f.arity() != ideal.arity()) throw ArityMismatch("normal_form: polynomial and ideal arities differ");
  return reduce(f, ideal.groebner_basis(ord), ord);
}

bool contains(const Ideal& ideal, const Polynomial& f) { return normal_form(f, ideal).is_zero(); }

bool contains(const Ideal& big, const Ideal& small) {
  for (const auto& g : small.generators())
    if (!contains(big, g)) return false;
  return true;
}

bool ideals_equal(const Ideal& a, const Ideal& b) { return contains(a, b) && contains(b, a); }

bool is_empty_variety(const Ideal& ideal) {
  const auto& gb = ideal.groebner_basis(MonomialOrder::grevlex());
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

// Drops trailing variables that no longer occur.
Ideal shrink(const Ideal& ideal, std::size_t arity) {
  std::vector<std::size_t> m = identity_map(ideal.arity());
  for (auto& v : m)
    if (v >= arity) v = 0;
  std::vector<Polynomial> g;
  for (const auto& p : ideal.generators()) {
    for (std::size_t v = arity; v < ideal.arity(); ++v) assert(!p.uses_var(v));
    g.push_back(p.embed(arity, m));
  }
  return Ideal(arity, std::move(g));
}

}  // namespace

bool radical_contains(const Ideal& ideal, const Polynomial& f) {
  if (f.arity() != ideal.arity()) throw ArityMismatch("radical_contains");
  if (f.is_zero()) return true;
  const std::size_t n = ideal.arity();
  auto m = identity_map(n);
  Ideal big = ideal.embed(n + 1, m);
  Polynomial t = Polynomial::variable(n + 1, n);
  big = big.with(Polynomial::constant(n + 1, Scalar(1)) - t * f.embed(n + 1, m));
  return is_empty_variety(big);
}

bool radicals_equal(const Ideal& a, const Ideal& b) {
  for (const auto& g : b.generators())
    if (!radical_contains(a, g)) return false;
  for (const auto& g : a.generators())
    if (!radical_contains(b, g)) return false;
  return true;
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& vars) {
  const std::size_t n = ideal.arity();
  std::vector<bool> mask(n, false);
  for (auto v : vars) {
    if (v >= n) throw ArityMismatch("eliminate: variable index out of range");
    mask[v] = true;
  }
  if (vars.empty()) return ideal;
  const auto& gb = ideal.groebner_basis(MonomialOrder::block(mask));
  std::vector<Polynomial> kept;
  for (const auto& g : gb)
    if (!g.uses_any(mask)) kept.push_back(g);
  return Ideal(n, std::move(kept));
}

Ideal saturate(const Ideal& ideal, const Polynomial& f) {
  if (f.arity() != ideal.arity()) throw ArityMismatch("saturate");
  if (f.is_zero()) throw Error("ZeroPolynomial", "saturation by zero");
  const std::size_t n = ideal.arity();
  if (f.is_constant()) return ideal;
  auto m = identity_map(n);
  Ideal big = ideal.embed(n + 1, m);
  Polynomial t = Polynomial::variable(n + 1, n);
  big = big.with(t * f.embed(n + 1, m) - Polynomial::constant(n + 1, Scalar(1)));
  return shrink(eliminate(big, {n}), n);
}

Ideal saturate(const Ideal& ideal, const Ideal& by) {
  if (by.arity() != ideal.arity()) throw ArityMismatch("saturate by ideal");
  if (by.generators().empty()) return Ideal::unit(ideal.arity());
  std::optional<Ideal> acc;
  for (const auto& g : by.generators()) {
    Ideal s = saturate(ideal, g);
    acc = acc ? intersect(*acc, s) : s;
  }
  return *acc;
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("intersect");
  const std::size_t n = a.arity();
  auto m = identity_map(n);
  Polynomial t = Polynomial::variable(n + 1, n);
  Polynomial one_minus_t = Polynomial::constant(n + 1, Scalar(1)) - t;
  std::vector<Polynomial> g;
  for (const auto& p : a.generators()) g.push_back(t * p.embed(n + 1, m));
  for (const auto& p : b.generators()) g.push_back(one_minus_t * p.embed(n + 1, m));
  return shrink(eliminate(Ideal(n + 1, std::move(g)), {n}), n);
}

Ideal product(const Ideal& a, const Ideal& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("product");
  std::vector<Polynomial> g;
  for (const auto& p : a.generators())
    for (const auto& q : b.generators()) g.push_back(p * q);
  return Ideal(a.arity(), std::move(g));
}

std::vector<std::pair<Monomial, Polynomial>> collect_wrt(const Polynomial& f, const std::vector<std::size_t>& vars) {
  const std::size_t n = f.arity();
  std::vector<bool> mask(n, false);
  for (auto v : vars) {
    if (v >= n) throw ArityMismatch("coefficients_wrt: variable index out of range");
    mask[v] = true;
  }
  std::map<std::vector<std::uint32_t>, std::vector<Term>> groups;
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> key(n, 0), rest = t.mono.exponents();
    for (std::size_t v = 0; v < n; ++v) {
      if (mask[v]) {
        key[v] = rest[v];
        rest[v] = 0;
      }
    }
    groups[key].push_back({Monomial(std::move(rest)), t.coeff});
  }
  std::vector<std::pair<Monomial, Polynomial>> out;
  for (auto& [key, terms] : groups) out.emplace_back(Monomial(key), Polynomial::from_terms(n, std::move(terms)));
  const auto order = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
  return out;
}

std::vector<Polynomial> coefficients_wrt(const Polynomial& f, const std::vector<std::size_t>& vars) {
  std::vector<Polynomial> out;
  for (auto& [m, c] : collect_wrt(f, vars)) out.push_back(std::move(c));
  return out;
}

}  // namespace weilreg
