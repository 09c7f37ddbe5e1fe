#include <algorithm>
#include <numeric>

#include "weilreg/varmaps.hpp"

namespace weilreg {

namespace {

std::vector<std::size_t> range(std::size_t start, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), start);
  return v;
}

bool vanishes_on(const Polynomial& p, const Ideal& ideal) { return normal_form(p, ideal).is_zero(); }

// Distinct monic factors, multiplied together.
Polynomial product_of_distinct(std::size_t arity, const std::vector<Polynomial>& factors) {
  std::vector<Polynomial> seen;
  Polynomial out = Polynomial::constant(arity, Scalar(1));
  for (const auto& f : factors) {
    if (f.is_constant()) continue;
    Polynomial m = f.monic();
    if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
    seen.push_back(m);
    out = out * m;
  }
  return out;
}

Polynomial denominator_product(const Representative& r, std::size_t arity) {
  std::vector<Polynomial> dens;
  for (const auto& f : r) dens.push_back(f.den);
  return product_of_distinct(arity, dens);
}

// Reduces numerator and denominator modulo the host ideal, then cancels.
Fraction normalize_on(const Fraction& f, const Ideal& host) {
  if (host.generators().empty()) return f;
  return Fraction::make(normal_form(f.num, host), normal_form(f.den, host));
}

void check_same_host(const AffineVariety& a, const AffineVariety& b, const char* what) {
  if (!same_variety(a, b)) throw NotComposable(what);
}

}  // namespace

std::string to_string(const Fraction& f, std::span<const std::string> names) {
  if (f.is_polynomial()) return to_string(f.num * (1 / *f.den.constant_value()), names);
  std::string num = to_string(f.num, names), den = to_string(f.den, names);
  if (f.num.size() > 1) num = "(" + num + ")";
  bool bare = f.den.size() == 1 && f.den.lead().coeff == 1 &&
              std::count_if(f.den.lead().mono.exponents().begin(), f.den.lead().mono.exponents().end(),
                            [](std::uint32_t e) { return e > 0; }) == 1;
  if (!bare) den = "(" + den + ")";
  return num + "/" + den;
}

// ---------------------------------------------------------------------------
// RationalMap

RationalMap RationalMap::unchecked(OpenSubset source, OpenSubset target, std::vector<Representative> reps) {
  RationalMap m;
  m.state_ = std::make_shared<State>();
  m.state_->source = std::move(source);
  m.state_->target = std::move(target);
  m.state_->reps = std::move(reps);
  return m;
}

const Ideal& RationalMap::graph_ideal() const {
  std::call_once(state_->graph_once, [this] { state_->graph = graph_closure(*this); });
  return *state_->graph;
}

bool RationalMap::is_dominant() const {
  std::call_once(state_->dominant_once, [this] { state_->dominant = weilreg::is_dominant(*this); });
  return state_->dominant;
}

std::optional<RationalMap> RationalMap::cached_inverse() const {
  std::lock_guard lock(state_->inverse_mutex);
  if (!state_->inverse) return std::nullopt;
  RationalMap m;
  m.state_ = state_->inverse;
  return m;
}

void RationalMap::remember_inverse(const RationalMap& inv) const {
  RationalMap detached = unchecked(source(), target(), representatives());
  RationalMap back = unchecked(inv.source(), inv.target(), inv.representatives());
  back.state_->inverse = detached.state_;
  std::lock_guard lock(state_->inverse_mutex);
  if (!state_->inverse) state_->inverse = back.state_;
}

std::string RationalMap::print(std::size_t rep_index) const {
  const auto& r = state_->reps.at(rep_index);
  const auto& names = source().host().vars();
  std::string out = "(";
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j) out += ", ";
    out += to_string(r[j], names);
  }
  return out + ")";
}

RationalMap make_rational_map(OpenSubset source, OpenSubset target, std::vector<Representative> reps) {
  if (reps.empty()) throw ArityMismatch("rational map needs at least one representative");
  const AffineVariety& src = source.host();
  const AffineVariety& tgt = target.host();
  for (auto& r : reps) {
    if (r.size() != tgt.arity()) throw ArityMismatch("representative length differs from target dimension");
    for (auto& f : r) {
      if (f.num.arity() != src.arity()) throw ArityMismatch("representative arity differs from source dimension");
      if (vanishes_on(f.den, src.ideal())) throw ZeroDenominator("denominator vanishes on the source");
    }
    for (const auto& g : tgt.ideal().generators()) {
      Fraction pulled = substitute(g, r);
      Polynomial residue = normal_form(pulled.num, src.ideal());
      if (!residue.is_zero())
        throw NotIntoTarget("target relation " + tgt.print(g) + " pulls back to " + src.print(residue));
    }
  }
  for (std::size_t a = 1; a < reps.size(); ++a)
    for (std::size_t j = 0; j < tgt.arity(); ++j)
      if (!functions_equal(src, reps[0][j], reps[a][j]))
        throw RepresentativeMismatch("representative " + std::to_string(a) + " disagrees in coordinate " +
                                     std::to_string(j));
  return RationalMap::unchecked(std::move(source), std::move(target), std::move(reps));
}

RationalMap make_rational_map(const AffineVariety& source, const AffineVariety& target,
                              std::vector<Representative> reps) {
  return make_rational_map(OpenSubset(source), OpenSubset(target), std::move(reps));
}

RationalMap identity_map(const OpenSubset& x) {
  Representative r;
  for (std::size_t i = 0; i < x.host().arity(); ++i) r.push_back(Fraction::of(x.host().var(i)));
  return RationalMap::unchecked(x, x, {std::move(r)});
}

RationalMap polynomial_map(const OpenSubset& source, const OpenSubset& target, std::vector<Polynomial> coords) {
  Representative r;
  for (auto& c : coords) r.push_back(Fraction::of(std::move(c)));
  return make_rational_map(source, target, {std::move(r)});
}

// ---------------------------------------------------------------------------
// Graph, image, dominance

Ideal graph_closure(const RationalMap& phi) {
  const AffineVariety& src = phi.source().host();
  const AffineVariety& tgt = phi.target().host();
  const std::size_t n = src.arity(), m = tgt.arity(), total = n + m;
  std::vector<Polynomial> gens;
  for (const auto& g : src.ideal().generators()) gens.push_back(g.shift(total, 0));
  for (const auto& g : tgt.ideal().generators()) gens.push_back(g.shift(total, n));
  const Representative& r = phi.rep();
  for (std::size_t j = 0; j < m; ++j) {
    Polynomial y = Polynomial::variable(total, n + j);
    gens.push_back(r[j].den.shift(total, 0) * y - r[j].num.shift(total, 0));
  }
  Ideal ideal(total, std::move(gens));
  Polynomial q = denominator_product(r, n);
  if (q.is_constant()) return ideal;
  return saturate(ideal, q.shift(total, 0));
}

Ideal closed_image(const RationalMap& phi) {
  const std::size_t n = phi.source().host().arity(), m = phi.target().host().arity();
  Ideal elim = eliminate(phi.graph_ideal(), range(0, n));
  std::vector<Polynomial> gens;
  for (const auto& g : elim.generators()) gens.push_back(g.drop_front(n));
  return Ideal(m, std::move(gens));
}

bool is_dominant(const RationalMap& phi) {
  return ideals_equal(closed_image(phi), phi.target().host().ideal());
}

// ---------------------------------------------------------------------------
// Composition and equality

RationalMap compose_unchecked(const RationalMap& phi, const RationalMap& psi) {
  const Ideal& host = phi.source().host().ideal();
  std::vector<Representative> reps;
  for (const auto& r : phi.representatives()) {
    for (const auto& s : psi.representatives()) {
      Representative out;
      bool ok = true;
      for (const auto& f : s) {
        Fraction den = substitute(f.den, r);
        if (vanishes_on(den.num, host)) {
          ok = false;
          break;
        }
        out.push_back(normalize_on(substitute(f.num, r) / den, host));
      }
      if (ok && std::find(reps.begin(), reps.end(), out) == reps.end()) reps.push_back(std::move(out));
    }
  }
  if (reps.empty()) throw ZeroDenominator("no pair of representatives composes");
  return RationalMap::unchecked(phi.source(), psi.target(), std::move(reps));
}

RationalMap compose(const RationalMap& phi, const RationalMap& psi) {
  check_same_host(phi.target().host(), psi.source().host(), "target of the first map is not the source of the second");
  if (!phi.is_dominant()) throw NotDominant("first map of a composite is not dominant");
  return compose_unchecked(phi, psi);
}

bool maps_equal(const RationalMap& phi, const RationalMap& psi) {
  if (!same_variety(phi.source().host(), psi.source().host()) ||
      phi.target().host().arity() != psi.target().host().arity())
    throw VarietyMismatch("comparing maps between different varieties");
  const AffineVariety& host = phi.source().host();
  const Representative &a = phi.rep(), &b = psi.rep();
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!functions_equal(host, a[j], b[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

bool round_trips(const RationalMap& phi, const RationalMap& inv) {
  try {
    return maps_equal(compose_unchecked(phi, inv), identity_map(phi.source())) &&
           maps_equal(compose_unchecked(inv, phi), identity_map(phi.target()));
  } catch (const ZeroDenominator&) {
    return false;
  }
}

}  // namespace

RationalMap inverse(const RationalMap& phi) {
  if (auto cached = phi.cached_inverse()) return *cached;
  if (!phi.is_dominant()) throw NotDominant("only dominant maps can be inverted");
  const std::size_t n = phi.source().host().arity(), m = phi.target().host().arity(), total = n + m;
  const Ideal& graph = phi.graph_ideal();
  Representative rep;
  for (std::size_t k = 0; k < n; ++k) {
    // Order: other x's, then x_k, then the y's; basis elements free of the
    // other x's generate the elimination ideal in k[x_k, y].
    std::vector<int> blocks(total, 2);
    for (std::size_t i = 0; i < n; ++i) blocks[i] = (i == k) ? 1 : 0;
    std::vector<bool> others(total, false);
    for (std::size_t i = 0; i < n; ++i) others[i] = (i != k);
    const auto& basis = graph.groebner_basis(MonomialOrder::blocks(blocks));
    std::optional<Fraction> found;
    for (auto it = basis.rbegin(); it != basis.rend() && !found; ++it) {
      if (it->uses_any(others) || it->degree_in(k) != 1) continue;
      auto parts = collect_wrt(*it, {k});
      Polynomial a(total), c(total);
      for (auto& [mono, coeff] : parts) (mono[k] == 1 ? a : c) = coeff;
      if (contains(graph, a)) continue;
      found = Fraction::make(-c.drop_front(n), a.drop_front(n));
    }
    if (!found) throw NotBirational("no element linear in " + phi.source().host().vars()[k] + " in the graph basis");
    rep.push_back(normalize_on(*found, phi.target().host().ideal()));
  }
  RationalMap inv = RationalMap::unchecked(phi.target(), phi.source(), {std::move(rep)});
  if (!round_trips(phi, inv)) throw NotBirational("candidate inverse fails a round trip");
  phi.remember_inverse(inv);
  return *phi.cached_inverse();
}

RationalMap with_inverse(const RationalMap& phi, const RationalMap& inv) {
  if (!same_variety(phi.source().host(), inv.target().host()) ||
      !same_variety(phi.target().host(), inv.source().host()))
    throw VarietyMismatch("proposed inverse has the wrong source or target");
  if (!round_trips(phi, inv)) throw NotBirational("proposed inverse fails a round trip");
  phi.remember_inverse(inv);
  return phi;
}

// ---------------------------------------------------------------------------
// Loci

namespace {

// Numerator of p∘r; nonzero exactly where p(r(x)) is, given r is defined.
Polynomial pulled_numerator(const Polynomial& p, const Representative& r) { return substitute(p, r).num; }

}  // namespace

OpenSubset definable_locus(const RationalMap& phi) {
  const AffineVariety& host = phi.source().host();
  const std::size_t n = host.arity();
  std::vector<Polynomial> witnesses;
  for (const auto& c : phi.source().witnesses()) {
    for (const auto& r : phi.representatives()) {
      Polynomial q = denominator_product(r, n);
      for (const auto& d : phi.target().witnesses())
        witnesses.push_back(product_of_distinct(n, {c, q, pulled_numerator(d, r)}));
    }
  }
  return OpenSubset(host, std::move(witnesses));
}

OpenSubset biregular_locus(const RationalMap& phi, const RationalMap& phi_inverse) {
  const AffineVariety& host = phi.source().host();
  const std::size_t n = host.arity();
  std::vector<Polynomial> witnesses;
  for (const auto& c : phi.source().witnesses()) {
    for (const auto& r : phi.representatives()) {
      Polynomial q = denominator_product(r, n);
      for (const auto& s : phi_inverse.representatives()) {
        Polynomial back = pulled_numerator(denominator_product(s, phi.target().host().arity()), r);
        for (const auto& d : phi.target().witnesses())
          witnesses.push_back(product_of_distinct(n, {c, q, back, pulled_numerator(d, r)}));
      }
    }
  }
  return OpenSubset(host, std::move(witnesses));
}

OpenSubset biregular_locus(const RationalMap& phi) { return biregular_locus(phi, inverse(phi)); }

GraphClosedness is_graph_closed(const RationalMap& phi, const OpenSubset& host) {
  if (!same_variety(phi.source().host(), host.host()) || !same_variety(phi.target().host(), host.host()))
    throw VarietyMismatch("graph closedness needs a self-map of the host variety");
  const std::size_t n = host.host().arity(), total = 2 * n;
  // Graph closure over the non-definable locus (as a map into the ambient).
  std::vector<Polynomial> bad;
  for (const auto& r : phi.representatives()) bad.push_back(denominator_product(r, n).shift(total, 0));
  Ideal over_bad = phi.graph_ideal().with(bad);
  for (const auto& c : host.witnesses()) {
    for (const auto& d : host.witnesses()) {
      Polynomial h = c.shift(total, 0) * d.shift(total, n);
      if (!radical_contains(over_bad, h)) return {false, h.is_constant() ? over_bad : saturate(over_bad, h)};
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Point status

namespace {

bool zero_dimensional(const Ideal& ideal) {
  const auto& basis = ideal.groebner_basis(MonomialOrder::grevlex());
  for (std::size_t i = 0; i < ideal.arity(); ++i) {
    bool pure = std::any_of(basis.begin(), basis.end(), [&](const Polynomial& g) {
      const Monomial& lead = g.lead().mono;
      return lead.degree() == lead[i] && lead[i] > 0;
    });
    if (!pure) return false;
  }
  return true;
}

// Number of distinct roots of the eliminant in variable i is one.
bool single_coordinate(const Ideal& ideal, std::size_t i) {
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < ideal.arity(); ++j)
    if (j != i) others.push_back(j);
  Ideal elim = eliminate(ideal, others);
  if (elim.generators().empty()) return false;
  Polynomial p = elim.generators().front();
  for (const auto& g : elim.generators())
    if (g.total_degree() < p.total_degree()) p = g;
  Polynomial squarefree = *exact_divide(p, gcd(p, p.derivative(i)));
  return squarefree.total_degree() == 1;
}

}  // namespace

PointStatus point_status(const RationalMap& phi, std::span<const Scalar> point) {
  if (!phi.source().contains_point(point)) throw PointNotOnVariety("point is not on the source");
  const std::size_t n = phi.source().host().arity(), m = phi.target().host().arity();
  for (const auto& r : phi.representatives()) {
    bool defined = std::all_of(r.begin(), r.end(), [&](const Fraction& f) { return sgn(f.den.evaluate(point)) != 0; });
    if (!defined) continue;
    std::vector<Scalar> value;
    for (const auto& f : r) value.push_back(f.num.evaluate(point) / f.den.evaluate(point));
    if (!phi.target().contains_point(value)) return {PointStatusKind::Undefined, {}};
    return {PointStatusKind::Defined, std::move(value)};
  }
  std::vector<std::optional<Scalar>> values(n + m);
  for (std::size_t i = 0; i < n; ++i) values[i] = point[i];
  std::vector<Polynomial> fiber_gens;
  for (const auto& g : phi.graph_ideal().generators()) fiber_gens.push_back(g.partial_evaluate(values).drop_front(n));
  Ideal fiber(m, std::move(fiber_gens));
  if (!phi.target().is_whole()) fiber = saturate(fiber, Ideal(m, phi.target().witnesses()));
  if (is_empty_variety(fiber) || !zero_dimensional(fiber)) return {PointStatusKind::Undefined, {}};
  for (std::size_t i = 0; i < m; ++i)
    if (!single_coordinate(fiber, i)) return {PointStatusKind::Undefined, {}};
  return {PointStatusKind::Unknown, {}};
}

}  // namespace weilreg
