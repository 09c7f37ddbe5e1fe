#include <algorithm>

#include "weilreg/groups.hpp"

namespace weilreg {

namespace {

std::vector<Polynomial> shifted(const std::vector<Polynomial>& ps, std::size_t total, std::size_t offset) {
  std::vector<Polynomial> out;
  for (const auto& p : ps) out.push_back(p.shift(total, offset));
  return out;
}

Fraction shifted(const Fraction& f, std::size_t total, std::size_t offset) {
  return Fraction{f.num.shift(total, offset), f.den.shift(total, offset)};
}

OpenSubset open_on_product(const AffineVariety& left, const OpenSubset& right) {
  AffineVariety host = product(left, right.host());
  return OpenSubset(host, shifted(right.witnesses(), host.arity(), left.arity()));
}

std::string residue_text(const AffineVariety& host, const Fraction& a, const Fraction& b) {
  return host.print(normal_form(a.num * b.den - b.num * a.den, host.ideal()));
}

// First coordinate where the two maps differ, with its residue.
std::optional<std::pair<std::size_t, std::string>> first_difference(const RationalMap& a, const RationalMap& b) {
  const AffineVariety& host = a.source().host();
  for (std::size_t j = 0; j < a.rep().size(); ++j)
    if (!functions_equal(host, a.rep()[j], b.rep()[j])) return std::make_pair(j, residue_text(host, a.rep()[j], b.rep()[j]));
  return std::nullopt;
}

// Substitutes the group point g into every representative of rho.
std::vector<Representative> specialize_reps(const RationalAction& action, std::span<const Scalar> g) {
  const std::size_t n = action.group().arity();
  const std::size_t total = n + action.space().host().arity();
  const Ideal& ix = action.space().host().ideal();
  std::vector<std::optional<Scalar>> values(total);
  for (std::size_t i = 0; i < n; ++i) values[i] = g[i];
  std::vector<Representative> out;
  for (const auto& r : action.parametric().representatives()) {
    Representative s;
    bool ok = true;
    for (const auto& f : r) {
      Polynomial den = f.den.partial_evaluate(values).drop_front(n);
      if (normal_form(den, ix).is_zero()) {
        ok = false;
        break;
      }
      s.push_back(Fraction::make(f.num.partial_evaluate(values).drop_front(n), den));
    }
    if (ok && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  if (out.empty()) throw ZeroDenominator("every representative of the action is undefined at this group point");
  return out;
}

}  // namespace

OpenSubset RationalAction::product_space() const { return open_on_product(group_.variety(), space_); }

// ---------------------------------------------------------------------------
// Construction and the action laws

RationalAction make_rational_action(AlgebraicGroup group, OpenSubset space, const std::vector<Representative>& reps) {
  if (group.is_finite()) throw ArityMismatch("finite groups act through one map per element");
  RationalAction a;
  a.group_ = std::move(group);
  a.space_ = std::move(space);
  const std::size_t n = a.group_.arity(), k = a.space_.host().arity();
  const OpenSubset gx = a.product_space();
  a.rho_ = make_rational_map(gx, a.space_, reps);

  // rho(e, .) = id.
  auto at_e = specialize_reps(a, a.group_.identity());
  RationalMap rho_e = RationalMap::unchecked(a.space_, a.space_, at_e);
  if (auto diff = first_difference(rho_e, identity_map(a.space_)))
    throw NotAnAction("identity law rho(e,x) = x fails in coordinate " + std::to_string(diff->first) + " (residue " +
                      diff->second + ")");

  // rho(m(g,h), x) = rho(g, rho(h, x)) on G x G x X.
  const AffineVariety& gv = a.group_.variety();
  const OpenSubset ggx = open_on_product(product(gv, gv), a.space_);
  const std::size_t total = 2 * n + k;
  Representative mult;
  for (const auto& p : a.group_.multiplication()) mult.push_back(Fraction::of(p.shift(total, 0)));
  for (std::size_t j = 0; j < k; ++j) mult.push_back(Fraction::of(Polynomial::variable(total, 2 * n + j)));
  std::vector<Representative> inner;
  for (const auto& r : a.rho_.representatives()) {
    Representative s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(Fraction::of(Polynomial::variable(total, i)));
    for (const auto& f : r) s.push_back(shifted(f, total, n));
    inner.push_back(std::move(s));
  }
  try {
    RationalMap lhs = compose_unchecked(RationalMap::unchecked(ggx, gx, {mult}), a.rho_);
    RationalMap rhs = compose_unchecked(RationalMap::unchecked(ggx, gx, inner), a.rho_);
    if (auto diff = first_difference(lhs, rhs))
      throw NotAnAction("homomorphism law rho(m(g,h),x) = rho(g,rho(h,x)) fails in coordinate " +
                        std::to_string(diff->first) + " (residue " + diff->second + ")");
  } catch (const ZeroDenominator&) {
    throw NotAnAction("homomorphism law cannot be evaluated: composite undefined");
  }
  return a;
}

RationalAction make_rational_action(AlgebraicGroup group, OpenSubset space, std::vector<RationalMap> per_element) {
  if (!group.is_finite()) throw ArityMismatch("parametric groups act through one map on G x X");
  if (per_element.size() != group.order()) throw ArityMismatch("need one map per group element");
  RationalAction a;
  a.group_ = std::move(group);
  a.space_ = std::move(space);
  for (auto& m : per_element) {
    if (!same_variety(m.source().host(), a.space_.host()) || !same_variety(m.target().host(), a.space_.host()))
      throw VarietyMismatch("element map is not a self-map of the space");
    a.per_element_.push_back(RationalMap::unchecked(a.space_, a.space_, m.representatives()));
  }
  const auto& names = a.group_.elements();
  if (auto diff = first_difference(a.per_element_[a.group_.identity_index()], identity_map(a.space_)))
    throw NotAnAction("identity element " + names[a.group_.identity_index()] + " does not act trivially (residue " +
                      diff->second + ")");
  for (std::size_t g = 0; g < a.group_.order(); ++g) {
    for (std::size_t h = 0; h < a.group_.order(); ++h) {
      std::optional<std::pair<std::size_t, std::string>> diff;
      try {
        diff = first_difference(compose_unchecked(a.per_element_[h], a.per_element_[g]),
                                a.per_element_[a.group_.multiply(g, h)]);
      } catch (const ZeroDenominator&) {
        diff = std::make_pair(std::size_t{0}, std::string("composite undefined"));
      }
      if (diff)
        throw NotAnAction("rho_" + names[g] + " o rho_" + names[h] + " != rho_" + names[a.group_.multiply(g, h)] +
                          " (residue " + diff->second + ")");
    }
  }
  for (std::size_t g = 0; g < a.group_.order(); ++g)
    a.per_element_[g].remember_inverse(a.per_element_[a.group_.invert(g)]);
  return a;
}

// ---------------------------------------------------------------------------
// rho~

std::pair<RationalMap, RationalMap> lift_tilde(const RationalAction& action) {
  if (action.is_finite()) throw ArityMismatch("finite actions lift one element at a time");
  const std::size_t n = action.group().arity(), k = action.space().host().arity(), total = n + k;
  const OpenSubset gx = action.product_space();
  std::vector<Representative> reps;
  for (const auto& r : action.parametric().representatives()) {
    Representative s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(Fraction::of(Polynomial::variable(total, i)));
    s.insert(s.end(), r.begin(), r.end());
    reps.push_back(std::move(s));
  }
  RationalMap tilde = RationalMap::unchecked(gx, gx, std::move(reps));
  Representative swap;
  for (const auto& p : action.group().inversion()) swap.push_back(Fraction::of(p.shift(total, 0)));
  for (std::size_t j = 0; j < k; ++j) swap.push_back(Fraction::of(Polynomial::variable(total, n + j)));
  RationalMap tau = RationalMap::unchecked(gx, gx, {std::move(swap)});
  RationalMap tilde_inv = compose_unchecked(compose_unchecked(tau, tilde), tau);
  with_inverse(tilde, tilde_inv);
  return {tilde, tilde_inv};
}

std::pair<RationalMap, RationalMap> lift_tilde(const RationalAction& action, std::size_t element) {
  if (!action.is_finite()) throw ArityMismatch("parametric actions lift on G x X");
  return {action.element_map(element), action.element_map(action.group().invert(element))};
}

// ---------------------------------------------------------------------------
// G-regular locus

GRegularLocus g_regular_locus(const RationalAction& action) {
  const OpenSubset& x = action.space();
  const AffineVariety& host = x.host();
  GRegularLocus out;
  if (action.is_finite()) {
    OpenSubset locus = x;
    for (std::size_t g = 0; g < action.group().order(); ++g) {
      auto [rho_g, rho_inv] = lift_tilde(action, g);
      locus = locus.intersect(biregular_locus(rho_g, rho_inv));
    }
    out.bad = locus.complement();
    out.locus = OpenSubset(host, groebner_basis(Ideal(host.arity(), locus.witnesses()), MonomialOrder::grevlex()));
  } else {
    const std::size_t n = action.group().arity(), total = n + host.arity();
    auto [tilde, tilde_inv] = lift_tilde(action);
    Ideal e = biregular_locus(tilde, tilde_inv).complement();
    Ideal ig(total, shifted(action.group().variety().ideal().generators(), total, 0));
    std::vector<std::size_t> group_vars(n);
    for (std::size_t i = 0; i < n; ++i) group_vars[i] = i;
    // x is bad iff every generator of E vanishes on G x {x}: reduce modulo
    // I_G and require every coefficient in the group variables to vanish.
    std::vector<Polynomial> bad = host.ideal().generators();
    for (const auto& g : e.generators())
      for (const auto& c : coefficients_wrt(normal_form(g, ig), group_vars)) bad.push_back(c.drop_front(n));
    Ideal bad_ideal(host.arity(), std::move(bad));
    if (!x.is_whole()) bad_ideal = saturate(bad_ideal, Ideal(host.arity(), x.witnesses()));
    std::vector<Polynomial> witnesses;
    for (const auto& c : x.witnesses())
      for (const auto& b : groebner_basis(bad_ideal, MonomialOrder::grevlex())) witnesses.push_back(c * b);
    out.locus = OpenSubset(host, std::move(witnesses));
    out.bad = bad_ideal;
    out.exceptional = e;
  }
  if (out.locus.is_empty()) throw EmptyLocus("no G-regular point found; supply more representatives");
  return out;
}

// ---------------------------------------------------------------------------
// Specialization and restriction

RationalMap specialize(const RationalAction& action, std::span<const Scalar> g) {
  if (action.is_finite()) throw ArityMismatch("finite groups are specialized by element");
  if (g.size() != action.group().arity() || !action.group().contains(g))
    throw PointNotOnGroup("point is not on the group");
  RationalMap m = RationalMap::unchecked(action.space(), action.space(), specialize_reps(action, g));
  auto g_inv = action.group().invert(g);
  RationalMap inv = RationalMap::unchecked(action.space(), action.space(), specialize_reps(action, g_inv));
  return with_inverse(m, inv);
}

RationalMap specialize(const RationalAction& action, std::size_t element) {
  if (!action.is_finite()) throw ArityMismatch("parametric groups are specialized at points");
  if (element >= action.group().order()) throw PointNotOnGroup("element index out of range");
  return action.element_map(element);
}

RationalAction restrict_to_open(const RationalAction& action, const OpenSubset& u) {
  if (!same_variety(u.host(), action.space().host())) throw VarietyMismatch("open subset of a different variety");
  OpenSubset x = action.space().intersect(u);
  if (x.is_empty()) throw EmptyOpen("restriction to an empty open subset");
  RationalAction a;
  a.group_ = action.group();
  a.space_ = x;
  if (action.is_finite()) {
    for (const auto& m : action.element_maps()) a.per_element_.push_back(RationalMap::unchecked(x, x, m.representatives()));
    for (std::size_t g = 0; g < a.group_.order(); ++g)
      a.per_element_[g].remember_inverse(a.per_element_[a.group_.invert(g)]);
  } else {
    a.rho_ = RationalMap::unchecked(a.product_space(), x, action.parametric().representatives());
  }
  return a;
}

}  // namespace weilreg
