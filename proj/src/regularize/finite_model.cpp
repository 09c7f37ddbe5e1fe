#include <map>

#include "weilreg/linalg.hpp"
#include "weilreg/regularize.hpp"

namespace weilreg {

namespace {

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return *exact_divide(a * b, gcd(a, b)); }

std::vector<Fraction> orbit(const RationalAction& action, const std::vector<Fraction>& seeds) {
  const AffineVariety& host = action.space().host();
  std::vector<Fraction> out;
  auto add = [&](const Fraction& f) {
    if (f.num.is_constant() && f.den.is_constant()) return;
    for (const auto& g : out)
      if (functions_equal(host, g, f)) return;
    out.push_back(f);
  };
  for (const auto& s : seeds) add(s);
  for (const auto& map : action.element_maps())
    for (const auto& s : seeds) add(substitute(s, map.rep()));
  return out;
}

std::vector<std::string> u_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("u" + std::to_string(j + 1));
  return names;
}

}  // namespace

std::vector<Fraction> stable_generators(const RationalAction& action) {
  if (!action.is_finite()) throw Unsupported("stable generators need a finite group");
  const AffineVariety& host = action.space().host();
  std::vector<Fraction> seeds;
  for (std::size_t i = 0; i < host.arity(); ++i) seeds.push_back(Fraction::of(host.var(i)));
  return orbit(action, seeds);
}

Presentation present_subalgebra(const OpenSubset& x, const std::vector<Fraction>& generators) {
  const AffineVariety& host = x.host();
  const std::size_t n = host.arity(), big = n + generators.size();
  std::vector<std::size_t> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i;

  std::vector<Polynomial> gens;
  for (const auto& g : host.ideal().generators()) gens.push_back(g.shift(big, 0));
  Polynomial den_product = Polynomial::constant(big, 1);
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const Fraction& f = generators[j];
    Polynomial q = f.den.shift(big, 0), p = f.num.shift(big, 0);
    gens.push_back(q * Polynomial::variable(big, n + j) - p);
    if (!q.is_constant()) den_product = lcm(den_product, q);
  }
  Ideal graph(big, std::move(gens));
  if (!den_product.is_constant()) graph = saturate(graph, den_product);
  const Ideal kernel = eliminate(graph, xs);
  std::vector<Polynomial> j_gens;
  for (const auto& g : kernel.groebner_basis(MonomialOrder::grevlex())) j_gens.push_back(g.drop_front(n));
  Ideal j_ideal(generators.size(), std::move(j_gens));
  Presentation out{AffineVariety(u_names(generators.size()), j_ideal, host.irreducible()), {}, {}};

  std::vector<Polynomial> psi;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = Fraction::of(host.var(i));
    std::size_t found = generators.size();
    for (std::size_t j = 0; j < generators.size() && found == generators.size(); ++j)
      if (generators[j] == xi) found = j;
    if (found == generators.size())
      throw RoundTripFailure("generators must include the coordinate " + host.vars()[i]);
    psi.push_back(out.y.var(found));
  }
  OpenSubset y_open(out.y);
  Representative psi_rep;
  for (auto& p : psi) psi_rep.push_back(Fraction::of(std::move(p)));
  out.psi = RationalMap::unchecked(y_open, x, {std::move(psi_rep)});
  out.psi_inverse = RationalMap::unchecked(x, y_open, {generators});
  try {
    if (!maps_equal(compose_unchecked(out.psi_inverse, out.psi), identity_map(x)))
      throw RoundTripFailure("psi o psi^-1 is not the identity of X");
    if (!maps_equal(compose_unchecked(out.psi, out.psi_inverse), identity_map(y_open)))
      throw RoundTripFailure("psi^-1 o psi is not the identity of Y");
  } catch (const ZeroDenominator& e) {
    throw RoundTripFailure(std::string("round trip not defined: ") + e.what());
  }
  out.psi.remember_inverse(out.psi_inverse);
  return out;
}

std::optional<std::vector<Scalar>> express_in_span(const AffineVariety& host, const Fraction& f,
                                                   const std::vector<Fraction>& generators) {
  Polynomial common = f.den;
  for (const auto& g : generators) common = lcm(common, g.den);
  auto cleared = [&](const Fraction& g) { return normal_form(g.num * *exact_divide(common, g.den), host.ideal()); };
  std::vector<Polynomial> columns{normal_form(common, host.ideal())};
  for (const auto& g : generators) columns.push_back(cleared(g));
  Polynomial rhs = cleared(f);

  std::map<Monomial, std::size_t> rows;
  auto row_of = [&](const Monomial& m) { return rows.emplace(m, rows.size()).first->second; };
  for (const auto& c : columns)
    for (const auto& t : c.terms()) row_of(t.mono);
  for (const auto& t : rhs.terms()) row_of(t.mono);
  Matrix a(rows.size(), std::vector<Scalar>(columns.size(), Scalar(0)));
  std::vector<Scalar> b(rows.size(), Scalar(0));
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (const auto& t : columns[k].terms()) a[rows.at(t.mono)][k] = t.coeff;
  for (const auto& t : rhs.terms()) b[rows.at(t.mono)] = t.coeff;
  return solve_linear(std::move(a), std::move(b));
}

std::vector<std::vector<Polynomial>> induced_regular_action(const Presentation& presentation,
                                                            const std::vector<Fraction>& generators,
                                                            const RationalAction& action) {
  const AffineVariety& host = action.space().host();
  const AffineVariety& y = presentation.y;
  const std::size_t big_n = generators.size();
  const auto& group = action.group();
  std::vector<std::vector<Polynomial>> out;

  for (std::size_t g = 0; g < group.order(); ++g) {
    const Representative& rho = action.element_map(g).rep();
    std::vector<Polynomial> coords;
    for (std::size_t j = 0; j < big_n; ++j) {
      Fraction pulled = substitute(generators[j], rho);
      std::optional<Polynomial> coord;
      for (std::size_t k = 0; k < big_n && !coord; ++k)
        if (functions_equal(host, pulled, generators[k])) coord = y.var(k);
      if (!coord) {
        auto combo = express_in_span(host, pulled, generators);
        if (!combo)
          throw NotInSpan("pullback of " + to_string(generators[j], host.vars()) + " along " +
                          group.elements()[g] + " is " + to_string(pulled, host.vars()));
        Polynomial c = Polynomial::constant(big_n, (*combo)[0]);
        for (std::size_t k = 0; k < big_n; ++k) c += y.var(k) * (*combo)[k + 1];
        coord = c;
      }
      coords.push_back(*coord);
    }
    for (const auto& rel : y.ideal().generators()) {
      Polynomial residue = normal_form(rel.substitute(coords), y.ideal());
      if (!residue.is_zero())
        throw RoundTripFailure("endomorphism of " + group.elements()[g] + " does not preserve J (residue " +
                               y.print(residue) + ")");
    }
    out.push_back(std::move(coords));
  }

  for (std::size_t a = 0; a < group.order(); ++a)
    for (std::size_t b = 0; b < group.order(); ++b) {
      // Acting by b then a is acting by a*b.
      const auto& ab = out[group.multiply(a, b)];
      for (std::size_t j = 0; j < big_n; ++j) {
        Polynomial residue = normal_form(out[a][j].substitute(out[b]) - ab[j], y.ideal());
        if (!residue.is_zero())
          throw RoundTripFailure("endomorphisms violate the group table at (" + group.elements()[a] + ", " +
                                 group.elements()[b] + ")");
      }
    }

  OpenSubset y_open(y);
  for (std::size_t g = 0; g < group.order(); ++g) {
    Representative rep;
    for (const auto& c : out[g]) rep.push_back(Fraction::of(c));
    auto on_y = RationalMap::unchecked(y_open, y_open, {std::move(rep)});
    if (!maps_equal(compose_unchecked(on_y, presentation.psi),
                    compose_unchecked(presentation.psi, action.element_map(g))))
      throw RoundTripFailure("psi is not equivariant for " + group.elements()[g]);
  }
  return out;
}

RegularModel regularize_finite(const RationalAction& action) {
  if (!action.is_finite()) throw Unsupported("regularize_finite needs a finite group");
  const OpenSubset& x = action.space();
  const AffineVariety& host = x.host();
  std::vector<Fraction> seeds;
  for (std::size_t i = 0; i < host.arity(); ++i) seeds.push_back(Fraction::of(host.var(i)));
  if (!x.is_whole()) {
    if (x.witnesses().size() != 1)
      throw Unsupported("regular models are built on X or on a principal open subset of X");
    seeds.push_back(Fraction::make(Polynomial::constant(host.arity(), 1), x.witnesses().front()));
  }
  RegularModel model;
  model.generators = orbit(action, seeds);
  model.presentation = present_subalgebra(x, model.generators);
  model.endomorphisms = induced_regular_action(model.presentation, model.generators, action);
  return model;
}

}  // namespace weilreg
