#include "weilreg/regularize.hpp"

namespace weilreg {

namespace {

std::vector<std::string> print_all(const std::vector<Polynomial>& ps, std::span<const std::string> names) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p, names));
  return out;
}

std::string pair_label(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void fail(CheckResult& r, const std::string& what) {
  r.pass = false;
  r.detail += (r.detail.empty() ? "" : "; ") + what;
}

Ideal saturate_by_host(const Ideal& i, const OpenSubset& x, std::size_t offset) {
  if (x.is_whole()) return i;
  std::vector<Polynomial> w;
  for (const auto& q : x.witnesses()) w.push_back(q.shift(i.arity(), offset));
  return saturate(i, Ideal(i.arity(), std::move(w)));
}

std::vector<Polynomial> basis(const Ideal& i) { return i.groebner_basis(MonomialOrder::grevlex()); }

/// Complement of the biregular locus of rho~, translated by g: the ideal of
/// points (g', x) with (g^-1 g', x) exceptional.
Ideal translated(const Ideal& e, const AlgebraicGroup& group, std::span<const Scalar> g) {
  const std::size_t n = group.arity(), total = e.arity();
  auto g_inv = group.invert(g);
  std::vector<Polynomial> pair;
  for (const auto& c : g_inv) pair.push_back(Polynomial::constant(total, c));
  for (std::size_t i = 0; i < n; ++i) pair.push_back(Polynomial::variable(total, i));
  std::vector<Polynomial> images;
  for (const auto& m : group.multiplication()) images.push_back(m.substitute(pair));
  for (std::size_t i = n; i < total; ++i) images.push_back(Polynomial::variable(total, i));
  std::vector<Polynomial> gens;
  for (const auto& f : e.generators()) gens.push_back(f.substitute(images));
  return Ideal(total, std::move(gens));
}

std::string point_label(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace

Atlas build_atlas(const RationalAction& action, const std::vector<std::vector<Scalar>>& points) {
  if (action.is_finite()) throw ArityMismatch("finite atlases are built from element names");
  const AlgebraicGroup& group = action.group();
  Atlas atlas;
  atlas.action = action;
  for (const auto& p : points) atlas.points.push_back(group.point(p));
  if (atlas.points.empty() || atlas.points.front() != group.identity())
    throw PointNotOnGroup("the first atlas point must be the identity");
  for (const auto& p : atlas.points) atlas.labels.push_back(point_label(p));
  const std::size_t m = atlas.points.size();
  atlas.transitions.assign(m, {});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      atlas.transitions[i].push_back(
          specialize(action, group.multiply(group.invert(atlas.points[j]), atlas.points[i])));
  return atlas;
}

Atlas build_atlas(const RationalAction& action, const std::vector<std::size_t>& elements) {
  if (!action.is_finite()) throw ArityMismatch("parametric atlases are built from group points");
  const AlgebraicGroup& group = action.group();
  Atlas atlas;
  atlas.action = action;
  for (std::size_t e : elements) {
    if (e >= group.order()) throw PointNotOnGroup("element index out of range");
    atlas.labels.push_back(group.elements()[e]);
  }
  if (elements.empty() || elements.front() != group.identity_index())
    throw PointNotOnGroup("the first atlas point must be the identity");
  atlas.elements = elements;
  const std::size_t m = elements.size();
  atlas.transitions.assign(m, {});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      atlas.transitions[i].push_back(
          specialize(action, group.multiply(group.invert(elements[j]), elements[i])));
  return atlas;
}

AtlasReport check_atlas(const Atlas& atlas) {
  const auto& tau = atlas.transitions;
  const std::size_t m = tau.size();
  const OpenSubset& x = atlas.action.space();
  const AffineVariety& host = x.host();
  AtlasReport report;

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const RationalMap& t = tau[i][j];
      try {
        // Inverse from the graph, not the cached one.
        RationalMap inv = inverse(RationalMap::unchecked(t.source(), t.target(), t.representatives()));
        if (!maps_equal(inv, tau[j][i])) fail(report.symmetry, "inverse of tau" + pair_label(i, j) + " differs");
      } catch (const NotBirational&) {
        fail(report.symmetry, "tau" + pair_label(i, j) + " not birational");
      }
    }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        try {
          if (!maps_equal(compose(tau[i][j], tau[j][k]), tau[i][k]))
            fail(report.cocycle, "tau" + pair_label(j, k) + " o tau" + pair_label(i, j) + " != tau" + pair_label(i, k));
        } catch (const ZeroDenominator&) {
        } catch (const NotDominant&) {
        }
      }

  const auto xx = product(host, host);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      auto closed = is_graph_closed(tau[i][j], x);
      if (!closed.closed) {
        fail(report.separated, "graph of tau" + pair_label(i, j) + " is not closed");
        if (report.separated.witness.empty() && closed.witness)
          report.separated.witness = print_all(basis(*closed.witness), xx.vars());
      }
    }

  const auto& group = atlas.action.group();
  if (!group.is_finite()) {
    const std::size_t n = group.arity();
    auto [tilde, tilde_inv] = lift_tilde(atlas.action);
    Ideal e = biregular_locus(tilde, tilde_inv).complement();
    const auto names = tilde.source().host().vars();
    std::vector<Polynomial> sum_gens;
    for (const auto& g : atlas.points) {
      Ideal shifted = translated(e, group, g);
      for (const auto& p : basis(saturate_by_host(shifted, x, n))) report.covering_ideal.push_back(to_string(p, names));
      sum_gens.insert(sum_gens.end(), shifted.generators().begin(), shifted.generators().end());
    }
    Ideal rest = saturate_by_host(Ideal(e.arity(), std::move(sum_gens)), x, n);
    if (!is_empty_variety(rest)) {
      fail(report.covering, "translates of the biregular locus do not cover G x X");
      report.covering.witness = print_all(basis(rest), names);
    }
  } else {
    std::vector<Ideal> exceptional;
    for (std::size_t g = 0; g < group.order(); ++g) {
      auto [rho, rho_inv] = lift_tilde(atlas.action, g);
      exceptional.push_back(biregular_locus(rho, rho_inv).complement());
    }
    for (std::size_t h = 0; h < group.order(); ++h) {
      std::vector<Polynomial> gens;
      for (std::size_t gi : atlas.elements) {
        const Ideal& part = exceptional[group.multiply(group.invert(gi), h)];
        gens.insert(gens.end(), part.generators().begin(), part.generators().end());
      }
      Ideal rest = saturate_by_host(Ideal(host.arity(), std::move(gens)), x, 0);
      for (const auto& p : basis(rest)) report.covering_ideal.push_back(group.elements()[h] + ": " + host.print(p));
      if (!is_empty_variety(rest)) {
        fail(report.covering, "fiber over " + group.elements()[h] + " is not covered");
        if (report.covering.witness.empty()) report.covering.witness = print_all(basis(rest), host.vars());
      }
    }
  }
  return report;
}

}  // namespace weilreg
