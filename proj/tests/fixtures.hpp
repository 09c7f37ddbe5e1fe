#pragma once

// Shared fixtures: the Cremona involution, the blown-up translation, and a
// few regular actions, plus the sampled pointwise invariant checks.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "weilreg/groups.hpp"

namespace weilreg::fixtures {

inline AffineVariety plane(std::vector<std::string> vars) { return AffineVariety::affine_space(std::move(vars)); }

inline AlgebraicGroup z2() { return AlgebraicGroup::finite({"e", "sigma"}, {{0, 1}, {1, 0}}); }

inline RationalAction finite_involution(const std::string& rep) {
  auto a2 = plane({"x", "y"});
  OpenSubset x(a2);
  std::vector<RationalMap> maps{identity_map(x), make_rational_map(a2, a2, {parse_representative(a2, rep)})};
  return make_rational_action(z2(), x, std::move(maps));
}

inline RationalAction cremona_action() { return finite_involution("(1/x, 1/y)"); }
inline RationalAction swap_action() { return finite_involution("(y, x)"); }
inline RationalAction sigma2_action() { return finite_involution("(1/x, y)"); }

inline RationalAction ga_action(const std::vector<std::string>& xvars, const std::string& rep) {
  auto g = AlgebraicGroup::additive("s");
  auto x = plane(xvars);
  auto gx = product(g.variety(), x);
  return make_rational_action(g, OpenSubset(x), {parse_representative(gx, rep)});
}

inline RationalAction blowup_action() { return ga_action({"u", "t"}, "(u+s, u*t/(u+s))"); }
inline RationalAction translation_action() { return ga_action({"x", "y"}, "(x+s, y)"); }

/// G_m scaling on A^1 written with a removable factor (x+1).
inline RationalAction inflated_scaling_action() {
  auto g = AlgebraicGroup::multiplicative("z", "w");
  auto x = plane({"x"});
  auto gx = product(g.variety(), x);
  Representative rep{parse_fraction("(z*x*(x+1))/(x+1)", gx.vars(), false)};
  return make_rational_action(g, OpenSubset(x), {rep});
}

inline Scalar random_rational(std::mt19937& rng, int span = 6, int max_den = 3) {
  std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
  return make_scalar(num(rng), den(rng));
}

struct InvariantCounts {
  int stability = 0;    // g.x stays in X_reg
  int translation = 0;  // (hg, x) stays in Breg(rho~)
  int def_bireg = 0;    // defined implies biregular after restriction
  std::vector<std::string> failures;
};

/// Samples (g, x) until each of the three checks has seen `target` points
/// satisfying its hypotheses (or the attempt cap is reached).
inline InvariantCounts run_pointwise_invariants(const RationalAction& action, int target, unsigned seed) {
  std::mt19937 rng(seed);
  InvariantCounts out;
  const std::size_t k = action.space().host().arity();
  auto random_x = [&] {
    std::vector<Scalar> x;
    for (std::size_t i = 0; i < k; ++i) x.push_back(random_rational(rng));
    return x;
  };
  GRegularLocus reg = g_regular_locus(action);
  RationalAction restricted = restrict_to_open(action, reg.locus);

  if (action.is_finite()) {
    const auto& g = action.group();
    std::vector<OpenSubset> breg, breg_restricted;
    std::vector<RationalMap> restricted_maps;
    for (std::size_t e = 0; e < g.order(); ++e) {
      auto [m, inv] = lift_tilde(action, e);
      breg.push_back(biregular_locus(m, inv));
      restricted_maps.push_back(specialize(restricted, e));
      breg_restricted.push_back(biregular_locus(restricted_maps.back()));
    }
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int attempt = 0; attempt < 200 * target; ++attempt) {
      if (out.stability >= target && out.translation >= target && out.def_bireg >= target) break;
      std::size_t ge = pick(rng), he = pick(rng);
      auto x = random_x();
      if (breg[ge].contains_point(x)) {
        auto gx = point_status(action.element_map(ge), x);
        if (gx.kind != PointStatusKind::Defined) {
          out.failures.push_back("biregular point not defined");
          continue;
        }
        if (reg.locus.contains_point(x) && out.stability < target) {
          ++out.stability;
          if (!reg.locus.contains_point(gx.value)) out.failures.push_back("g.x left X_reg");
        }
        if (breg[he].contains_point(gx.value) && out.translation < target) {
          ++out.translation;
          if (!breg[g.multiply(he, ge)].contains_point(x)) out.failures.push_back("(hg,x) not biregular");
        }
      }
      if (restricted.space().contains_point(x) && out.def_bireg < target) {
        if (point_status(restricted_maps[ge], x).kind == PointStatusKind::Defined) {
          ++out.def_bireg;
          if (!breg_restricted[ge].contains_point(x)) out.failures.push_back("defined but not biregular");
        }
      }
    }
    return out;
  }

  const auto& grp = action.group();
  auto [tilde, tilde_inv] = lift_tilde(action);
  OpenSubset breg = biregular_locus(tilde, tilde_inv);
  // A small pool of group elements with their specializations cached.
  std::vector<std::vector<Scalar>> pool;
  for (int v : {1, -1, 2, -2, 3, 5, -4}) {
    std::vector<Scalar> raw{Scalar(v)};
    pool.push_back(grp.point(raw));
  }
  std::map<std::size_t, OpenSubset> breg_h, breg_restricted;
  std::map<std::size_t, RationalMap> restricted_maps;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto joint = [](const std::vector<Scalar>& g, const std::vector<Scalar>& x) {
    std::vector<Scalar> p = g;
    p.insert(p.end(), x.begin(), x.end());
    return p;
  };
  for (int attempt = 0; attempt < 200 * target; ++attempt) {
    if (out.stability >= target && out.translation >= target && out.def_bireg >= target) break;
    std::size_t gi = pick(rng), hi = pick(rng);
    const auto &g = pool[gi], &h = pool[hi];
    auto x = random_x();
    auto gx_point = joint(g, x);
    if (breg.contains_point(gx_point)) {
      auto st = point_status(action.parametric(), gx_point);
      if (st.kind != PointStatusKind::Defined) {
        out.failures.push_back("biregular point not defined");
        continue;
      }
      if (reg.locus.contains_point(x) && out.stability < target) {
        ++out.stability;
        if (!reg.locus.contains_point(st.value)) out.failures.push_back("g.x left X_reg");
      }
      if (!breg_h.count(hi)) breg_h.emplace(hi, biregular_locus(specialize(action, h)));
      if (breg_h.at(hi).contains_point(st.value) && out.translation < target) {
        ++out.translation;
        if (!breg.contains_point(joint(grp.multiply(h, g), x))) out.failures.push_back("(hg,x) not biregular");
      }
    }
    if (restricted.space().contains_point(x) && out.def_bireg < target) {
      if (!restricted_maps.count(gi)) {
        restricted_maps.emplace(gi, specialize(restricted, g));
        breg_restricted.emplace(gi, biregular_locus(restricted_maps.at(gi)));
      }
      if (point_status(restricted_maps.at(gi), x).kind == PointStatusKind::Defined) {
        ++out.def_bireg;
        if (!breg_restricted.at(gi).contains_point(x)) out.failures.push_back("defined but not biregular");
      }
    }
  }
  return out;
}

}  // namespace weilreg::fixtures
