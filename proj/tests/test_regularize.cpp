#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "weilreg/regularize.hpp"

using namespace weilreg;
using namespace weilreg::fixtures;
using weilreg::testing::P;

namespace {

std::vector<std::string> printed(const std::vector<Fraction>& fs, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(to_string(f, names));
  return out;
}

Ideal ideal_of(const std::vector<std::string>& gens, const std::vector<std::string>& names) {
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(P(s, names));
  return Ideal(names.size(), std::move(g));
}

std::vector<std::string> u(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

std::vector<Polynomial> tuple(const std::vector<std::string>& coords, const std::vector<std::string>& names) {
  std::vector<Polynomial> out;
  for (const auto& c : coords) out.push_back(P(c, names));
  return out;
}

std::vector<Scalar> pt(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

const std::vector<std::string> xy{"x", "y"};

}  // namespace

TEST_CASE("stable_generators examples") {
  CHECK(printed(stable_generators(cremona_action()), xy) == std::vector<std::string>{"x", "y", "1/x", "1/y"});
  CHECK(printed(stable_generators(swap_action()), xy) == std::vector<std::string>{"x", "y"});
  CHECK(printed(stable_generators(sigma2_action()), xy) == std::vector<std::string>{"x", "y", "1/x"});
}

TEST_CASE("present_subalgebra examples") {
  auto crem = cremona_action();
  auto p = present_subalgebra(crem.space(), stable_generators(crem));
  CHECK(ideals_equal(p.y.ideal(), ideal_of({"u1*u3-1", "u2*u4-1"}, u(4))));
  CHECK(p.psi.print() == "(u1, u2)");
  CHECK(p.psi_inverse.print() == "(x, y, 1/x, 1/y)");

  auto swap = swap_action();
  auto q = present_subalgebra(swap.space(), stable_generators(swap));
  CHECK(q.y.ideal().generators().empty());
  CHECK(q.psi.print() == "(u1, u2)");

  auto s2 = sigma2_action();
  auto r = present_subalgebra(s2.space(), stable_generators(s2));
  CHECK(ideals_equal(r.y.ideal(), ideal_of({"u1*u3-1"}, u(3))));

  // Generators without the coordinates cannot present O(X).
  OpenSubset a2(plane(xy));
  CHECK_THROWS_AS(present_subalgebra(a2, {Fraction::of(P("x", xy))}), RoundTripFailure);
}

TEST_CASE("induced_regular_action examples") {
  auto crem = cremona_action();
  auto gens = stable_generators(crem);
  auto p = present_subalgebra(crem.space(), gens);
  auto act = induced_regular_action(p, gens, crem);
  REQUIRE(act.size() == 2);
  CHECK(act[0] == tuple({"u1", "u2", "u3", "u4"}, u(4)));
  CHECK(act[1] == tuple({"u3", "u4", "u1", "u2"}, u(4)));

  auto swap = swap_action();
  auto sg = stable_generators(swap);
  CHECK(induced_regular_action(present_subalgebra(swap.space(), sg), sg, swap)[1] == tuple({"u2", "u1"}, u(2)));

  auto s2 = sigma2_action();
  auto g2 = stable_generators(s2);
  CHECK(induced_regular_action(present_subalgebra(s2.space(), g2), g2, s2)[1] == tuple({"u3", "u2", "u1"}, u(3)));

  // Too few generators: the pullback 1/x of x leaves the span.
  OpenSubset a2(plane(xy));
  std::vector<Fraction> short_list{Fraction::of(P("x", xy)), Fraction::of(P("y", xy))};
  auto pres = present_subalgebra(a2, short_list);
  CHECK_THROWS_AS(induced_regular_action(pres, short_list, crem), NotInSpan);
}

TEST_CASE("express_in_span solves linear relations") {
  auto a2 = plane(xy);
  std::vector<Fraction> gens{Fraction::of(P("x", xy)), Fraction::make(P("1", xy), P("x", xy))};
  auto combo = express_in_span(a2, Fraction::make(P("2*x^2+3", xy), P("x", xy)), gens);
  REQUIRE(combo.has_value());
  CHECK(*combo == std::vector<Scalar>{Scalar(0), Scalar(2), Scalar(3)});
  CHECK_FALSE(express_in_span(a2, Fraction::of(P("x^2", xy)), gens).has_value());
}

TEST_CASE("regularize_finite examples") {
  auto model = regularize_finite(cremona_action());
  CHECK(ideals_equal(model.presentation.y.ideal(), ideal_of({"u1*u3-1", "u2*u4-1"}, u(4))));
  CHECK(model.endomorphisms[1] == tuple({"u3", "u4", "u1", "u2"}, u(4)));
  CHECK(maps_equal(compose_unchecked(model.presentation.psi_inverse, model.presentation.psi),
                   identity_map(cremona_action().space())));

  // Already regular: psi is an isomorphism, its inverse polynomial.
  auto swap = regularize_finite(swap_action());
  for (const auto& f : swap.presentation.psi_inverse.rep()) CHECK(f.is_polynomial());
  CHECK(swap.presentation.y.ideal().generators().empty());

  auto s2 = regularize_finite(sigma2_action());
  CHECK(ideals_equal(s2.presentation.y.ideal(), ideal_of({"u1*u3-1"}, u(3))));

  // On the torus the generator 1/(x*y) joins the orbit.
  auto crem = cremona_action();
  auto torus = restrict_to_open(crem, OpenSubset(crem.space().host(), {P("x*y", xy)}));
  auto t = regularize_finite(torus);
  CHECK(printed(t.generators, xy) == std::vector<std::string>{"x", "y", "1/(x*y)", "1/x", "1/y", "x*y"});
  auto two = restrict_to_open(crem, OpenSubset(crem.space().host(), {P("x", xy), P("y", xy)}));
  CHECK_THROWS_AS(regularize_finite(two), Unsupported);
  CHECK_THROWS_AS(regularize_finite(blowup_action()), Unsupported);
}

TEST_CASE("regular model invariants hold on every fixture") {
  for (const auto& action : {cremona_action(), swap_action(), sigma2_action()}) {
    auto model = regularize_finite(action);
    const auto& y = model.presentation.y;
    const auto& grp = action.group();
    for (std::size_t g = 0; g < grp.order(); ++g) {
      for (const auto& rel : y.ideal().generators())
        CHECK(normal_form(rel.substitute(model.endomorphisms[g]), y.ideal()).is_zero());
      // Pointwise equivariance at sampled points of Y coming from X.
      for (long a : {2, 3, -5})
        for (long b : {7, -1}) {
          std::vector<Scalar> x{Scalar(a), Scalar(b)};
          auto y_pt = point_status(model.presentation.psi_inverse, x);
          REQUIRE(y_pt.kind == PointStatusKind::Defined);
          CHECK(y.contains_point(y_pt.value));
          std::vector<Scalar> moved;
          for (const auto& c : model.endomorphisms[g]) moved.push_back(c.evaluate(y_pt.value));
          auto lhs = point_status(model.presentation.psi, moved);
          auto rhs = point_status(action.element_map(g), x);
          REQUIRE(rhs.kind == PointStatusKind::Defined);
          CHECK(lhs.value == rhs.value);
        }
    }
  }
}

TEST_CASE("build_atlas examples") {
  auto blow = blowup_action();
  auto u_ne_0 = restrict_to_open(blow, OpenSubset(blow.space().host(), {P("u", {"u", "t"})}));
  auto atlas = build_atlas(u_ne_0, {pt({0}), pt({1})});
  CHECK(atlas.transitions[0][1].print() == "(u-1, u*t/(u-1))");
  CHECK(atlas.transitions[1][0].print() == "(u+1, u*t/(u+1))");
  CHECK(maps_equal(atlas.transitions[0][0], identity_map(u_ne_0.space())));
  CHECK_THROWS_AS(build_atlas(u_ne_0, {pt({1}), pt({0})}), PointNotOnGroup);

  auto single = build_atlas(blow, {pt({0})});
  CHECK(single.transitions.size() == 1);
  CHECK(maps_equal(single.transitions[0][0], identity_map(blow.space())));

  auto crem = cremona_action();
  auto torus = restrict_to_open(crem, OpenSubset(crem.space().host(), {P("x*y", xy)}));
  auto fin = build_atlas(torus, std::vector<std::size_t>{0, 1});
  CHECK(fin.transitions[0][1].print() == "(1/x, 1/y)");
  CHECK(fin.transitions[1][0].print() == "(1/x, 1/y)");
}

TEST_CASE("check_atlas examples") {
  auto blow = blowup_action();
  const std::vector<std::string> sut{"s", "u", "t"};
  auto u_ne_0 = restrict_to_open(blow, OpenSubset(blow.space().host(), {P("u", {"u", "t"})}));
  auto good = check_atlas(build_atlas(u_ne_0, {pt({0}), pt({1})}));
  CHECK(good.symmetry.pass);
  CHECK(good.cocycle.pass);
  CHECK(good.separated.pass);
  CHECK(good.covering.pass);
  std::vector<Polynomial> cover;
  for (const auto& g : good.covering_ideal) cover.push_back(P(g, sut));
  CHECK(ideals_equal(Ideal(3, cover), ideal_of({"u+s", "u+s-1"}, sut)));
  CHECK(is_empty_variety(Ideal(3, cover)));

  auto bad = check_atlas(build_atlas(blow, {pt({0}), pt({1})}));
  CHECK(bad.symmetry.pass);
  CHECK_FALSE(bad.separated.pass);
  REQUIRE_FALSE(bad.separated.witness.empty());
  // The witness lies over u = 1 (tau01 = rho_-1) or u = -1 (tau10 = rho_1), t = 0.
  const std::vector<std::string> names{"u", "t", "u'", "t'"};
  std::vector<Polynomial> w;
  for (const auto& g : bad.separated.witness) w.push_back(P(g, names));
  Ideal wi(4, w);
  CHECK(radical_contains(wi, P("t", names)));
  CHECK((radical_contains(wi, P("u-1", names)) || radical_contains(wi, P("u+1", names))));

  // One chart: covering holds iff the action is regular on X.
  auto trivial = check_atlas(build_atlas(blow, {pt({0})}));
  CHECK(trivial.symmetry.pass);
  CHECK(trivial.cocycle.pass);
  CHECK(trivial.separated.pass);
  CHECK_FALSE(trivial.covering.pass);
  CHECK(check_atlas(build_atlas(translation_action(), {pt({0})})).all_pass());

  auto crem = cremona_action();
  auto torus = restrict_to_open(crem, OpenSubset(crem.space().host(), {P("x*y", xy)}));
  CHECK(check_atlas(build_atlas(torus, std::vector<std::size_t>{0, 1})).all_pass());
  auto crem_full = check_atlas(build_atlas(crem, std::vector<std::size_t>{0, 1}));
  CHECK(crem_full.covering.pass);
  CHECK(crem_full.separated.pass);
}

TEST_CASE("atlas gluing is transitive on sampled points") {
  auto blow = blowup_action();
  auto u_ne_0 = restrict_to_open(blow, OpenSubset(blow.space().host(), {P("u", {"u", "t"})}));
  auto atlas = build_atlas(u_ne_0, {pt({0}), pt({1}), pt({-3})});
  const auto& tau = atlas.transitions;
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Scalar> x{random_rational(rng), random_rational(rng)};
    if (!u_ne_0.space().contains_point(x)) continue;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          auto xj = point_status(tau[i][j], x);
          if (xj.kind != PointStatusKind::Defined) continue;
          auto xk = point_status(tau[j][k], xj.value);
          if (xk.kind != PointStatusKind::Defined) continue;
          auto direct = point_status(tau[i][k], x);
          REQUIRE(direct.kind == PointStatusKind::Defined);
          CHECK(direct.value == xk.value);
          ++checked;
        }
  }
  CHECK(checked > 200);
  // tau_{0i} agrees with rho at g_i^-1, i.e. chart 0 is identified with chart i by g_i.
  for (std::size_t i = 0; i < 3; ++i) {
    auto g_inv = u_ne_0.group().invert(atlas.points[i]);
    CHECK(maps_equal(tau[0][i], specialize(u_ne_0, g_inv)));
  }
}
