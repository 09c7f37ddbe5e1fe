#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace weilreg;
using namespace weilreg::fixtures;
using weilreg::testing::P;

namespace {

Ideal ideal_of(const std::vector<std::string>& gens, const std::vector<std::string>& names) {
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(P(s, names));
  return Ideal(names.size(), std::move(g));
}

std::vector<Scalar> pt(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

}  // namespace

TEST_CASE("group construction") {
  auto ga = AlgebraicGroup::additive("s");
  CHECK(ga.multiply(pt({2}), pt({3})) == pt({5}));
  auto gm = AlgebraicGroup::multiplicative("z", "w");
  CHECK(gm.point(pt({2})) == std::vector<Scalar>{Scalar(2), make_scalar(1, 2)});
  CHECK(gm.invert(gm.point(pt({2}))) == std::vector<Scalar>{make_scalar(1, 2), Scalar(2)});
  CHECK_THROWS_AS(gm.point(pt({0})), PointNotOnGroup);
  auto g = z2();
  CHECK(g.identity_index() == 0);
  CHECK(g.invert(1) == 1);
  CHECK_THROWS_AS(AlgebraicGroup::finite({"e", "a"}, {{0, 1}, {1, 1}}), AxiomFailure);
  CHECK_THROWS_AS(AlgebraicGroup::finite({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 0}, {2, 2, 0}}), AxiomFailure);

  auto a1 = AffineVariety::affine_space({"s"});
  std::vector<std::string> ss{"s", "s'"};
  CHECK_THROWS_AS(AlgebraicGroup::custom(a1, {P("s+s'+1", ss)}, {P("-s", {"s"})}, {Scalar(0)}), AxiomFailure);
  CHECK_NOTHROW(AlgebraicGroup::custom(a1, {P("s+s'+1", ss)}, {P("-s-2", {"s"})}, {Scalar(-1)}));

  auto torus2 = AlgebraicGroup::product(gm, AlgebraicGroup::multiplicative("z", "w"));
  CHECK(torus2.arity() == 4);
  CHECK(torus2.point(pt({2, 3})).size() == 4);
  auto k4 = AlgebraicGroup::product(g, g);
  CHECK(k4.order() == 4);
}

TEST_CASE("make_rational_action examples") {
  CHECK_NOTHROW(blowup_action());
  CHECK_NOTHROW(cremona_action());
  CHECK_NOTHROW(translation_action());
  try {
    ga_action({"u", "t"}, "(u+s, u*t/(u+2*s))");
    FAIL("mutated action accepted");
  } catch (const NotAnAction& e) {
    std::string msg = e.what();
    CHECK(msg.find("homomorphism") != std::string::npos);
    CHECK(msg.find("residue") != std::string::npos);
    CHECK(msg.find("residue 0") == std::string::npos);
  }
  CHECK_THROWS_AS(ga_action({"x", "y"}, "(x+s+1, y)"), NotAnAction);
  CHECK_THROWS_AS(finite_involution("(1/x, y+1)"), NotAnAction);
}

TEST_CASE("lift_tilde examples") {
  auto blow = blowup_action();
  auto [tilde, inv] = lift_tilde(blow);
  const auto& gx = tilde.source().host();
  auto expect = [&](const std::string& rep) { return make_rational_map(gx, gx, {parse_representative(gx, rep)}); };
  CHECK(maps_equal(tilde, expect("(s, u+s, u*t/(u+s))")));
  CHECK(maps_equal(inv, expect("(s, u-s, u*t/(u-s))")));
  CHECK(maps_equal(compose(tilde, inv), identity_map(tilde.source())));
  auto [tr, tr_inv] = lift_tilde(translation_action());
  CHECK(tr_inv.print() == "(s, -s+x, y)");
  auto cremona = cremona_action();
  auto [sig, sig_inv] = lift_tilde(cremona, 1);
  CHECK(maps_equal(sig, sig_inv));
}

TEST_CASE("g_regular_locus examples") {
  const std::vector<std::string> ut{"u", "t"}, xy{"x", "y"};
  auto blow = g_regular_locus(blowup_action());
  CHECK(radicals_equal(blow.locus.complement(), ideal_of({"u"}, ut)));
  REQUIRE(blow.exceptional.has_value());
  CHECK(radicals_equal(*blow.exceptional, ideal_of({"u*(u+s)"}, {"s", "u", "t"})));
  auto crem = g_regular_locus(cremona_action());
  CHECK(ideals_equal(crem.locus.complement(), ideal_of({"x*y"}, xy)));
  CHECK(g_regular_locus(translation_action()).locus.is_whole());
}

TEST_CASE("specialize examples") {
  auto blow = blowup_action();
  CHECK(specialize(blow, pt({1})).print() == "(u+1, u*t/(u+1))");
  CHECK(maps_equal(specialize(blow, pt({0})), identity_map(blow.space())));
  CHECK(specialize(translation_action(), pt({3})).print() == "(x+3, y)");
  CHECK(specialize(blow, pt({1})).cached_inverse()->print() == "(u-1, u*t/(u-1))");
  auto gm_action = inflated_scaling_action();
  CHECK_THROWS_AS(specialize(gm_action, pt({1, 2})), PointNotOnGroup);
}

TEST_CASE("restrict_to_open examples") {
  auto crem = cremona_action();
  auto a2 = crem.space().host();
  OpenSubset torus(a2, {P("x*y", {"x", "y"})});
  auto on_torus = restrict_to_open(crem, torus);
  auto sigma = specialize(on_torus, 1);
  CHECK(ideals_equal(biregular_locus(sigma).complement(), torus.complement()));
  CHECK(ideals_equal(g_regular_locus(on_torus).locus.complement(), torus.complement()));

  auto blow = blowup_action();
  OpenSubset u_nonzero(blow.space().host(), {P("u", {"u", "t"})});
  auto restricted = restrict_to_open(blow, u_nonzero);
  auto reg = g_regular_locus(restricted);
  CHECK(is_empty_variety(reg.bad));
  CHECK(ideals_equal(reg.locus.complement(), u_nonzero.complement()));

  auto same = restrict_to_open(blow, blow.space());
  CHECK(same.space().is_whole());
  CHECK(maps_equal(same.parametric(), blow.parametric()));
  auto line = AffineVariety::affine_space({"u", "t"});
  CHECK_THROWS_AS(restrict_to_open(blow, OpenSubset(line, {P("0", {"u", "t"})})), EmptyOpen);
}

TEST_CASE("pointwise invariant suite" * doctest::timeout(300)) {
  struct Named {
    const char* name;
    RationalAction action;
  };
  std::vector<Named> all{{"blow-up", blowup_action()},
                         {"cremona", cremona_action()},
                         {"translation", translation_action()},
                         {"sigma2", sigma2_action()}};
  unsigned seed = 7;
  for (const auto& [name, action] : all) {
    auto counts = run_pointwise_invariants(action, 200, seed++);
    INFO(name);
    CHECK(counts.failures.empty());
    CHECK(counts.stability >= 200);
    CHECK(counts.translation >= 200);
    CHECK(counts.def_bireg >= 200);
  }
}
