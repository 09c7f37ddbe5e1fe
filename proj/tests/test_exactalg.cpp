#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "oracles.hpp"
#include "property_suite.hpp"
#include "weilreg/exactalg.hpp"

using namespace weilreg;
using weilreg::testing::P;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Ideal ideal_of(const std::vector<std::string>& gens, const std::vector<std::string>& names) {
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(P(s, names));
  return Ideal(names.size(), std::move(g));
}

}  // namespace

TEST_CASE("scalars stay canonical") {
  Scalar a = make_scalar(6, -4);
  CHECK(a.get_num() == -3);
  CHECK(a.get_den() == 2);
  CHECK(to_string(make_scalar(0, 5)) == "0");
  CHECK(make_scalar(0, 7).get_den() == 1);
}

TEST_CASE("polynomial arithmetic and printing") {
  Polynomial x = P("x", kXY), y = P("y", kXY);
  Polynomial f = (x + y) * (x - y);
  CHECK(to_string(f, kXY) == "x^2-y^2");
  CHECK(to_string(P("3/2*x*y - 1/2", kXY), kXY) == "3/2*x*y-1/2");
  CHECK(to_string(P("-(x+1)^2", kXY), kXY) == "-x^2-2*x-1");
  CHECK(P("x*y - y*x", kXY).is_zero());
  CHECK(exact_divide(f, x - y).value() == x + y);
  CHECK_FALSE(exact_divide(f, x + Polynomial::constant(2, Scalar(1))).has_value());
  CHECK_THROWS_AS(P("x + z", kXY), ParseError);
  CHECK_THROWS_AS(P("x + (y", kXY), ParseError);
}

TEST_CASE("substitution, evaluation, embedding") {
  Polynomial f = P("x^2*y + 3", kXY);
  std::vector<Scalar> pt{Scalar(2), Scalar(-1)};
  CHECK(f.evaluate(pt) == Scalar(-1));
  std::vector<Polynomial> images{P("x+y", kXY), P("x", kXY)};
  CHECK(f.substitute(images) == P("(x+y)^2*x + 3", kXY));
  std::vector<std::size_t> map{2, 0};
  std::vector<std::string> three{"a", "b", "c"};
  CHECK(f.embed(3, map) == P("c^2*a + 3", three));
  CHECK(f.derivative(0) == P("2*x*y", kXY));
}

TEST_CASE("gcd") {
  Polynomial a = P("(x+y)*(x-1)^2*y", kXY), b = P("(x-1)*(x+2*y)*y^2", kXY);
  CHECK(gcd(a, b) == P("(x-1)*y", kXY));
  CHECK(gcd(P("x+1", kXY), P("y", kXY)) == P("1", kXY));
  CHECK(gcd(P("2*x^2+2*x", kXY), P("0", kXY)) == P("x^2+x", kXY));
}

TEST_CASE("normal_form examples") {
  const std::vector<std::string> X{"x"};
  CHECK(normal_form(P("x^2-1", X), ideal_of({"x-1"}, X), MonomialOrder::lex()).is_zero());
  CHECK(normal_form(P("x", X), Ideal(1), MonomialOrder::lex()) == P("x", X));
  CHECK(normal_form(P("x*y", kXY), ideal_of({"x*y-1"}, kXY), MonomialOrder::grevlex()) == P("1", kXY));
  CHECK_THROWS_AS(normal_form(P("x", X), ideal_of({"x*y"}, kXY)), ArityMismatch);
}

TEST_CASE("groebner_basis examples") {
  auto gb = groebner_basis(ideal_of({"x-1", "y-x"}, kXY), MonomialOrder::lex());
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == P("x-1", kXY));
  CHECK(gb[1] == P("y-1", kXY));

  auto principal = groebner_basis(ideal_of({"3*x^2*y - 6*y"}, kXY), MonomialOrder::grevlex());
  REQUIRE(principal.size() == 1);
  CHECK(principal[0] == P("x^2*y - 2*y", kXY));

  const std::vector<std::string> names{"x", "y", "u1", "u2", "u3", "u4"};
  Ideal graph = ideal_of({"u1-x", "u2-y", "x*u3-1", "y*u4-1"}, names);
  auto block = groebner_basis(graph, MonomialOrder::block({true, true, false, false, false, false}));
  CHECK(weilreg::testing::satisfies_buchberger_criterion(block, MonomialOrder::block({true, true, false, false, false, false})));
  std::vector<Polynomial> u_only;
  for (const auto& g : block)
    if (!g.uses_var(0) && !g.uses_var(1)) u_only.push_back(g);
  Ideal expected = ideal_of({"u1*u3-1", "u2*u4-1"}, names);
  CHECK(ideals_equal(Ideal(6, u_only), expected));
}

TEST_CASE("budget exceeded is a distinct error") {
  const std::vector<std::string> names{"x", "y", "z"};
  Ideal hard = ideal_of({"x^3 - y*z + 1", "y^3 - x*z^2 - 2", "z^3 - x^2*y + 3"}, names);
  ScopedGroebnerBudget budget(2);
  CHECK_THROWS_AS(groebner_basis(hard, MonomialOrder::lex()), BudgetExceeded);
}

TEST_CASE("eliminate examples") {
  const std::vector<std::string> torus{"x", "y", "x'", "y'"};
  Ideal graph = ideal_of({"x*x'-1", "y*y'-1"}, torus);
  CHECK(eliminate(graph, {0, 1}).generators().empty());

  const std::vector<std::string> names{"x", "y", "u1", "u2", "u3", "u4"};
  Ideal e = eliminate(ideal_of({"u1-x", "u2-y", "x*u3-1", "y*u4-1"}, names), {0, 1});
  CHECK(ideals_equal(e, ideal_of({"u1*u3-1", "u2*u4-1"}, names)));
  for (const auto& g : e.generators()) CHECK_FALSE(g.uses_any({true, true}));

  Ideal diag = ideal_of({"x-y"}, kXY);
  CHECK(ideals_equal(eliminate(diag, {}), diag));
}

TEST_CASE("saturate examples") {
  CHECK(ideals_equal(saturate(ideal_of({"x*y"}, kXY), P("x", kXY)), ideal_of({"y"}, kXY)));
  CHECK(ideals_equal(saturate(ideal_of({"x"}, kXY), P("y", kXY)), ideal_of({"x"}, kXY)));
  CHECK(is_empty_variety(saturate(ideal_of({"x^2"}, kXY), P("x", kXY))));
  CHECK(ideals_equal(saturate(ideal_of({"x*y", "x*z"}, {"x", "y", "z"}), ideal_of({"y", "z"}, {"x", "y", "z"})),
                     ideal_of({"x"}, {"x", "y", "z"})));
}

TEST_CASE("is_empty_variety examples") {
  const std::vector<std::string> us{"u", "s"};
  CHECK(is_empty_variety(ideal_of({"u+s", "u+s-1"}, us)));
  CHECK_FALSE(is_empty_variety(ideal_of({"x-1"}, {"x"})));
  CHECK(is_empty_variety(ideal_of({"x^2", "x-1"}, {"x"})));
}

TEST_CASE("coefficients_wrt examples") {
  const std::vector<std::string> us{"u", "s"};
  auto c1 = coefficients_wrt(P("u^2 + u*s", us), {1});
  REQUIRE(c1.size() == 2);
  CHECK(std::count(c1.begin(), c1.end(), P("u^2", us)) == 1);
  CHECK(std::count(c1.begin(), c1.end(), P("u", us)) == 1);

  CHECK(coefficients_wrt(P("x", {"x"}), {0}) == std::vector<Polynomial>{P("1", {"x"})});

  const std::vector<std::string> stuv{"s", "t", "u", "v"};
  auto c3 = coefficients_wrt(P("s^2*t + s*u + v", stuv), {0});
  CHECK(c3 == std::vector<Polynomial>{P("t", stuv), P("u", stuv), P("v", stuv)});
}

TEST_CASE("radical membership and intersection") {
  Ideal sq = ideal_of({"x^2"}, kXY);
  CHECK_FALSE(contains(sq, P("x", kXY)));
  CHECK(radical_contains(sq, P("x", kXY)));
  Ideal i = intersect(ideal_of({"x"}, kXY), ideal_of({"y"}, kXY));
  CHECK(ideals_equal(i, ideal_of({"x*y"}, kXY)));
}

TEST_CASE("basis cache is shared and deterministic") {
  Ideal a = ideal_of({"x^2-y", "x*y-1"}, kXY);
  Ideal copy = a;
  const auto& first = a.groebner_basis(MonomialOrder::lex());
  const auto& second = copy.groebner_basis(MonomialOrder::lex());
  CHECK(&first == &second);
  Ideal fresh = ideal_of({"x*y-1", "x^2-y"}, kXY);
  CHECK(fresh.groebner_basis(MonomialOrder::lex()) == first);
}

TEST_CASE("groebner property suite" * doctest::timeout(300)) {
  const auto start = std::chrono::steady_clock::now();
  auto counts = weilreg::testing::groebner_property_suite(20240611);
  CHECK(counts.failure == "");
  CHECK(counts.bases == 1000);
  CHECK(counts.eliminations == 100);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("property suite seconds: " << elapsed);
  CHECK(elapsed < 300.0);
}
