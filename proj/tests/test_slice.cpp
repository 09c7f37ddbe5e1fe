#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "weilreg/slice.hpp"

using namespace weilreg;
using namespace weilreg::fixtures;
using weilreg::testing::P;

namespace {

const std::vector<std::string> ay{"a", "y"};

AffineVariety line(const std::string& v) { return AffineVariety::affine_space({v}); }

Fraction raw(const std::string& text, const std::vector<std::string>& names) {
  return parse_fraction(text, names, false);
}

std::vector<std::string> printed(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p, names));
  return out;
}

std::vector<std::vector<Scalar>> ints(std::initializer_list<long> xs) {
  std::vector<std::vector<Scalar>> out;
  for (long x : xs) out.push_back({Scalar(x)});
  return out;
}

/// Leibniz expansion, independent of elimination.
Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Scalar term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// f^k F - sum h_i f_i vanishes at sampled points where den(F) != 0.
bool tensor_identity_holds(const SliceDecomposition& d, const Fraction& big_f, std::mt19937& rng) {
  const std::size_t nx = d.x.arity();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Scalar> pt;
    for (std::size_t i = 0; i < big_f.num.arity(); ++i) pt.push_back(random_rational(rng));
    Scalar den = big_f.den.evaluate(pt);
    if (sgn(den) == 0) continue;
    std::vector<Scalar> xp(pt.begin(), pt.begin() + nx), yp(pt.begin() + nx, pt.end());
    Scalar fk = 1;
    for (unsigned i = 0; i < d.k; ++i) fk *= d.f.evaluate(yp);
    Scalar lhs = fk * big_f.num.evaluate(pt) / den, rhs = 0;
    for (std::size_t i = 0; i < d.h.size(); ++i) rhs += d.h[i].evaluate(xp) * d.fy[i].evaluate(yp);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decompose_tensor examples") {
  auto a = line("a"), y = line("y");
  auto f = P("y", {"y"});
  std::mt19937 rng(3);

  auto big_f = raw("(a*y^2+y)/y", ay);
  auto d = decompose_tensor(a, y, big_f, f);
  CHECK(d.k == 1);
  CHECK(printed(d.h, {"a"}) == std::vector<std::string>{"a", "1"});
  CHECK(printed(d.fy, {"y"}) == std::vector<std::string>{"y^2", "y"});
  CHECK(tensor_identity_holds(d, big_f, rng));

  std::vector<std::string> xy{"x", "y"};
  auto g = decompose_tensor(line("x"), y, raw("x*y", xy), f);
  CHECK(g.k == 0);
  CHECK(printed(g.h, {"x"}) == std::vector<std::string>{"x"});
  CHECK(printed(g.fy, {"y"}) == std::vector<std::string>{"y"});

  auto big_h = raw("(a^2*y^2+a*y^3)/y^2", ay);
  auto h = decompose_tensor(a, y, big_h, f);
  CHECK(h.k == 2);
  CHECK(printed(h.h, {"a"}) == std::vector<std::string>{"a^2", "a"});
  CHECK(printed(h.fy, {"y"}) == std::vector<std::string>{"y^2", "y^3"});
  CHECK(tensor_identity_holds(h, big_h, rng));

  CHECK_THROWS_AS(decompose_tensor(a, y, raw("1/(y+1)", ay), f), NotFPower);
  CHECK_THROWS_AS(decompose_tensor(a, y, raw("1/(a*y)", ay), f), NotFPower);
}

TEST_CASE("find_unimodular_samples examples") {
  const std::vector<std::string> a{"a"};
  auto s = find_unimodular_samples({P("a", a), P("1", a)}, ints({0, 1, 2, 3}));
  CHECK(s == ints({0, 1}));
  CHECK(find_unimodular_samples({P("1", a)}, ints({5, 6})).size() == 1);
  auto t = find_unimodular_samples({P("a^2", a), P("a", a)}, ints({1, 2, 3}));
  CHECK(t == ints({1, 2}));
  Matrix m{{1, 4}, {1, 2}};
  CHECK(leibniz_det(m) == -2);
  CHECK(determinant(m) == -2);
  CHECK_THROWS_AS(find_unimodular_samples({P("a^2", a), P("a", a)}, ints({0, 1})), BudgetExhausted);
  CHECK_THROWS_AS(find_unimodular_samples({P("a", a), P("1", a)}, ints({0, 1, 2}), 1), BudgetExhausted);
}

TEST_CASE("sample matrices are exactly invertible") {
  std::mt19937 rng(5);
  const std::vector<std::string> ab{"a", "b"};
  auto plane_ab = AffineVariety::affine_space(ab);
  auto cands = candidate_points(plane_ab, 400);
  CHECK(cands.front() == std::vector<Scalar>{Scalar(0), Scalar(0)});
  for (int trial = 0; trial < 30; ++trial) {
    // A random set of distinct monomials is linearly independent.
    std::vector<Polynomial> h;
    std::uniform_int_distribution<int> e(0, 3);
    while (h.size() < 4) {
      auto m = Polynomial::monomial(Monomial({std::uint32_t(e(rng)), std::uint32_t(e(rng))}), Scalar(1));
      if (std::find(h.begin(), h.end(), m) == h.end()) h.push_back(m);
    }
    auto pts = find_unimodular_samples(h, cands);
    Matrix m(h.size(), std::vector<Scalar>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j) m[i][j] = h[i].evaluate(pts[j]);
    CHECK(leibniz_det(m) != 0);
  }
}

TEST_CASE("candidate_points enumerates growing boxes") {
  auto c = candidate_points(line("a"), 5);
  CHECK(c == ints({0, 1, -1, 2, -2}));
  auto gm = AffineVariety::parse({"z", "w"}, {"z*w-1"});
  auto units = candidate_points(gm, 10);
  CHECK(units.size() == 2);
  CHECK(candidate_points(AffineVariety::affine_space({"a", "b"}), 9).size() == 9);
}

TEST_CASE("certify_regular examples") {
  auto a = line("a"), y = line("y");
  auto f = P("y", {"y"});
  auto d = certify_regular(a, y, raw("(a*y^2+y)/y", ay), f, ints({0, 1}));
  REQUIRE(d.regular_form.has_value());
  CHECK(to_string(*d.regular_form, ay) == "a*y+1");
  CHECK(d.samples == ints({0, 1}));
  CHECK(printed(d.slices, {"y"}) == std::vector<std::string>{"1", "y+1"});
  // f1/f = y = F_1 - F_0 and f2/f = 1 = F_0.
  CHECK(d.coefficients == Matrix{{-1, 1}, {1, 0}});

  auto poly = certify_regular(a, y, raw("a*y^2-3", ay), f, candidate_points(a, 10));
  CHECK(to_string(*poly.regular_form, ay) == "a*y^2-3");

  CHECK_THROWS_AS(certify_regular(a, y, raw("1/y", ay), f, ints({0, 1, 2})), SliceNotRegular);
  try {
    certify_regular(a, y, raw("1/y", ay), f, ints({0, 1, 2}));
  } catch (const SliceNotRegular& e) {
    CHECK(std::string(e.what()).find("1/y") != std::string::npos);
  }
}

TEST_CASE("certified forms agree with F pointwise") {
  std::mt19937 rng(9);
  auto a = line("a"), y = line("y");
  auto f = P("y", {"y"});
  const std::vector<std::string> forms{"(a*y^2+y)/y", "(a^2*y^2+a*y^3)/y^2", "(a*y^3-2*y^2+a^3*y^4)/y^2"};
  for (const auto& text : forms) {
    auto big_f = raw(text, ay);
    auto d = certify_regular(a, y, big_f, f, candidate_points(a, 20));
    CHECK(tensor_identity_holds(d, big_f, rng));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Scalar> pt{random_rational(rng), random_rational(rng)};
      Scalar den = big_f.den.evaluate(pt);
      if (sgn(den) == 0) continue;
      CHECK(d.regular_form->evaluate(pt) == big_f.num.evaluate(pt) / den);
    }
  }
}

TEST_CASE("regularity_from_subgroup examples") {
  auto inflated = inflated_scaling_action();
  std::vector<std::vector<Scalar>> sample{{Scalar(1)}, {Scalar(2)}, {Scalar(3)}};
  auto cert = regularity_from_subgroup(inflated, sample);
  const std::vector<std::string> zwx{"z", "w", "x"};
  REQUIRE(cert.coordinates.size() == 1);
  CHECK(to_string(cert.coordinates[0], zwx) == "z*x");
  CHECK(cert.action.parametric().rep()[0].is_polynomial());

  // Soundness at sampled (g, x): the form agrees with the original map.
  std::mt19937 rng(13);
  const auto& orig = inflated.parametric().rep()[0];
  for (int trial = 0; trial < 100; ++trial) {
    Scalar z = random_rational(rng);
    if (sgn(z) == 0) continue;
    std::vector<Scalar> pt{z, 1 / z, random_rational(rng)};
    Scalar den = orig.den.evaluate(pt);
    if (sgn(den) == 0) continue;
    CHECK(cert.coordinates[0].evaluate(pt) == orig.num.evaluate(pt) / den);
  }

  auto tr = regularity_from_subgroup(translation_action(), ints({0, 1}));
  const std::vector<std::string> sxy{"s", "x", "y"};
  CHECK(printed(tr.coordinates, sxy) == std::vector<std::string>{"s+x", "y"});

  CHECK_THROWS_AS(regularity_from_subgroup(blowup_action(), ints({0, 1})), NotRegularOnSample);
  try {
    regularity_from_subgroup(blowup_action(), ints({0, 1}));
  } catch (const NotRegularOnSample& e) {
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }
  CHECK(point_status(specialize(blowup_action(), std::vector<Scalar>{Scalar(1)}),
                     std::vector<Scalar>{Scalar(-1), Scalar(0)})
            .kind == PointStatusKind::Undefined);
}
