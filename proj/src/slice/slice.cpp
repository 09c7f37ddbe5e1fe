#include <algorithm>

#include "weilreg/slice.hpp"

namespace weilreg {

namespace {

constexpr unsigned kMaxPower = 64;

std::vector<std::size_t> first(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

Scalar eval(const Polynomial& p, const std::vector<Scalar>& at) { return p.evaluate(at); }

/// Restriction of a polynomial on X x Y to the slice {x} x Y.
Polynomial slice_at(const Polynomial& p, const std::vector<Scalar>& x) {
  std::vector<std::optional<Scalar>> values(p.arity());
  for (std::size_t i = 0; i < x.size(); ++i) values[i] = x[i];
  return p.partial_evaluate(values).drop_front(x.size());
}

std::string point_text(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace

SliceDecomposition decompose_tensor(const AffineVariety& x, const AffineVariety& y, const Fraction& big_f,
                                    const Polynomial& f) {
  const std::size_t nx = x.arity(), total = nx + y.arity();
  if (big_f.num.arity() != total) throw ArityMismatch("F must live on X x Y");
  if (f.arity() != y.arity()) throw ArityMismatch("f must live on Y");
  const AffineVariety xy = product(x, y);
  const Ideal& ideal = xy.ideal();
  const Polynomial fs = f.shift(total, nx);

  SliceDecomposition out{x, y, f, 0, {}, {}, {}, {}, {}, {}, std::nullopt};
  std::optional<Polynomial> cofactor;
  if (auto c = big_f.den.constant_value()) {
    cofactor = Polynomial::constant(total, 1 / *c);
  } else {
    if (!radical_contains(ideal.with(big_f.den), fs))
      throw NotFPower("denominator " + xy.print(big_f.den) + " is not supported on V(f)");
    for (unsigned k = 1; k <= kMaxPower && !cofactor; ++k) {
      cofactor = RationalFunction(xy, Fraction::raw(fs.pow(k), big_f.den)).as_polynomial();
      out.k = k;
    }
    if (!cofactor) throw NotFPower("denominator does not divide a power of f");
  }
  Polynomial p = normal_form(big_f.num * *cofactor, ideal);
  for (auto& [mono, coeff] : collect_wrt(p, first(nx))) {
    std::vector<std::uint32_t> e(mono.exponents().begin(), mono.exponents().begin() + nx);
    out.h.push_back(Polynomial::monomial(Monomial(std::move(e)), Scalar(1)));
    out.fy.push_back(coeff.drop_front(nx));
  }
  return out;
}

std::vector<std::vector<Scalar>> candidate_points(const AffineVariety& x, std::size_t count) {
  const std::size_t n = x.arity();
  // Index i stands for the i-th entry of 0, 1, -1, 2, -2, ...
  auto value = [](std::size_t i) { return i % 2 ? long(i + 1) / 2 : -long(i) / 2; };
  std::vector<std::vector<Scalar>> out;
  for (std::size_t radius = 0; radius <= 64 && out.size() < count; ++radius) {
    const std::size_t side = 2 * radius + 1;
    std::vector<std::size_t> idx(n, 0);
    bool more = true;
    while (more && out.size() < count) {
      std::size_t top = n ? *std::max_element(idx.begin(), idx.end()) : 0;
      if (top + 1 >= 2 * radius) {
        std::vector<Scalar> p;
        for (auto i : idx) p.push_back(Scalar(value(i)));
        if (x.contains_point(p)) out.push_back(std::move(p));
      }
      more = false;
      for (std::size_t d = n; d-- > 0;) {
        if (++idx[d] < side) {
          more = true;
          break;
        }
        idx[d] = 0;
      }
    }
    if (n == 0) break;
  }
  return out;
}

std::vector<std::vector<Scalar>> find_unimodular_samples(const std::vector<Polynomial>& h,
                                                         const std::vector<std::vector<Scalar>>& candidates,
                                                         std::size_t budget) {
  const std::size_t n = h.size();
  std::vector<std::size_t> chosen;
  std::size_t scanned = 0;
  for (std::size_t m = 0; m < n; ++m) {
    // h_m agrees with sum lambda_j h_j on the points chosen so far.
    Matrix a(m, std::vector<Scalar>(m));
    std::vector<Scalar> b(m);
    for (std::size_t l = 0; l < m; ++l) {
      for (std::size_t j = 0; j < m; ++j) a[l][j] = eval(h[j], candidates[chosen[l]]);
      b[l] = eval(h[m], candidates[chosen[l]]);
    }
    std::vector<Scalar> lambda = m ? *solve_linear(a, b) : std::vector<Scalar>{};
    bool found = false;
    for (std::size_t c = 0; c < candidates.size() && !found; ++c) {
      if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
      if (scanned++ >= budget) break;
      Scalar r = eval(h[m], candidates[c]);
      for (std::size_t j = 0; j < m; ++j) r -= lambda[j] * eval(h[j], candidates[c]);
      if (sgn(r) != 0) {
        chosen.push_back(c);
        found = true;
      }
    }
    if (!found)
      throw BudgetExhausted("no candidate separates h_" + std::to_string(m + 1) + " after " +
                            std::to_string(scanned) + " evaluations; enlarge the candidate set");
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::vector<Scalar>> out;
  for (auto c : chosen) out.push_back(candidates[c]);
  return out;
}

SliceDecomposition certify_regular(const AffineVariety& x, const AffineVariety& y, const Fraction& big_f,
                                   const Polynomial& f, const std::vector<std::vector<Scalar>>& candidates) {
  SliceDecomposition d = decompose_tensor(x, y, big_f, f);
  const std::size_t n = d.h.size(), nx = x.arity(), total = nx + y.arity();
  const AffineVariety xy = product(x, y);
  d.samples = find_unimodular_samples(d.h, candidates);
  d.evaluation.assign(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.evaluation[i][j] = eval(d.h[i], d.samples[j]);

  for (std::size_t j = 0; j < n; ++j) {
    Polynomial num = slice_at(big_f.num, d.samples[j]), den = slice_at(big_f.den, d.samples[j]);
    if (contains(y.ideal(), den))
      throw SliceNotRegular("slice " + std::to_string(j) + " at " + point_text(d.samples[j]) +
                            " has a vanishing denominator");
    auto p = RationalFunction(y, Fraction::raw(num, den)).as_polynomial();
    if (!p)
      throw SliceNotRegular("slice " + std::to_string(j) + " at " + point_text(d.samples[j]) + " is " +
                            to_string(Fraction::raw(num, den), y.vars()) + ", not regular");
    d.slices.push_back(normal_form(*p, y.ideal()));
  }

  // F_{x_j} = sum_i h_i(x_j) g_i, so g = (M^T)^-1 F.
  Matrix mt(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt[i][j] = d.evaluation[j][i];
  d.coefficients.assign(n, std::vector<Scalar>(n));
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<Scalar> e(n, Scalar(0));
    e[l] = 1;
    auto col = solve_linear(mt, e);
    for (std::size_t i = 0; i < n; ++i) d.coefficients[i][l] = (*col)[i];
  }
  const Polynomial fk = f.pow(d.k);
  Polynomial form(total);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial g(y.arity());
    for (std::size_t j = 0; j < n; ++j) g += d.slices[j] * d.coefficients[i][j];
    if (!normal_form(g * fk - d.fy[i], y.ideal()).is_zero())
      throw NonPolynomialResidue(to_string(Fraction::raw(d.fy[i], fk), y.vars()) + " is not regular on Y");
    form += d.h[i].shift(total, 0) * g.shift(total, nx);
  }
  form = normal_form(form, xy.ideal());
  if (!functions_equal(xy, Fraction::of(form), big_f))
    throw NonPolynomialResidue("reassembled form " + xy.print(form) + " differs from F");
  d.regular_form = form;
  return d;
}

RegularityCertificate regularity_from_subgroup(const RationalAction& action,
                                               const std::vector<std::vector<Scalar>>& sample) {
  if (action.is_finite()) throw Unsupported("regularity from a subgroup needs a parametric group");
  const AlgebraicGroup& group = action.group();
  const AffineVariety& host = action.space().host();
  const std::size_t n = group.arity();

  std::vector<std::vector<Scalar>> points;
  for (const auto& s : sample) points.push_back(group.point(s));
  for (const auto& g : points) {
    RationalMap m = specialize(action, g);
    for (const RationalMap& side : {m, *m.cached_inverse()}) {
      bool regular = false;
      for (const auto& rep : side.representatives()) {
        regular = std::all_of(rep.begin(), rep.end(), [&](const Fraction& c) {
          return RationalFunction(host, c).as_polynomial().has_value();
        });
        if (regular) break;
      }
      if (!regular)
        throw NotRegularOnSample("specialization at " + point_text(g) + " is " + side.print() +
                                 ", not a regular automorphism");
    }
  }

  RegularityCertificate out;
  const Representative& rep = action.parametric().rep();
  const auto names = product(group.variety(), host).vars();
  for (std::size_t i = 0; i < rep.size(); ++i) {
    const Fraction& c = rep[i];
    for (std::size_t v = 0; v < n; ++v)
      if (c.den.uses_var(v))
        throw NotFPower("denominator of coordinate " + std::to_string(i) + " involves the group variables");
    Polynomial f = c.den.drop_front(n);
    out.certificates.push_back(certify_regular(group.variety(), host, c, f, points));
    out.coordinates.push_back(*out.certificates.back().regular_form);
  }
  Representative poly;
  for (const auto& p : out.coordinates) poly.push_back(Fraction::of(p));
  out.action = make_rational_action(group, action.space(), {poly});
  return out;
}

}  // namespace weilreg
