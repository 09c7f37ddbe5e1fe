#include <set>

#include "weilreg/groups.hpp"

namespace weilreg {

namespace {

std::vector<Polynomial> vars_at(std::size_t count, std::size_t total, std::size_t offset) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(Polynomial::variable(total, offset + i));
  return v;
}

std::vector<Polynomial> substitute_all(const std::vector<Polynomial>& ps, const std::vector<Polynomial>& images) {
  std::vector<Polynomial> out;
  for (const auto& p : ps) out.push_back(p.substitute(images));
  return out;
}

std::vector<Polynomial> concat(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Ideal power_ideal(const Ideal& base, std::size_t copies) {
  const std::size_t n = base.arity(), total = n * copies;
  std::vector<Polynomial> gens;
  for (std::size_t c = 0; c < copies; ++c)
    for (const auto& g : base.generators()) gens.push_back(g.shift(total, c * n));
  return Ideal(total, std::move(gens));
}

void require_identity(const std::vector<Polynomial>& lhs, const std::vector<Polynomial>& rhs, const Ideal& modulo,
                      const AffineVariety& names, const std::string& law) {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    Polynomial residue = normal_form(lhs[i] - rhs[i], modulo);
    if (!residue.is_zero()) {
      std::string shown = modulo.arity() == names.arity() ? names.print(residue) : std::to_string(residue.size()) + " terms";
      throw AxiomFailure(law + " fails in coordinate " + std::to_string(i) + " (residue " + shown + ")");
    }
  }
}

}  // namespace

AlgebraicGroup AlgebraicGroup::additive(std::string var) {
  AlgebraicGroup g;
  g.variety_ = AffineVariety::affine_space({std::move(var)});
  g.mul_ = {Polynomial::variable(2, 0) + Polynomial::variable(2, 1)};
  g.inv_ = {-Polynomial::variable(1, 0)};
  g.identity_ = {Scalar(0)};
  g.factors_ = {Factor::Additive};
  g.validate();
  return g;
}

AlgebraicGroup AlgebraicGroup::multiplicative(std::string z, std::string w) {
  AlgebraicGroup g;
  g.variety_ = AffineVariety::parse({z, w}, {z + "*" + w + "-1"});
  g.mul_ = {Polynomial::variable(4, 0) * Polynomial::variable(4, 2),
            Polynomial::variable(4, 1) * Polynomial::variable(4, 3)};
  g.inv_ = {Polynomial::variable(2, 1), Polynomial::variable(2, 0)};
  g.identity_ = {Scalar(1), Scalar(1)};
  g.factors_ = {Factor::Multiplicative};
  g.validate();
  return g;
}

AlgebraicGroup AlgebraicGroup::custom(AffineVariety variety, std::vector<Polynomial> mul, std::vector<Polynomial> inv,
                                      std::vector<Scalar> identity) {
  const std::size_t n = variety.arity();
  if (mul.size() != n || inv.size() != n || identity.size() != n)
    throw ArityMismatch("group structure maps need one coordinate per group variable");
  for (const auto& p : mul)
    if (p.arity() != 2 * n) throw ArityMismatch("multiplication lives on G x G");
  for (const auto& p : inv)
    if (p.arity() != n) throw ArityMismatch("inversion lives on G");
  AlgebraicGroup g;
  g.variety_ = std::move(variety);
  g.mul_ = std::move(mul);
  g.inv_ = std::move(inv);
  g.identity_ = std::move(identity);
  g.factors_ = {Factor::Other};
  g.validate();
  return g;
}

AlgebraicGroup AlgebraicGroup::finite(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table) {
  AlgebraicGroup g;
  g.finite_ = true;
  g.elements_ = std::move(elements);
  g.table_ = std::move(table);
  g.validate();
  return g;
}

AlgebraicGroup AlgebraicGroup::product(const AlgebraicGroup& a, const AlgebraicGroup& b) {
  if (a.finite_ != b.finite_) throw AxiomFailure("products mixing finite and parametric groups are not supported");
  AlgebraicGroup g;
  if (a.finite_) {
    g.finite_ = true;
    const std::size_t nb = b.order();
    for (const auto& x : a.elements_)
      for (const auto& y : b.elements_) g.elements_.push_back(x + "." + y);
    g.table_.assign(a.order() * nb, std::vector<std::size_t>(a.order() * nb));
    for (std::size_t i = 0; i < g.elements_.size(); ++i)
      for (std::size_t j = 0; j < g.elements_.size(); ++j)
        g.table_[i][j] = a.table_[i / nb][j / nb] * nb + b.table_[i % nb][j % nb];
    g.validate();
    return g;
  }
  const std::size_t na = a.arity(), nb = b.arity(), n = na + nb;
  g.variety_ = weilreg::product(a.variety_, b.variety_);
  // Coordinates on G x G: (a-part, b-part) of the first factor, then of the second.
  std::vector<std::size_t> a_map, b_map;
  for (std::size_t i = 0; i < na; ++i) a_map.push_back(i);
  for (std::size_t i = 0; i < na; ++i) a_map.push_back(n + i);
  for (std::size_t i = 0; i < nb; ++i) b_map.push_back(na + i);
  for (std::size_t i = 0; i < nb; ++i) b_map.push_back(n + na + i);
  for (const auto& p : a.mul_) g.mul_.push_back(p.embed(2 * n, a_map));
  for (const auto& p : b.mul_) g.mul_.push_back(p.embed(2 * n, b_map));
  for (const auto& p : a.inv_) g.inv_.push_back(p.shift(n, 0));
  for (const auto& p : b.inv_) g.inv_.push_back(p.shift(n, na));
  g.identity_ = a.identity_;
  g.identity_.insert(g.identity_.end(), b.identity_.begin(), b.identity_.end());
  g.factors_ = a.factors_;
  g.factors_.insert(g.factors_.end(), b.factors_.begin(), b.factors_.end());
  g.validate();
  return g;
}

void AlgebraicGroup::validate() {
  if (finite_) {
    const std::size_t n = elements_.size();
    if (n == 0) throw AxiomFailure("a finite group needs at least one element");
    if (std::set<std::string>(elements_.begin(), elements_.end()).size() != n)
      throw AxiomFailure("repeated element name");
    if (table_.size() != n) throw AxiomFailure("multiplication table must be square");
    for (const auto& row : table_) {
      if (row.size() != n) throw AxiomFailure("multiplication table must be square");
      for (std::size_t v : row)
        if (v >= n) throw AxiomFailure("table entry outside the group");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) {
        identity_index_ = e;
        found = true;
      }
    }
    if (!found) throw AxiomFailure("no identity element in the table");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw AxiomFailure("associativity fails for (" + elements_[a] + ", " + elements_[b] + ", " +
                               elements_[c] + ")");
    for (std::size_t a = 0; a < n; ++a) invert(a);
    return;
  }

  const std::size_t n = arity();
  if (!variety_.contains_point(identity_)) throw AxiomFailure("identity is not a point of the group");
  const Ideal& ig = variety_.ideal();
  const Ideal ig2 = power_ideal(ig, 2), ig3 = power_ideal(ig, 3);
  // Structure maps land in G.
  for (const auto& rel : ig.generators()) {
    if (!normal_form(rel.substitute(mul_), ig2).is_zero()) throw AxiomFailure("multiplication does not land in G");
    if (!normal_form(rel.substitute(inv_), ig).is_zero()) throw AxiomFailure("inversion does not land in G");
  }
  const auto a3 = vars_at(n, 3 * n, 0), b3 = vars_at(n, 3 * n, n), c3 = vars_at(n, 3 * n, 2 * n);
  auto ab = substitute_all(mul_, concat(a3, b3));
  auto bc = substitute_all(mul_, concat(b3, c3));
  require_identity(substitute_all(mul_, concat(ab, c3)), substitute_all(mul_, concat(a3, bc)), ig3, variety_,
                   "associativity m(m(a,b),c) = m(a,m(b,c))");
  const auto g = vars_at(n, n, 0);
  std::vector<Polynomial> e;
  for (const auto& c : identity_) e.push_back(Polynomial::constant(n, c));
  require_identity(substitute_all(mul_, concat(e, g)), g, ig, variety_, "left identity m(e,g) = g");
  require_identity(substitute_all(mul_, concat(g, e)), g, ig, variety_, "right identity m(g,e) = g");
  require_identity(substitute_all(mul_, concat(inv_, g)), e, ig, variety_, "left inverse m(inv(g),g) = e");
}

std::vector<Scalar> AlgebraicGroup::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  std::vector<Scalar> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  std::vector<Scalar> out;
  for (const auto& p : mul_) out.push_back(p.evaluate(ab));
  return out;
}

std::vector<Scalar> AlgebraicGroup::invert(std::span<const Scalar> a) const {
  std::vector<Scalar> out;
  for (const auto& p : inv_) out.push_back(p.evaluate(a));
  return out;
}

std::vector<Scalar> AlgebraicGroup::point(std::span<const Scalar> values) const {
  if (finite_) throw PointNotOnGroup("finite groups are addressed by element name");
  std::vector<Scalar> out;
  if (values.size() == arity()) {
    out.assign(values.begin(), values.end());
  } else if (values.size() == factors_.size()) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] == Factor::Additive) {
        out.push_back(values[i]);
      } else if (factors_[i] == Factor::Multiplicative) {
        if (sgn(values[i]) == 0) throw PointNotOnGroup("0 is not a unit");
        out.push_back(values[i]);
        out.push_back(1 / values[i]);
      } else {
        throw PointNotOnGroup("shorthand coordinates need G_a or G_m factors");
      }
    }
  } else {
    throw PointNotOnGroup("expected " + std::to_string(arity()) + " coordinates");
  }
  if (!contains(out)) throw PointNotOnGroup("point does not satisfy the group equations");
  return out;
}

std::size_t AlgebraicGroup::invert(std::size_t a) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (table_[a][b] == identity_index_ && table_[b][a] == identity_index_) return b;
  throw AxiomFailure("element " + elements_[a] + " has no inverse");
}

std::size_t AlgebraicGroup::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == name) return i;
  throw PointNotOnGroup("unknown group element '" + name + "'");
}

std::string AlgebraicGroup::describe() const {
  if (finite_) return "finite group of order " + std::to_string(order());
  std::string out = "group on (";
  for (std::size_t i = 0; i < arity(); ++i) out += (i ? ", " : "") + variety_.vars()[i];
  return out + ")";
}

}  // namespace weilreg
