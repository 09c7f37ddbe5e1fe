#pragma once

// Affine algebraic groups, rational actions, the fibered map rho~ and the
// locus of G-regular points.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weilreg/varmaps.hpp"

namespace weilreg {

/// Either a variety with polynomial structure maps, or a finite group given
/// by a multiplication table over named elements.
class AlgebraicGroup {
 public:
  AlgebraicGroup() = default;

  /// G_a on A^1 with m = s + s', inv = -s, e = 0.
  static AlgebraicGroup additive(std::string var = "s");
  /// G_m as V(z*w - 1) with m = (z*z', w*w'), inv = (w, z), e = (1, 1).
  static AlgebraicGroup multiplicative(std::string z = "z", std::string w = "w");
  /// General structure maps. `mul` lives on G x G (coordinates of the first
  /// factor first), `inv` on G.
  static AlgebraicGroup custom(AffineVariety variety, std::vector<Polynomial> mul, std::vector<Polynomial> inv,
                               std::vector<Scalar> identity);
  /// table[i][j] = index of element_i * element_j.
  static AlgebraicGroup finite(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table);
  /// Direct product; both factors parametric or both finite.
  static AlgebraicGroup product(const AlgebraicGroup& a, const AlgebraicGroup& b);

  bool is_finite() const { return finite_; }

  // Parametric groups.
  const AffineVariety& variety() const { return variety_; }
  std::size_t arity() const { return variety_.arity(); }
  const std::vector<Polynomial>& multiplication() const { return mul_; }
  const std::vector<Polynomial>& inversion() const { return inv_; }
  const std::vector<Scalar>& identity() const { return identity_; }
  bool contains(std::span<const Scalar> g) const { return variety_.contains_point(g); }
  std::vector<Scalar> multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  std::vector<Scalar> invert(std::span<const Scalar> a) const;
  /// Accepts full coordinates, or one value per G_a / G_m factor (the G_m
  /// coordinate w = 1/z is filled in). Throws PointNotOnGroup.
  std::vector<Scalar> point(std::span<const Scalar> values) const;

  // Finite groups.
  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t identity_index() const { return identity_index_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t invert(std::size_t a) const;
  /// Throws PointNotOnGroup for unknown names.
  std::size_t index_of(const std::string& name) const;

  std::string describe() const;

 private:
  enum class Factor { Additive, Multiplicative, Other };

  void validate();

  bool finite_ = false;
  AffineVariety variety_;
  std::vector<Polynomial> mul_, inv_;
  std::vector<Scalar> identity_;
  std::vector<Factor> factors_;
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_index_ = 0;
};

/// Rational action of G on an open subset X of an affine variety. In
/// parametric mode rho is a rational map on G x X; in finite mode there is
/// one birational self-map per element.
class RationalAction {
 public:
  RationalAction() = default;

  const AlgebraicGroup& group() const { return group_; }
  const OpenSubset& space() const { return space_; }
  bool is_finite() const { return group_.is_finite(); }
  /// Parametric mode: rho as a map G x X -> X.
  const RationalMap& parametric() const { return rho_; }
  /// Finite mode: rho_g with its inverse rho_{g^-1} cached.
  const RationalMap& element_map(std::size_t g) const { return per_element_.at(g); }
  const std::vector<RationalMap>& element_maps() const { return per_element_; }

  /// Open subset of G x X on which rho lives (parametric mode).
  OpenSubset product_space() const;

 private:
  friend RationalAction make_rational_action(AlgebraicGroup, OpenSubset, const std::vector<Representative>&);
  friend RationalAction make_rational_action(AlgebraicGroup, OpenSubset, std::vector<RationalMap>);
  friend RationalAction restrict_to_open(const RationalAction&, const OpenSubset&);

  AlgebraicGroup group_;
  OpenSubset space_;
  RationalMap rho_;
  std::vector<RationalMap> per_element_;
};

/// Parametric mode: representatives are written in the coordinates of
/// product(G.variety(), X.host()). Throws NotAnAction with the residue of
/// the violated law.
RationalAction make_rational_action(AlgebraicGroup group, OpenSubset space, const std::vector<Representative>& reps);
/// Finite mode: one map per element, in table order.
RationalAction make_rational_action(AlgebraicGroup group, OpenSubset space, std::vector<RationalMap> per_element);

/// rho~(g, x) = (g, rho(g, x)) and its inverse tau o rho~ o tau, with
/// tau(g, x) = (g^-1, x). Round trips are verified.
std::pair<RationalMap, RationalMap> lift_tilde(const RationalAction& action);
/// Finite mode: rho~ restricted to one element is rho_g, inverse rho_{g^-1}.
std::pair<RationalMap, RationalMap> lift_tilde(const RationalAction& action, std::size_t element);

struct GRegularLocus {
  OpenSubset locus;
  /// Ideal (on X) of the points x with G x {x} inside E; for finite groups
  /// the complement of the intersection of the per-element loci.
  Ideal bad;
  /// Complement of the biregular locus of rho~ on G x X (parametric mode).
  std::optional<Ideal> exceptional;
};

/// Throws EmptyLocus when the computed locus is empty.
GRegularLocus g_regular_locus(const RationalAction& action);

/// rho_g as a birational self-map of X, with rho_{g^-1} attached as inverse.
RationalMap specialize(const RationalAction& action, std::span<const Scalar> g);
RationalMap specialize(const RationalAction& action, std::size_t element);

/// The action on the open subset U of X. Throws EmptyOpen.
RationalAction restrict_to_open(const RationalAction& action, const OpenSubset& u);

}  // namespace weilreg
