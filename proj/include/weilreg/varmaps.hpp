#pragma once

// Affine varieties, open subsets, rational functions and rational maps.

#include <memory>
#include <mutex>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "weilreg/exactalg.hpp"

namespace weilreg {

/// Closed subvariety of affine space given by named coordinates and a
/// defining ideal. Irreducibility is asserted by the caller, never checked.
class AffineVariety {
 public:
  AffineVariety() = default;
  /// Throws InvalidVariety if the ideal is the unit ideal or names repeat.
  AffineVariety(std::vector<std::string> vars, Ideal ideal, bool irreducible = true);

  static AffineVariety affine_space(std::vector<std::string> vars);
  /// Parses generators written in the variety's own coordinates.
  static AffineVariety parse(std::vector<std::string> vars, const std::vector<std::string>& generators,
                             bool irreducible = true);

  std::size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const Ideal& ideal() const { return ideal_; }
  bool irreducible() const { return irreducible_; }

  bool contains_point(std::span<const Scalar> point) const;
  Polynomial var(std::size_t i) const { return Polynomial::variable(arity(), i); }
  Polynomial parse_poly(std::string_view text) const { return parse_polynomial(text, vars_); }
  std::string print(const Polynomial& p) const { return to_string(p, vars_); }

 private:
  std::vector<std::string> vars_;
  Ideal ideal_;
  bool irreducible_ = true;
};

/// Same ambient dimension and equal defining ideals (names are ignored).
bool same_variety(const AffineVariety& a, const AffineVariety& b);
/// Product with coordinates of `a` first. Clashing names of `b` get a prime.
AffineVariety product(const AffineVariety& a, const AffineVariety& b);

/// Open subset U = host \ V(complement). The witnesses q satisfy D(q) in U and
/// together cover U; the complement ideal is host ideal + (witnesses).
class OpenSubset {
 public:
  OpenSubset() = default;
  /// The whole variety (witness 1).
  explicit OpenSubset(AffineVariety host);
  /// Witnesses vanishing identically on the host are dropped.
  OpenSubset(AffineVariety host, std::vector<Polynomial> witnesses);

  static OpenSubset principal(AffineVariety host, Polynomial q);

  const AffineVariety& host() const { return host_; }
  const std::vector<Polynomial>& witnesses() const { return witnesses_; }
  Ideal complement() const;
  bool is_whole() const;
  /// Empty iff every witness lies in the radical of the host ideal.
  bool is_empty() const;
  /// Nonempty on an irreducible host, hence dense.
  bool is_dense() const { return host_.irreducible() && !is_empty(); }
  bool contains_point(std::span<const Scalar> point) const;

  OpenSubset intersect(const OpenSubset& o) const;

 private:
  AffineVariety host_;
  std::vector<Polynomial> witnesses_;
};

OpenSubset product(const OpenSubset& a, const OpenSubset& b);

/// A quotient num/den of polynomials; kept with the gcd cancelled and a
/// monic denominator.
struct Fraction {
  Polynomial num;
  Polynomial den;

  static Fraction of(Polynomial p);
  /// Cancels the gcd and makes the denominator monic.
  static Fraction make(Polynomial num, Polynomial den);
  /// Keeps the given presentation; only the denominator is made monic.
  static Fraction raw(Polynomial num, Polynomial den);

  bool is_polynomial() const { return den.is_constant(); }
  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  /// Throws ZeroDenominator when o is zero.
  Fraction operator/(const Fraction& o) const;

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
};

std::string to_string(const Fraction& f, std::span<const std::string> names);

/// Replaces variable i of p by images[i].
Fraction substitute(const Polynomial& p, std::span<const Fraction> images);
Fraction substitute(const Fraction& f, std::span<const Fraction> images);

/// Element of k(X) for an irreducible X.
class RationalFunction {
 public:
  RationalFunction(AffineVariety host, Fraction f);

  const AffineVariety& host() const { return host_; }
  const Fraction& fraction() const { return f_; }
  /// Cross-multiplication modulo the host ideal.
  bool equals(const RationalFunction& o) const;
  /// Equal to a polynomial modulo the host ideal, if the denominator
  /// divides the numerator there.
  std::optional<Polynomial> as_polynomial() const;

 private:
  AffineVariety host_;
  Fraction f_;
};

bool functions_equal(const AffineVariety& host, const Fraction& a, const Fraction& b);

/// One tuple of coordinate fractions, one per target variable.
using Representative = std::vector<Fraction>;

enum class PointStatusKind { Defined, Undefined, Unknown };

struct PointStatus {
  PointStatusKind kind;
  std::vector<Scalar> value;  // set when Defined
};

/// Rational map between (open subsets of) affine varieties, given by one or
/// more representatives that agree as rational maps.
class RationalMap {
 public:
  RationalMap() = default;

  const OpenSubset& source() const { return state_->source; }
  const OpenSubset& target() const { return state_->target; }
  const std::vector<Representative>& representatives() const { return state_->reps; }
  const Representative& rep() const { return state_->reps.front(); }

  /// Ideal over source x target coordinates (source first); cached.
  const Ideal& graph_ideal() const;
  bool is_dominant() const;
  /// Cached inverse once computed by inverse().
  std::optional<RationalMap> cached_inverse() const;

  /// Records a verified inverse. The inverse keeps a detached copy of this
  /// map, so handles never form a reference cycle.
  void remember_inverse(const RationalMap& inv) const;

  std::string print(std::size_t rep_index = 0) const;

  /// Builds without any validation; used where correctness holds by
  /// construction (composites, lifts, specializations).
  static RationalMap unchecked(OpenSubset source, OpenSubset target, std::vector<Representative> reps);

 private:
  struct State {
    OpenSubset source, target;
    std::vector<Representative> reps;
    std::once_flag graph_once;
    std::optional<Ideal> graph;
    std::once_flag dominant_once;
    bool dominant = false;
    std::mutex inverse_mutex;
    std::shared_ptr<State> inverse;
  };
  std::shared_ptr<State> state_;
};

/// Validated constructor: denominators nonzero, target relations pulled back
/// to zero, representatives pairwise equal.
RationalMap make_rational_map(OpenSubset source, OpenSubset target, std::vector<Representative> reps);
RationalMap make_rational_map(const AffineVariety& source, const AffineVariety& target,
                              std::vector<Representative> reps);
/// Parses one representative "(f1, ..., fm)" whose entries may use '/'
/// between polynomial expressions.
Representative parse_representative(const AffineVariety& source, std::string_view text);
/// Rational expression over the given names. With `reduce` false, no gcd is
/// cancelled, so "(a*y^2+y)/y" keeps its denominator.
Fraction parse_fraction(std::string_view text, std::span<const std::string> names, bool reduce = true);

RationalMap identity_map(const OpenSubset& x);
RationalMap polynomial_map(const OpenSubset& source, const OpenSubset& target, std::vector<Polynomial> coords);

/// Vanishing ideal of the closure of the graph, over source x target.
Ideal graph_closure(const RationalMap& phi);
/// Closure of the image, as a subvariety of the target's host.
Ideal closed_image(const RationalMap& phi);
bool is_dominant(const RationalMap& phi);

/// psi o phi. Requires target(phi) == source(psi) and phi dominant.
RationalMap compose(const RationalMap& phi, const RationalMap& psi);
/// psi o phi by substitution only, skipping the dominance check.
RationalMap compose_unchecked(const RationalMap& phi, const RationalMap& psi);
bool maps_equal(const RationalMap& phi, const RationalMap& psi);

/// Inverse by extracting a(y) x_k - b(y) from a Groebner basis of the graph;
/// round trips verified. Throws NotBirational when extraction fails.
RationalMap inverse(const RationalMap& phi);
/// Accepts a known inverse after verifying both round trips.
RationalMap with_inverse(const RationalMap& phi, const RationalMap& inv);

/// Union over representatives of D(product of denominators), inside the
/// source host.
OpenSubset definable_locus(const RationalMap& phi);
/// Representative-generated locus where phi is an open immersion.
OpenSubset biregular_locus(const RationalMap& phi);
OpenSubset biregular_locus(const RationalMap& phi, const RationalMap& phi_inverse);

struct GraphClosedness {
  bool closed = true;
  /// When not closed: ideal of a component of the closed graph over the
  /// non-definable locus that meets host x host.
  std::optional<Ideal> witness;
};

/// Closedness of the graph of phi: X -> X in host x host.
GraphClosedness is_graph_closed(const RationalMap& phi, const OpenSubset& host);

PointStatus point_status(const RationalMap& phi, std::span<const Scalar> point);

}  // namespace weilreg
