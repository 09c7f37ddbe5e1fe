#pragma once

// Regular models of rational actions: the affine model for finite groups and
// the chart atlas glued from translates of X.

#include <string>
#include <vector>

#include "weilreg/groups.hpp"

namespace weilreg {

/// Y = V(J) in affine space over u1..uN, with psi: Y -> X polynomial and its
/// rational inverse psi^-1: X -> Y given by the generators.
struct Presentation {
  AffineVariety y;
  RationalMap psi;
  RationalMap psi_inverse;
};

struct RegularModel {
  std::vector<Fraction> generators;
  Presentation presentation;
  /// endomorphisms[g][j] is the j-th coordinate of g acting on Y.
  std::vector<std::vector<Polynomial>> endomorphisms;
};

/// Orbit of the coordinate functions under pullback, element by element in
/// table order, duplicates and constants removed.
std::vector<Fraction> stable_generators(const RationalAction& action);
/// Throws RoundTripFailure when psi and psi^-1 are not mutually inverse.
Presentation present_subalgebra(const OpenSubset& x, const std::vector<Fraction>& generators);
/// Throws NotInSpan when a pullback leaves the span of 1 and the generators,
/// RoundTripFailure when a model invariant fails.
std::vector<std::vector<Polynomial>> induced_regular_action(const Presentation& presentation,
                                                            const std::vector<Fraction>& generators,
                                                            const RationalAction& action);
/// Full pipeline. A host open D(c) contributes 1/c to the generators; other
/// open hosts raise Unsupported.
RegularModel regularize_finite(const RationalAction& action);

/// Writes f as c_0 + sum c_k generators[k] on X, if possible.
std::optional<std::vector<Scalar>> express_in_span(const AffineVariety& host, const Fraction& f,
                                                   const std::vector<Fraction>& generators);

struct CheckResult {
  bool pass = true;
  std::string detail;
  /// Generators of a witness ideal when the check fails.
  std::vector<std::string> witness;
};

struct AtlasReport {
  CheckResult symmetry, cocycle, separated, covering;
  /// Generators of the sum of the per-chart exceptional ideals.
  std::vector<std::string> covering_ideal;
  bool all_pass() const { return symmetry.pass && cocycle.pass && separated.pass && covering.pass; }
};

struct Atlas {
  RationalAction action;
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> points;  // parametric groups
  std::vector<std::size_t> elements;        // finite groups
  /// transitions[i][j] = rho at inv(g_j) * g_i.
  std::vector<std::vector<RationalMap>> transitions;
};

/// The first point must be the identity. Throws PointNotOnGroup.
Atlas build_atlas(const RationalAction& action, const std::vector<std::vector<Scalar>>& points);
Atlas build_atlas(const RationalAction& action, const std::vector<std::size_t>& elements);
AtlasReport check_atlas(const Atlas& atlas);

}  // namespace weilreg
