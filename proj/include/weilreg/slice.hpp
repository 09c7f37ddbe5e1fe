#pragma once

// Regularity from slices: a rational function on X x Y whose slices F(x, .)
// are regular is itself regular, with an explicit certificate.

#include <cstdint>
#include <optional>
#include <vector>

#include "weilreg/groups.hpp"
#include "weilreg/linalg.hpp"

namespace weilreg {

struct SliceDecomposition {
  AffineVariety x, y;
  Polynomial f;  // on Y
  unsigned k = 0;
  /// f^k F = sum h[i] * fy[i], h on X (independent monomials), fy on Y.
  std::vector<Polynomial> h, fy;
  std::vector<std::vector<Scalar>> samples;
  /// evaluation[i][j] = h_i(x_j).
  Matrix evaluation;
  /// Slices F(x_j, .) as polynomials on Y.
  std::vector<Polynomial> slices;
  /// fy[i] / f^k = sum_j coefficients[i][j] * slices[j].
  Matrix coefficients;
  /// On X x Y.
  std::optional<Polynomial> regular_form;
};

/// F lives on X x Y (X coordinates first). Minimal k with den(F) dividing
/// f^k, taken on the given presentation of F. Throws NotFPower.
SliceDecomposition decompose_tensor(const AffineVariety& x, const AffineVariety& y, const Fraction& big_f,
                                    const Polynomial& f);

/// Integer points of X in growing boxes, coordinates ordered 0, 1, -1, 2, -2, ...
std::vector<std::vector<Scalar>> candidate_points(const AffineVariety& x, std::size_t count);

/// Greedy choice of points with invertible evaluation matrix, returned in
/// candidate order. Throws BudgetExhausted after `budget` candidates.
std::vector<std::vector<Scalar>> find_unimodular_samples(const std::vector<Polynomial>& h,
                                                         const std::vector<std::vector<Scalar>>& candidates,
                                                         std::size_t budget = SIZE_MAX);

/// Throws SliceNotRegular, NonPolynomialResidue or BudgetExhausted.
SliceDecomposition certify_regular(const AffineVariety& x, const AffineVariety& y, const Fraction& big_f,
                                   const Polynomial& f, const std::vector<std::vector<Scalar>>& candidates);

struct RegularityCertificate {
  /// Polynomial coordinates of rho on G x X.
  std::vector<Polynomial> coordinates;
  std::vector<SliceDecomposition> certificates;
  RationalAction action;
};

/// Throws NotRegularOnSample when a sampled specialization is not a regular
/// automorphism, NotFPower when a denominator involves the group variables.
RegularityCertificate regularity_from_subgroup(const RationalAction& action,
                                               const std::vector<std::vector<Scalar>>& sample);

}  // namespace weilreg
