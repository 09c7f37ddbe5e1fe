#pragma once

// Dense exact linear algebra over Q.

#include <optional>
#include <vector>

#include "weilreg/exactalg.hpp"

namespace weilreg {

using Matrix = std::vector<std::vector<Scalar>>;

Scalar determinant(Matrix m);
/// One solution of a * x = b (free variables set to 0), or nullopt when the
/// system is inconsistent.
std::optional<std::vector<Scalar>> solve_linear(Matrix a, std::vector<Scalar> b);

}  // namespace weilreg
