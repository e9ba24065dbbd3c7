#pragma once

#include <string_view>

#include "speclat/lattice.hpp"

namespace speclat {

/// {-1, 1} in Z with unit weights; W = (x + 1/x)^2.
WeightedPointSet chebyshev_points();

/// {(1,0), (0,1), (-1,-1)} in Z^2 with unit weights.
WeightedPointSet honeycomb_points();

/// The basis (2,1), (1,2) of the honeycomb lattice, in which
/// W = (u1 + u2 + 1)(1/u1 + 1/u2 + 1).
IntMatrix honeycomb_symmetric_basis();

/// "chebyshev" or "honeycomb"; throws InvalidInput otherwise.
WeightedPointSet builtin_example(std::string_view id);

}  // namespace speclat
