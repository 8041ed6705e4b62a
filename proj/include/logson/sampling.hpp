#pragma once

#include <cstdint>

#include "logson/radial_grid.hpp"

namespace logson {

/// Smooth radial field supported in r < R:
///   A (1 - (r/R)^2)^4 (1 + sum_{j=1..3} b_j cos(j pi r / R)),
/// with R in [2, 6], A log-uniform in [0.2, 5], b_j in [-0.5, 0.5], drawn from `seed`.
Field random_smooth_field(GridPtr grid, std::uint64_t seed);

}  // namespace logson
