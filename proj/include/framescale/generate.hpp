#pragma once

#include <cstdint>
#include <span>

#include "framescale/frame.hpp"

namespace framescale {

/// m equally spaced unit vectors (cos 2 pi k / m, sin 2 pi k / m); m = 3 is
/// the Mercedes-Benz frame.
Frame harmonic_frame(std::size_t m);

/// Unit vectors in R^2 at the given angles (radians).
Frame angle_frame(std::span<const double> radians);

/// Columns of an order-n Sylvester Hadamard matrix with the last row doubled.
Frame hadamard_doubled(std::size_t n);

/// Seeded unit-norm frame; resamples until the vectors span R^n.
/// Deterministic for a given (n, m, seed) on every platform.
Frame random_unit_frame(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace framescale
