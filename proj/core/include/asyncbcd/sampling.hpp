#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "asyncbcd/vector_ops.hpp"

namespace asyncbcd {

/// All seeded randomness goes through this engine. The helpers below use distributions whose
/// output is fixed by their source, so a seed reproduces the same numbers on every platform.
using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi);
double uniform_real(Rng& rng, double lo, double hi);
double standard_normal(Rng& rng);

std::vector<Vector> sample_box(std::size_t dim, double lo, double hi, std::size_t count, std::uint64_t seed);
std::vector<Vector> sample_ball(std::size_t dim, double radius, std::size_t count, std::uint64_t seed);
std::vector<Vector> sample_gaussian(std::size_t dim, double scale, std::size_t count, std::uint64_t seed);

/// count evenly spaced scalars covering [lo, hi] inclusive, as 1-dimensional points.
std::vector<Vector> grid_1d(double lo, double hi, std::size_t count);
/// per_axis x per_axis tensor grid over [lo, hi]^2.
std::vector<Vector> grid_2d(double lo, double hi, std::size_t per_axis);

}  // namespace asyncbcd
