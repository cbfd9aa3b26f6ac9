#pragma once

#include <cstdint>

#include "rng.hpp"
#include "types.hpp"

namespace qksvm::data {

// Standard normal via Box-Muller (two uniforms per draw, no caching).
double normal(RngStream& rng);

// Two isotropic unit-variance Gaussian blobs in dimension p, centres at
// +/- separation/2 along the first axis, alternating labels. Deterministic
// in (seed, n, p, separation).
Dataset make_two_clusters(std::uint64_t seed, std::size_t n, std::size_t p, double separation);

// Two interleaved half-circles in the plane (radius 1, the second shifted
// by (1, 0.5) and flipped) with isotropic Gaussian jitter of the given
// standard deviation. Labels +1 for the upper moon, -1 for the lower.
Dataset make_two_moons(std::uint64_t seed, std::size_t n, double noise);

} // namespace qksvm::data
