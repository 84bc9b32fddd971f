#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace cubeball {

// Counter-based splittable generator. State is a plain value: copying it forks
// a generator that replays the same sequence; distinct (seed, stream) pairs
// give statistically independent streams. No hidden global state.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;
};

std::uint64_t rng_next_u64(RngState& state);

/// Uniform draw in [0, 1).
double rng_uniform(RngState& state);

/// Standard normal draw (Box-Muller; consumes two uniforms).
double rng_gaussian(RngState& state);

/// Uniform draw on the unit sphere in R^3 (normalized Gaussian triple).
Eigen::Vector3d sphere3(RngState& state);

}  // namespace cubeball
