#include "cubeball/rng.hpp"

#include <cmath>

namespace cubeball {

namespace {

// SplitMix64 finalizer; bijective with full avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t rng_next_u64(RngState& state) {
    // Keyed counter mode: mix the counter, then fold in seed and stream
    // through two further rounds so distinct keys give unrelated sequences.
    std::uint64_t h = mix64(state.counter++);
    h = mix64(h ^ mix64(state.seed ^ 0x8BB84B93962EACC9ull));
    h = mix64(h ^ mix64(state.stream ^ 0xD1B54A32D192ED03ull));
    return h;
}

double rng_uniform(RngState& state) {
    return static_cast<double>(rng_next_u64(state) >> 11) * 0x1.0p-53;
}

double rng_gaussian(RngState& state) {
    // Box-Muller, trig form; one value per call keeps the state a pure
    // (seed, stream, counter) triple with no carried cache.
    double u1 = static_cast<double>((rng_next_u64(state) >> 11) + 1) * 0x1.0p-53;
    double u2 = rng_uniform(state);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

Eigen::Vector3d sphere3(RngState& state) {
    for (;;) {
        Eigen::Vector3d v(rng_gaussian(state), rng_gaussian(state),
                          rng_gaussian(state));
        double n2 = v.squaredNorm();
        if (n2 > 1e-300) return v / std::sqrt(n2);
    }
}

}  // namespace cubeball
