#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qugan {

// Mixes a base seed with a stream tag so independent consumers (weight init,
// shot sampling, dataset generation, ...) get decorrelated, reproducible
// streams from one user-facing seed. splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random source. All floating-point draws are derived from raw
// mt19937_64 output with fixed arithmetic (no std::*_distribution, whose
// algorithms vary between standard libraries), so a seed pins every byte of
// downstream output on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via the basic Box-Muller transform. Draws exactly two
    // uniforms per call and keeps no spare, so the stream position after n
    // calls is always 2n draws.
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0,1]; keeps log finite
        double u2 = uniform();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qugan
