// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sinrtrack {

// Seeded randomness with role-based substreams. Every stochastic component
// (channel, feedback, cqi noise, policy) draws from its own generator, so
// adding draws to one role never shifts another role's sequence. Variates are
// built from raw 64-bit outputs instead of std::*_distribution, which keeps
// sequences bit-identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : base_seed_(seed), gen_(seed) {}

    // Independent generator derived from (seed, role).
    Rng substream(std::uint64_t role) const { return Rng(mix(base_seed_ ^ mix(role))); }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller, two uniforms per variate, no cached spare.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
        return mix(base ^ mix(salt));
    }

  private:
    std::uint64_t base_seed_;
    std::mt19937_64 gen_;
};

namespace rng_role {
inline constexpr std::uint64_t channel = 1;
inline constexpr std::uint64_t feedback = 2;
inline constexpr std::uint64_t cqi_noise = 3;
inline constexpr std::uint64_t policy = 4;
}  // namespace rng_role

}  // namespace sinrtrack
