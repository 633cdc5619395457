#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace fpplab {

// SplitMix64 finalizer step. Full-avalanche, so chaining it over the
// components of a replicate key gives well-separated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives a stream seed from (base, a, b). Used for per-replicate streams:
// seed = mix_seed(base_seed, n, replicate). Pure and documented so runs can
// be reproduced in isolation.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t state = base;
    std::uint64_t z = splitmix64(state);
    state ^= a;
    z ^= splitmix64(state);
    state ^= b;
    z ^= splitmix64(state);
    return z;
}

// Seeded generator with the handful of primitives the simulations need.
// std::mt19937_64 output is pinned by the standard; the derived draws below
// avoid std::*_distribution so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on (0, 1]. 53-bit resolution; never returns 0, so -log(u) is finite.
    double uniform01() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n). Rejection on the incomplete block.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = engine_();
            r = x % n;
        } while (x - r > std::numeric_limits<std::uint64_t>::max() - (n - 1));
        return r;
    }

    // Inverse-CDF exponential: -ln(U)/rate with U uniform on (0,1].
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    bool bernoulli(double p) { return uniform01() <= p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace fpplab
