#ifndef COSLAW_RNG_HPP
#define COSLAW_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace coslaw {

/// Deterministic random stream.
///
/// Wraps std::mt19937_64 but derives all variates from raw 64-bit draws so
/// that a given seed produces the same sequence on every standard library.
/// Substreams are split off with derive(), which mixes a tag into the seed;
/// this keeps independently seeded suites reproducible under a single
/// top-level seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

    /// Child stream whose sequence depends on (seed, tag) only.
    Rng derive(std::uint64_t tag) const { return Rng(seed_ ^ mix(tag)); }

    std::uint64_t bits() { return gen_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    /// Integer uniform on [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(bits() % span);
    }

    /// Standard normal via Box-Muller (avoids std::normal_distribution,
    /// whose sequence is implementation-defined).
    double gaussian() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    // splitmix64 finalizer; decorrelates adjacent seeds and tags.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_ = 0;
    std::mt19937_64 gen_;
};

} // namespace coslaw

#endif
