#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace nodenet {

/// One splitmix64 step; used for seed derivation only.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derives a child seed from a base seed and a textual label, so that every
/// stage and worker owns an independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::uint64_t s = base ^ h;
    return splitmix64_next(s);
}

/// Derives a child seed from a base seed and up to three integer coordinates
/// (e.g. condition index, start node, walk index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = base;
    s ^= splitmix64_next(a);
    s = splitmix64_next(s);
    s ^= splitmix64_next(b);
    s = splitmix64_next(s);
    s ^= splitmix64_next(c);
    return splitmix64_next(s);
}

/// Deterministic random stream. The engine is the standard-specified
/// mt19937_64; all distributions are implemented here so results are
/// bit-reproducible regardless of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(n));
    }

    /// Picks an index proportional to `weights` (all nonnegative, sum given
    /// as `total`). Consumes exactly one draw.
    std::size_t weighted(std::span<const double> weights, double total) {
        double u = next_double() * total;
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            cum += weights[i];
            if (u < cum) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace nodenet
