#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace sirnet {

/// splitmix64 finalizer; used to derive well-separated per-replicate seeds
/// from (base_seed, index) so replicate results do not depend on scheduling
/// order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // golden-ratio counter stream; index 0 is distinct from the base itself
    return splitmix64(base ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

/// Thin deterministic wrapper over mt19937_64. All randomness in the library
/// flows through this type; callers own the stream (no globals). The double
/// conversion is bit-stable across platforms (no std::uniform_real_distribution,
/// whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform on [0,1), 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform on {0, ..., n-1}, unbiased (rejection of the top partial block).
    std::uint64_t uniform_index(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t r = (0 - n) % n; // 2^64 mod n
        std::uint64_t x = gen_();
        if (r != 0) {
            const std::uint64_t bound = 0 - r; // largest multiple of n
            while (x >= bound) x = gen_();
        }
        return x % n;
    }

    /// Poisson via Knuth's product-of-uniforms; large means split in half so
    /// exp(-lambda) stays well inside double range. Deterministic given the
    /// stream, which matters for the byte-identical output contract.
    std::int64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda > 30.0) {
            const double half = lambda / 2.0;
            return poisson(half) + poisson(lambda - half);
        }
        const double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double prod = 1.0;
        do {
            ++k;
            prod *= uniform01();
        } while (prod > limit);
        return k - 1;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace sirnet
