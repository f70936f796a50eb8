#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace plwe {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic named substream: the same (master, label) pair always yields
/// the same seed, distinct labels yield independent-looking streams.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view label) {
    return splitmix64(master ^ (fnv1a64(label) * 0x9e3779b97f4a7c15ULL));
}

/// Seeded generator with explicit draw algorithms, so streams are reproducible
/// across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on {0, ..., bound-1} by rejection, bias-free.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        while (true) {
            std::uint64_t r = next_u64();
            if (r < limit) return r % bound;
        }
    }

    /// Uniform on (0, 1], 53-bit resolution. Never returns 0, so log() is safe.
    double unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
    }

    /// N(0, sigma^2) via Box-Muller (fresh pair each call, no cached spare).
    double gaussian(double sigma) {
        double u1 = unit_open();
        double u2 = unit_open();
        double r = std::sqrt(-2.0 * std::log(u1));
        return sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Discretized Gaussian: round a real N(0, sigma^2) draw to the nearest integer.
    std::int64_t gaussian_int(double sigma) {
        return std::llround(gaussian(sigma));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace plwe
