#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qec5 {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with implementation-independent uniforms (the standard
// library distributions are not portable, so doubles are built from raw
// 64-bit draws directly).
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(splitmix64(seed)) {}

    std::uint64_t u64() { return eng(); }

    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform over 0..n-1.
    int uniform_int(int n) { return static_cast<int>(u64() % static_cast<std::uint64_t>(n)); }

    double gaussian() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Independent stream for one Monte Carlo shot.
    static Rng for_shot(std::uint64_t seed, std::uint64_t shot) {
        return Rng(splitmix64(seed) ^ splitmix64(shot * 0x9e3779b97f4a7c15ULL + 1));
    }
};

}  // namespace qec5
