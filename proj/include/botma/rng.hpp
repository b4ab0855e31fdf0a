#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace botma {

/**
 * Deterministic random stream for simulation and solvers.
 *
 * Wraps a mt19937_64 engine but generates uniform/normal variates with
 * explicit code (53-bit mapping, Box-Muller) instead of std::*_distribution,
 * so a given seed produces the same sequence on every standard library.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + uniform01() * (b - a); }

    /// Uniform integer index in [0, n). Requires n > 0.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Gaussian sample via Box-Muller. u1 is kept in (0, 1] so log() is finite.
    double normal(double mean, double sigma) {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 engine_;
};

/**
 * Counter-mode sub-seed derivation (splitmix64 finalizer over
 * master + (index+1)*golden gamma).
 *
 * Run k of a Monte Carlo campaign draws its noise stream from
 * derive_seed(master, 2k) and its solver stream from derive_seed(master, 2k+1),
 * so adding runs never perturbs the seeds of earlier runs.
 */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace botma
