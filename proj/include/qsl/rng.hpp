// rng.hpp — seed-deterministic pseudo-random numbers for samplers and tests.
//
// xorshift64* stream seeded through one round of splitmix64 so that every
// seed (including 0) yields a nonzero internal state. The sequence is fixed
// by the algorithm, not the platform, so results reproduce everywhere.

#pragma once

#include <cmath>
#include <cstdint>

namespace qsl {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
        if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dULL;
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // standard exponential, strictly positive
    double exponential() {
        return -std::log1p(-uniform());
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        return next_u64() % n;
    }

    // derive an independent stream, e.g. one per restart or grid point
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
};

} // namespace qsl
