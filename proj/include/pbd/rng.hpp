#pragma once

#include <cmath>
#include <cstdint>

namespace pbd {

// Counter-based deterministic random generator. Output depends only on
// (key, counter), so streams are bit-reproducible across platforms and can
// be forked into independent child streams without sharing state.
//
// The mixing function is SplitMix64 applied to key ^ golden-ratio-stepped
// counter; statistical quality is ample for Monte Carlo use here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

    std::uint64_t next_u64() {
        std::uint64_t x = key_ + 0x9e3779b97f4a7c15ULL * ++counter_;
        return mix(x);
    }

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; convenient for log().
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Consumes two uniforms per draw and
    // keeps no cached state, so stream position stays easy to reason about.
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Independent child stream addressed by `salt`. Forking at every tree
    // node makes search results independent of evaluation order.
    Rng fork(std::uint64_t salt) const {
        Rng child(0);
        child.key_ = mix(key_ ^ mix(salt + 0x9e3779b97f4a7c15ULL));
        child.counter_ = 0;
        return child;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace pbd
