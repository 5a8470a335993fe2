#pragma once

#include <cstdint>

namespace perco {

// Counter-style randomness: every uniform is a pure function of the key
// words fed into the hash, so row streaming, whole-window sampling and
// coupled chains all read the same number for the same bond without any
// sequential state. Bit-compatibility is promised within one build only.

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct KeyedRng {
    std::uint64_t state;

    explicit KeyedRng(std::uint64_t seed) : state(mix64(seed ^ 0x6a09e667f3bcc908ULL)) {}

    KeyedRng& absorb(std::uint64_t v) {
        state = mix64(state ^ (v * 0xff51afd7ed558ccdULL));
        return *this;
    }
    KeyedRng& absorb_i(std::int64_t v) {
        return absorb(static_cast<std::uint64_t>(v) + 0x8000000000000000ULL);
    }

    std::uint64_t bits() const { return mix64(state); }

    double uniform() const {
        return static_cast<double>(bits() >> 11) * 0x1.0p-53;
    }
};

// Stream tags keep unrelated consumers of the same (seed, replica) pair
// on disjoint randomness.
enum : std::uint64_t {
    kStreamBond = 1,
    kStreamRcm = 2,
    kStreamMisc = 3,
};

struct SeedSpec {
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
};

} // namespace perco
