#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cheese {

// Deterministic PRNG shared by every randomized operation. std::mt19937 is
// portable but the standard distributions are not, so ranges and reals are
// derived here from a fixed splitmix64 stream and nothing else.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Named sub-seed derivation: all randomness flows from one top-level seed,
/// so any single stage can be replayed in isolation.
inline std::uint64_t derive_seed(std::uint64_t parent, const std::string& name,
                                 std::uint64_t counter = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the name
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(parent ^ splitmix64(h) ^ (counter * 0x9e3779b97f4a7c15ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0, n) by rejection; n == 0 is a contract error.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi_inclusive) {
        return lo + below(hi_inclusive - lo + 1);
    }

    /// Bernoulli(p_num/p_den) with exact integer comparison.
    bool bernoulli_ratio(std::uint64_t p_num, std::uint64_t p_den) {
        return below(p_den) < p_num;
    }

    double unit_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace cheese
