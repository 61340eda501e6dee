#pragma once

#include <cstdint>
#include <random>

namespace drmst {

/// splitmix64 step; used to derive well-separated substream seeds from one
/// user-facing seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed for substream `tag` of the stream identified by `seed`. Pure.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (tag * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull);
    return splitmix64(s);
}

/// Deterministic random stream. Uniform doubles are produced from the top 53
/// bits of the underlying generator so results do not depend on the standard
/// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Modulo bias is irrelevant at the sizes used here (n << 2^64).
        return gen_() % n;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace drmst
