#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace tcg {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic random stream. std::mt19937_64 has a standard-specified output
// sequence, so seeded runs reproduce bit-for-bit on any platform; the bounded
// and real-valued draws below avoid std::uniform_*_distribution, whose output
// is implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // Independent per-round stream from a master seed and a round index.
    static Rng for_round(uint64_t master_seed, uint64_t round) {
        return Rng(splitmix64(master_seed ^ splitmix64(round + 1)));
    }

    uint64_t next_u64() { return gen_(); }

    bool coin() { return (next_u64() >> 63) != 0; }

    // Unbiased integer in [0, bound) by rejection.
    uint32_t uniform_u32(uint32_t bound) {
        uint64_t threshold = (~uint64_t(0) / bound) * bound;
        uint64_t r;
        do {
            r = next_u64();
        } while (r >= threshold);
        return static_cast<uint32_t>(r % bound);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard complex Gaussian (Box-Muller; polar form would branch on
    // rejection and complicate reproducibility notes, so use the direct form).
    std::complex<double> gaussian() {
        double u1 = uniform_double();
        double u2 = uniform_double();
        while (u1 <= 0.0) u1 = uniform_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace tcg
