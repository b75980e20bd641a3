/**
 * Rng — seeded deterministic generator (xoshiro256++ core, splitmix64 seeding).
 *
 * Identical seeds produce identical streams. Independent substreams are
 * derived statelessly from the root seed, so Monte-Carlo trials can be
 * fanned across any number of workers without changing the results.
 *
 * Header-only; hot path for the Monte-Carlo harnesses.
 */

#ifndef RADNAV_RNG_HPP
#define RADNAV_RNG_HPP

#include <cstdint>

namespace radnav {

class Rng {
public:
    explicit Rng(uint64_t seed) : root_seed_(seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Generator for substream `id`, derived from the root seed only.
    /// Rng(s).substream(id) is the same no matter how much of the parent
    /// stream has been consumed.
    Rng substream(uint64_t id) const {
        uint64_t x = root_seed_ ^ (0x9E3779B97F4A7C15ULL * (id + 1));
        uint64_t derived = splitmix64(x);
        return Rng(derived ^ splitmix64(x));
    }

    uint64_t root_seed() const { return root_seed_; }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t root_seed_;
    uint64_t s_[4];
};

} // namespace radnav

#endif // RADNAV_RNG_HPP
