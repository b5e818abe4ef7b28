#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dupdel {

// Deterministic random source used by every simulator.
//
// Seeding contract: replica i of an ensemble with master seed s is seeded
// with the i-th output of a splitmix64 stream started at s,
//
//     z      = s + (i + 1) * 0x9E3779B97F4A7C15
//     z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z      = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     seed_i = z ^ (z >> 31)
//
// and a single run is replica 0. The engine is std::mt19937_64, whose output
// for a given seed is fixed by the standard, and all conversions to doubles
// and bounded integers are implemented here rather than with the
// implementation-defined std <random> distributions, so byte-identical
// streams are reproducible across compilers and platforms.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica) {
        std::uint64_t z = master_seed + (replica + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static RandomSource for_replica(std::uint64_t master_seed, std::uint64_t replica) {
        return RandomSource(replica_seed(master_seed, replica));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) using the top 53 bits (every value is exactly
    // representable; 1.0 is never returned).
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return u01() < p; }

    // Exponential waiting time; log1p keeps the argument away from log(0).
    double exponential(double rate) { return -std::log1p(-u01()) / rate; }

    // Uniform integer in [0, n) for n >= 1 (Lemire multiply-shift, unbiased
    // via rejection of the short low-word range).
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dupdel
