#ifndef PLSSTOP_RNG_HPP
#define PLSSTOP_RNG_HPP

#include <cstdint>
#include <random>

// Deterministic random numbers.
//
// Every stochastic routine in the library takes an explicit 64-bit seed and
// derives its own substream; nothing reads global state. Substreams are
// derived with a SplitMix64 mixing chain: derive(seed, k1, k2, ...) feeds
// each key through the finalizer so that sibling streams (different
// replicate / cell / criterion indices) are statistically independent and
// independent of evaluation order. The workhorse engine is std::mt19937_64
// (seedable, 64-bit output, >64-bit state).
//
// Integer draws in [0, n) use rejection sampling on raw engine output
// because std::uniform_int_distribution is implementation-defined; the
// normal/Poisson distributions from <random> are used where per-platform
// bit-stability is not part of the reproducibility contract (reruns of the
// same binary are always byte-identical).

namespace plsstop::rng {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(splitmix64(seed) ^ splitmix64(key + 1));
}

template <typename... Keys>
std::uint64_t derive(std::uint64_t seed, std::uint64_t key, Keys... rest) {
    return derive(derive(seed, key), rest...);
}

inline std::mt19937_64 engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Uniform draw in [0, n), n >= 1, via rejection on the top bits.
inline std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace plsstop::rng

#endif
