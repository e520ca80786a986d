// rng.hpp - pinned deterministic pseudo-random generator.
//
// Every randomized result in this project (hop sequences, payload bits,
// channel noise, Monte Carlo trials) is driven by the generator below so
// that outputs are reproducible bit-for-bit across runs, platforms and
// re-implementations in other languages.
//
// Generator specification (frozen, do not change without bumping the
// golden test vectors):
//
//   state' = state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//
// i.e. a plain 64-bit linear congruential step with Knuth's MMIX
// constants. One draw advances the state once and exposes the top 53 bits
// of the new state. Integer ranges are produced by the multiply-shift
// mapping in next_below(); uniform doubles by scaling the 53-bit draw.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace tmafh {

class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // Top 53 bits of one step; the mantissa-sized draw all other outputs
    // are derived from.
    std::uint64_t next_u53() { return next_u64() >> 11; }

    // Uniform integer in [0, n) via 128-bit multiply-shift (unbiased up to
    // 2^-53, exact integer arithmetic so every language reproduces it).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u53()) * n) >> 53);
    }

    // Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u53()) * 0x1p-53; }

    // Uniform double in (0, 1]; safe as a log() argument.
    double next_double_pos() {
        return static_cast<double>(next_u53() + 1) * 0x1p-53;
    }

    // One circularly symmetric complex Gaussian sample, unit variance per
    // complex dimension (0.5 per real component), via Box-Muller.
    std::complex<double> next_complex_gaussian() {
        const double r = std::sqrt(-std::log(next_double_pos()));
        const double phi = 6.283185307179586476925286766559 * next_double();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::uint64_t state_;
};

// SplitMix64 finalizer; used only to derive independent sub-stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream `stream` of a master seed. Monte Carlo code uses
// stream = (grid_point << 32) | block_index, making the trial stream a
// pure function of (seed, point, block) and therefore independent of the
// number of worker threads.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream));
}

} // namespace tmafh
