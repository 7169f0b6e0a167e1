#pragma once

#include <array>
#include <cstdint>

namespace moonboot {

// Counter-derived random stream built on xoshiro256++
// (https://prng.di.unimi.it/). Streams are value types: copying a
// stream replays it, and two streams derived from distinct
// (seed, index) pairs are independent for simulation purposes.
class Stream {
public:
    Stream() = default;
    explicit Stream(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double u01();

    // Uniform on the open interval (0, 1); safe to pass to log().
    double u01_open();

    // Uniform index in {0, ..., n-1}.
    std::size_t uniform_index(std::size_t n);

    // Standard normal via Box-Muller; the sine partner is cached.
    double normal();

    // Unit-mean exponential.
    double exponential();

    // Laplace(0, scale).
    double laplace(double scale);

private:
    std::array<std::uint64_t, 4> state_{1, 2, 3, 4};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Reproducible per-replicate stream: a nonlinear 64-bit mix of
// (master_seed, index) seeds the stream state. Distinct indices never
// share a state.
Stream derive_stream(std::uint64_t master_seed, std::uint64_t index);

// SplitMix64 finalizer, exposed for tests of the mixing quality.
std::uint64_t mix64(std::uint64_t z);

} // namespace moonboot
