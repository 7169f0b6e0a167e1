#include "moonboot/rng.hpp"

#include <cmath>

namespace moonboot {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

Stream::Stream(std::uint64_t seed) {
    // SplitMix64 sequence seeds the xoshiro state, per the generator
    // authors' recommendation.
    std::uint64_t s = seed;
    for (auto& w : state_) {
        s += kGolden;
        w = mix64(s);
    }
}

Stream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    // Two finalizer rounds decorrelate seed and index before the
    // stream is seeded; (s, i) -> state is injective in practice.
    std::uint64_t z = mix64(master_seed ^ mix64(index + kGolden));
    return Stream(z);
}

std::uint64_t Stream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Stream::u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::u01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t Stream::uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double Stream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = u01_open();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double Stream::exponential() {
    return -std::log(u01_open());
}

double Stream::laplace(double scale) {
    const double u = u01_open() - 0.5;
    const double mag = -scale * std::log(1.0 - 2.0 * std::abs(u));
    return u < 0.0 ? -mag : mag;
}

} // namespace moonboot
