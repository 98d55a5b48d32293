#pragma once

#include <concepts>
#include <cstdint>

namespace gamut {

// Source of uniform draws. Mutation operators and the GA are generic over
// this so tests can substitute a scripted source with pinned draws.
template <typename R>
concept UniformRandomSource = requires(R& r, std::uint64_t bound) {
    { r.uniform_index(bound) } -> std::convertible_to<std::uint64_t>;
};

// xoshiro256** seeded via splitmix64. Self-contained so that identical
// (seed, stream) pairs give identical draw sequences on every platform,
// which the standard-library distributions do not guarantee.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound). bound must be nonzero.
    std::uint64_t uniform_index(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

static_assert(UniformRandomSource<RngStream>);

}  // namespace gamut
