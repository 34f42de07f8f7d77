#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>

namespace xicor {

// GCC/Clang 128-bit integers for exact accumulation.
__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for stream (cell, replicate) under a master seed. For a fixed master
/// the map is injective over cell < 2^32, replicate < 2^32: the packed key is
/// multiplied by an odd constant and passed through mix64, both bijections.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                    std::uint64_t replicate) noexcept {
    const std::uint64_t key = (cell << 32) | (replicate & 0xffffffffULL);
    return mix64(mix64(master) + key * 0xd1342543de82ef95ULL);
}

/// xoshiro256** seeded through SplitMix64. Satisfies
/// std::uniform_random_bit_generator; copy it to fork a stream.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = mix64(s);
            s += 0x9e3779b97f4a7c15ULL;
        }
    }

    /// Generator for the stream identified by (master, cell, replicate).
    static Rng for_stream(std::uint64_t master, std::uint64_t cell,
                          std::uint64_t replicate) noexcept {
        return Rng(derive_seed(master, cell, replicate));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
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

    /// Uniform integer in [0, bound), bound > 0. Lemire's nearly-divisionless
    /// rejection; platform independent unlike std::uniform_int_distribution.
    std::uint64_t below(std::uint64_t bound) noexcept {
        UInt128 m = static_cast<UInt128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<UInt128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Two independent standard normals (Marsaglia polar method).
    std::pair<double, double> normal_pair() noexcept;

    double normal() noexcept { return normal_pair().first; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace xicor
