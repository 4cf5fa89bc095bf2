#ifndef FINPHASE_RNG_HPP
#define FINPHASE_RNG_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

namespace finphase {

namespace detail {
__extension__ typedef unsigned __int128 uint128;
} // namespace detail

/// SplitMix64 (Steele, Lea, Flood). Used to expand a 64-bit seed into
/// generator state and to derive independent child streams.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** (Blackman, Vigna) seeded through SplitMix64.
///
/// The helpers below avoid the standard library distributions so that a
/// given seed yields the same stream on every platform and toolchain:
///  - uniform01: top 53 bits scaled by 2^-53, in [0, 1)
///  - uniform_index: Lemire's nearly-divisionless bounded draw, in [0, n)
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept
    {
        SplitMix64 sm(seed);
        for (auto& w : s_)
            w = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }

    result_type next() noexcept
    {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) noexcept
    {
        detail::uint128 m = static_cast<detail::uint128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<detail::uint128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

} // namespace finphase

#endif // FINPHASE_RNG_HPP
