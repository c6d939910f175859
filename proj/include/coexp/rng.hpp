#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>

namespace coexp {

// Counter-based pseudo-random numbers built on the SplitMix64 finalizer.
// All stochastic operations derive independent streams from (seed, index),
// so parallel and serial runs produce identical results.

namespace rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream key for the idx-th substream of a seed (trial index, iteration, ...).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t idx) {
    return mix(mix(seed + kGolden) ^ (idx + 0x632be59bd9b4e019ULL));
}

// n-th value of the counter sequence rooted at key.
inline std::uint64_t at(std::uint64_t key, std::uint64_t n) {
    return mix(key + (n + 1) * kGolden);
}

inline double to_unit(std::uint64_t z) {
    // 52 uniform bits; the AVX2 kernel uses the same mapping bit for bit.
    return static_cast<double>(z >> 12) * 0x1.0p-52;
}

}  // namespace rng

// Sequential generator view over a counter stream.
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    Stream(std::uint64_t seed, std::uint64_t idx) : key_(rng::stream_key(seed, idx)) {}

    std::uint64_t next_u64() { return rng::at(key_, n_++); }

    double next_unit() { return rng::to_unit(next_u64()); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

    // Exp(1) variate.
    double next_exp() { return -std::log1p(-next_unit()); }

    template <typename T>
    void shuffle(T* data, std::size_t n) {
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            T tmp = data[i - 1];
            data[i - 1] = data[j];
            data[j] = tmp;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t n_ = 0;
};

}  // namespace coexp
