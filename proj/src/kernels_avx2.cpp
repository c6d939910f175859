// AVX2 kernel variants. Compiled with -mavx2 but without -mfma so the
// compiler cannot contract mul+add; the scalar reference then matches
// bit for bit.

#include "coexp/kernels.hpp"
#include "coexp/rng.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace coexp::kernels::detail {

namespace {

inline double reduce_lanes(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

// 64x64 -> low 64 multiply (AVX2 has no 64-bit mullo).
inline __m256i mullo64(__m256i a, __m256i b) {
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i ahi = _mm256_srli_epi64(a, 32);
    const __m256i bhi = _mm256_srli_epi64(b, 32);
    const __m256i cross =
        _mm256_add_epi64(_mm256_mul_epu32(ahi, b), _mm256_mul_epu32(a, bhi));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i splitmix_fin(__m256i z) {
    const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL));
    const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL));
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), m1);
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), m2);
    return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// (z >> 12) * 2^-52 for z >> 12 < 2^52, via the exponent-bias trick.
inline __m256d to_unit(__m256i z) {
    const __m256i mant = _mm256_srli_epi64(z, 12);
    const __m256i biased =
        _mm256_or_si256(mant, _mm256_set1_epi64x(0x4330000000000000LL));
    const __m256d shifted =
        _mm256_sub_pd(_mm256_castsi256_pd(biased), _mm256_set1_pd(0x1.0p52));
    return _mm256_mul_pd(shifted, _mm256_set1_pd(0x1.0p-52));
}

}  // namespace

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += v[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += a[i] * b[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sumsq_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += v[i] * v[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double bernoulli_loss_avx2(const double* pd, const double* lw, std::size_t n,
                           std::uint64_t key) {
    const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * rng::kGolden));
    __m256i ctr = _mm256_add_epi64(
        _mm256_set1_epi64x(static_cast<long long>(key)),
        _mm256_set_epi64x(static_cast<long long>(4 * rng::kGolden),
                          static_cast<long long>(3 * rng::kGolden),
                          static_cast<long long>(2 * rng::kGolden),
                          static_cast<long long>(1 * rng::kGolden)));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d u = to_unit(splitmix_fin(ctr));
        ctr = _mm256_add_epi64(ctr, step);
        const __m256d mask = _mm256_cmp_pd(u, _mm256_loadu_pd(pd + i), _CMP_LT_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(lw + i)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) {
        const double u = rng::to_unit(rng::at(key, i));
        if (u < pd[i]) lane[i & 3] += lw[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace coexp::kernels::detail

#else  // !__AVX2__

namespace coexp::kernels::detail {

double sum_avx2(const double* v, std::size_t n) { return sum_scalar(v, n); }
double dot_avx2(const double* a, const double* b, std::size_t n) { return dot_scalar(a, b, n); }
double sumsq_avx2(const double* v, std::size_t n) { return sumsq_scalar(v, n); }
double bernoulli_loss_avx2(const double* pd, const double* lw, std::size_t n,
                           std::uint64_t key) {
    return bernoulli_loss_scalar(pd, lw, n, key);
}

}  // namespace coexp::kernels::detail

#endif
