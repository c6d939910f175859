#include "coexp/kernels.hpp"

#include <stdexcept>

#include "coexp/rng.hpp"

namespace coexp::kernels {

namespace detail {

// Scalar reference kernels. The 4-lane accumulator layout mirrors the AVX2
// register lanes: element i lands in lane i%4, lanes are reduced as
// (l0+l1)+(l2+l3). Keeping the order fixed makes backends bit-identical.

double sum_scalar(const double* v, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += v[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += a[i] * b[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sumsq_scalar(const double* v, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += v[i] * v[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double bernoulli_loss_scalar(const double* pd, const double* lw, std::size_t n,
                             std::uint64_t key) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng::to_unit(rng::at(key, i));
        if (u < pd[i]) lane[i & 3] += lw[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace detail

namespace {

struct Vtable {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sumsq)(const double*, std::size_t);
    double (*bernoulli_loss)(const double*, const double*, std::size_t, std::uint64_t);
};

constexpr Vtable kScalar{detail::sum_scalar, detail::dot_scalar, detail::sumsq_scalar,
                         detail::bernoulli_loss_scalar};
constexpr Vtable kAvx2{detail::sum_avx2, detail::dot_avx2, detail::sumsq_avx2,
                       detail::bernoulli_loss_avx2};

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend g_backend = detect_avx2() ? Backend::Avx2 : Backend::Scalar;

const Vtable& table() { return g_backend == Backend::Avx2 ? kAvx2 : kScalar; }

}  // namespace

Backend active() { return g_backend; }

bool avx2_supported() { return detect_avx2(); }

void select(const std::string& name) {
    if (name == "auto") {
        g_backend = detect_avx2() ? Backend::Avx2 : Backend::Scalar;
    } else if (name == "scalar") {
        g_backend = Backend::Scalar;
    } else if (name == "avx2") {
        if (!detect_avx2()) throw std::runtime_error("kernels: avx2 not supported on this cpu");
        g_backend = Backend::Avx2;
    } else {
        throw std::invalid_argument("kernels: unknown backend '" + name + "'");
    }
}

const char* backend_name() { return g_backend == Backend::Avx2 ? "avx2" : "scalar"; }

double sum(const double* v, std::size_t n) { return table().sum(v, n); }
double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
double sumsq(const double* v, std::size_t n) { return table().sumsq(v, n); }
double bernoulli_loss(const double* pd, const double* lw, std::size_t n, std::uint64_t key) {
    return table().bernoulli_loss(pd, lw, n, key);
}

}  // namespace coexp::kernels
