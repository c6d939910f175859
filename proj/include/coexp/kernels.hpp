#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace coexp::kernels {

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant selected at runtime. Both backends use the same fixed 4-lane
// blocked accumulation order, so results are bit-identical across backends
// and across thread counts.

enum class Backend { Scalar, Avx2 };

Backend active();
bool avx2_supported();
// Force a backend ("scalar", "avx2", "auto"). Throws if unsupported.
void select(const std::string& name);
const char* backend_name();

double sum(const double* v, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* v, std::size_t n);

// One Monte Carlo iteration over a portfolio: borrower i defaults iff
// u_i < pd[i] with u_i drawn from the counter stream rooted at key;
// returns the summed loss weight of defaulted borrowers.
double bernoulli_loss(const double* pd, const double* loss_weight, std::size_t n,
                      std::uint64_t key);

namespace detail {
double sum_scalar(const double* v, std::size_t n);
double dot_scalar(const double* a, const double* b, std::size_t n);
double sumsq_scalar(const double* v, std::size_t n);
double bernoulli_loss_scalar(const double* pd, const double* lw, std::size_t n,
                             std::uint64_t key);
double sum_avx2(const double* v, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
double sumsq_avx2(const double* v, std::size_t n);
double bernoulli_loss_avx2(const double* pd, const double* lw, std::size_t n,
                           std::uint64_t key);
}  // namespace detail

}  // namespace coexp::kernels
