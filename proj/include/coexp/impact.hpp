#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coexp/network.hpp"

namespace coexp {

// Lender-to-lender impact matrix: s_ij = sum_l w_il w_jl / (colsum_l rowsum_j).
// Column-stochastic; entry (i,j) is the impact of lender i on lender j.
struct ImpactMatrix {
    std::vector<std::string> lender_ids;
    std::vector<double> s;  // dense n x n, row-major

    std::size_t size() const { return lender_ids.size(); }
    double operator()(std::size_t i, std::size_t j) const { return s[i * size() + j]; }
};

// Symmetric co-occurrence kernel T_ij = sum_l w_il w_jl / colsum_l over an
// arbitrary column structure. The ratio T_ji / T_ii equals s_ji / s_ii, which
// is all the dependency index needs; computing it directly avoids the row
// normalization. Cost O(sum_l degree_l^2), accumulated in column order.
std::vector<double> cooccurrence_kernel(std::size_t n_lenders,
                                        const std::vector<std::size_t>& col_ptr,
                                        const std::vector<std::uint32_t>& link_lender,
                                        const std::vector<double>& weights);

ImpactMatrix impact_matrix(const ExposureNetwork& net);

// Per-lender dependency indices straight from the co-occurrence kernel.
std::vector<double> dependency_from_kernel(const std::vector<double>& t, std::size_t n);

// Lender pairs (i,j), i<j, with |s_ij - s_ji| above a relative tolerance.
std::vector<std::pair<std::size_t, std::size_t>> asymmetry_pairs(
    const ImpactMatrix& s, double rel_tol = 1e-9);

// One-mode projection onto the borrower side over the top_k borrowers by
// total risk-adjusted exposure. Edge weights use the transpose-symmetric
// analogue of the lender projection (lender and borrower roles swapped).
struct BorrowerProjection {
    std::vector<std::size_t> borrower_indices;  // into net.borrowers()
    std::vector<double> p;                      // dense top_k x top_k, row-major
};

BorrowerProjection borrower_projection(const ExposureNetwork& net, std::size_t top_k);

}  // namespace coexp
