#include "coexp/impact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coexp {

std::vector<double> cooccurrence_kernel(std::size_t n_lenders,
                                        const std::vector<std::size_t>& col_ptr,
                                        const std::vector<std::uint32_t>& link_lender,
                                        const std::vector<double>& weights) {
    const std::size_t n = n_lenders;
    std::vector<double> t(n * n, 0.0);
    const std::size_t m = col_ptr.size() - 1;
    for (std::size_t b = 0; b < m; ++b) {
        const std::size_t lo = col_ptr[b], hi = col_ptr[b + 1];
        double colsum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) colsum += weights[k];
        if (!(colsum > 0.0)) throw std::runtime_error("impact matrix: zero borrower column");
        const double inv = 1.0 / colsum;
        for (std::size_t a = lo; a < hi; ++a) {
            const double wa = weights[a] * inv;
            double* row = t.data() + static_cast<std::size_t>(link_lender[a]) * n;
            for (std::size_t c = lo; c < hi; ++c) row[link_lender[c]] += wa * weights[c];
        }
    }
    return t;
}

ImpactMatrix impact_matrix(const ExposureNetwork& net) {
    const std::size_t n = net.n_lenders();
    const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(),
                                       net.weighted_values());
    const auto rowsum = net.lender_totals_weighted();
    for (std::size_t j = 0; j < n; ++j)
        if (!(rowsum[j] > 0.0)) throw std::runtime_error("impact matrix: zero lender row");

    ImpactMatrix out;
    out.lender_ids = net.lender_ids();
    out.s.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.s[i * n + j] = t[i * n + j] / rowsum[j];
    return out;
}

std::vector<double> dependency_from_kernel(const std::vector<double>& t, std::size_t n) {
    std::vector<double> di(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tii = t[i * n + i];
        if (!(tii > 0.0)) throw std::runtime_error("dependency index: zero diagonal");
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double r = t[j * n + i] / tii;
            acc += r * r;
        }
        di[i] = 1.0 - 1.0 / acc;
    }
    return di;
}

std::vector<std::pair<std::size_t, std::size_t>> asymmetry_pairs(const ImpactMatrix& s,
                                                                 double rel_tol) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = s(i, j), b = s(j, i);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            if (std::abs(a - b) > rel_tol * scale) out.emplace_back(i, j);
        }
    }
    return out;
}

BorrowerProjection borrower_projection(const ExposureNetwork& net, std::size_t top_k) {
    if (top_k == 0) throw std::invalid_argument("borrower projection: top_k must be positive");
    if (top_k > net.n_borrowers())
        throw std::invalid_argument("borrower projection: top_k exceeds borrower count");

    const auto totals = net.borrower_totals_weighted();
    std::vector<std::size_t> order(net.n_borrowers());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });
    order.resize(top_k);

    // Row-major view of the selected columns per lender.
    const std::size_t n = net.n_lenders();
    std::vector<std::vector<std::pair<std::size_t, double>>> lender_rows(n);
    for (std::size_t pos = 0; pos < top_k; ++pos) {
        const std::size_t b = order[pos];
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            lender_rows[net.link_lender()[k]].emplace_back(pos, net.weighted_values()[k]);
    }

    const auto rowsum = net.lender_totals_weighted();
    std::vector<double> coltot(top_k, 0.0);
    for (std::size_t pos = 0; pos < top_k; ++pos) coltot[pos] = totals[order[pos]];

    // p_kl = sum_i w_ik w_il / (rowsum_i * colsum_l)
    BorrowerProjection out;
    out.borrower_indices = order;
    out.p.assign(top_k * top_k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double inv = 1.0 / rowsum[i];
        for (const auto& [k, wk] : lender_rows[i]) {
            const double scaled = wk * inv;
            for (const auto& [l, wl] : lender_rows[i]) out.p[k * top_k + l] += scaled * wl;
        }
    }
    for (std::size_t k = 0; k < top_k; ++k)
        for (std::size_t l = 0; l < top_k; ++l) out.p[k * top_k + l] /= coltot[l];
    return out;
}

}  // namespace coexp
