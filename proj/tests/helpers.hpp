#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexp/impact.hpp"
#include "coexp/network.hpp"
#include "coexp/rng.hpp"

namespace coexp::testing {

// Smallest network with a common exposure: lender A holds borrowers 1,2;
// lender B holds 2,3. Weights (a, b | c, d) with borrower 2 shared.
inline ExposureNetwork building_block(double w_a1 = 1.0, double w_a2 = 1.0, double w_b2 = 1.0,
                                      double w_b3 = 1.0) {
    NetworkBuilder builder;
    builder.add("A", "1", w_a1);
    builder.add("A", "2", w_a2);
    builder.add("B", "2", w_b2);
    builder.add("B", "3", w_b3);
    for (const char* id : {"1", "2", "3"}) builder.set_risk_category(id, 1);
    return builder.build();
}

struct RandomNetConfig {
    std::size_t n_lenders = 5;
    std::size_t n_borrowers = 30;
    std::size_t max_degree = 3;
    int n_categories = 4;
    bool with_pd_lgd = false;
    // Guarantee every lender pair shares at least one borrower.
    bool connect_all_pairs = false;
};

inline ExposureNetwork random_network(std::uint64_t seed, const RandomNetConfig& cfg = {}) {
    Stream stream(seed, 0);
    NetworkBuilder builder;
    const auto lender_name = [](std::size_t i) { return "L" + std::to_string(i); };
    const auto borrower_name = [](std::size_t b) { return "b" + std::to_string(b); };

    std::vector<bool> lender_used(cfg.n_lenders, false);
    for (std::size_t b = 0; b < cfg.n_borrowers; ++b) {
        const std::size_t deg =
            1 + static_cast<std::size_t>(stream.next_below(
                    std::min<std::uint64_t>(cfg.max_degree, cfg.n_lenders)));
        std::vector<std::size_t> picks(cfg.n_lenders);
        for (std::size_t i = 0; i < cfg.n_lenders; ++i) picks[i] = i;
        for (std::size_t i = 0; i < deg; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(stream.next_below(cfg.n_lenders - i));
            std::swap(picks[i], picks[j]);
            lender_used[picks[i]] = true;
            builder.add(lender_name(picks[i]), borrower_name(b),
                        0.1 + 9.9 * stream.next_unit());
        }
        const int cat = 1 + static_cast<int>(stream.next_below(cfg.n_categories));
        builder.set_risk_category(borrower_name(b), cat);
        if (cfg.with_pd_lgd) {
            builder.set_pd(borrower_name(b), 0.002 + 0.15 * stream.next_unit());
            builder.set_lgd(borrower_name(b), 0.2 + 0.7 * stream.next_unit());
        }
    }
    // Keep every lender populated.
    for (std::size_t i = 0; i < cfg.n_lenders; ++i) {
        if (lender_used[i]) continue;
        const std::string id = "extra" + std::to_string(i);
        builder.add(lender_name(i), id, 0.5 + stream.next_unit());
        builder.set_risk_category(id, 1);
        if (cfg.with_pd_lgd) {
            builder.set_pd(id, 0.01);
            builder.set_lgd(id, 0.5);
        }
    }
    if (cfg.connect_all_pairs) {
        std::size_t shared = 0;
        for (std::size_t i = 0; i < cfg.n_lenders; ++i) {
            for (std::size_t j = i + 1; j < cfg.n_lenders; ++j) {
                const std::string id = "pair" + std::to_string(shared++);
                builder.add(lender_name(i), id, 0.5 + stream.next_unit());
                builder.add(lender_name(j), id, 0.5 + stream.next_unit());
                builder.set_risk_category(id, 1 + static_cast<int>(stream.next_below(
                                                      cfg.n_categories)));
                if (cfg.with_pd_lgd) {
                    builder.set_pd(id, 0.002 + 0.15 * stream.next_unit());
                    builder.set_lgd(id, 0.2 + 0.7 * stream.next_unit());
                }
            }
        }
    }
    return builder.build();
}

// Dense triple-loop oracle for the impact matrix.
inline std::vector<double> dense_impact_oracle(const ExposureNetwork& net) {
    const std::size_t n = net.n_lenders(), m = net.n_borrowers();
    std::vector<double> w(n * m, 0.0);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            w[net.link_lender()[k] * m + b] = net.weighted_values()[k];

    std::vector<double> colsum(m, 0.0), rowsum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < m; ++b) {
            colsum[b] += w[i * m + b];
            rowsum[i] += w[i * m + b];
        }
    std::vector<double> s(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t b = 0; b < m; ++b)
                acc += w[i * m + b] * w[j * m + b] / (colsum[b] * rowsum[j]);
            s[i * n + j] = acc;
        }
    return s;
}

}  // namespace coexp::testing
