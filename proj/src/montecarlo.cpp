#include "coexp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coexp/kernels.hpp"
#include "coexp/parallel.hpp"
#include "coexp/rng.hpp"

namespace coexp {

void SimConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("simulate: iterations must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("simulate: q must lie in (0,1)");
    if (downturn_a && !(*downturn_a > 0.0 && *downturn_a <= 1.0))
        throw std::invalid_argument("simulate: downturn_a must lie in (0,1]");
}

double downturn_pd(double pd, double a) {
    if (!(pd >= 0.0 && pd <= 1.0)) throw std::domain_error("downturn_pd: pd out of [0,1]");
    if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("downturn_pd: a out of (0,1]");
    return std::min(1.0, std::sqrt(a * pd));
}

SimResult simulate_losses(const std::vector<SimPosition>& portfolio, const SimConfig& cfg) {
    cfg.validate();
    if (portfolio.empty()) throw std::invalid_argument("simulate: empty portfolio");

    const std::size_t n = portfolio.size();
    std::vector<double> pd(n), lw(n);
    double share_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = portfolio[i];
        if (!(p.pd >= 0.0 && p.pd <= 1.0)) throw std::invalid_argument("simulate: pd out of [0,1]");
        if (!(p.lgd >= 0.0 && p.lgd <= 1.0))
            throw std::invalid_argument("simulate: lgd out of [0,1]");
        if (!(p.share >= 0.0)) throw std::invalid_argument("simulate: negative share");
        share_total += p.share;
        pd[i] = cfg.downturn_a ? downturn_pd(p.pd, *cfg.downturn_a) : p.pd;
        lw[i] = p.share * p.lgd;
    }
    if (std::abs(share_total - 1.0) > 1e-9)
        throw std::invalid_argument("simulate: shares must sum to 1");

    const std::size_t iters = cfg.iterations;
    std::vector<double> losses(iters);
    constexpr std::size_t kChunk = 4096;
    const std::size_t n_chunks = (iters + kChunk - 1) / kChunk;
    std::vector<double> chunk_sums(n_chunks, 0.0);

    parallel_chunks(iters, kChunk, cfg.threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        double acc = 0.0;
                        for (std::size_t it = begin; it < end; ++it) {
                            const double loss = kernels::bernoulli_loss(
                                pd.data(), lw.data(), n, rng::stream_key(cfg.seed, it));
                            losses[it] = loss;
                            acc += loss;
                        }
                        chunk_sums[chunk] = acc;
                    });

    double el = 0.0;
    for (double s : chunk_sums) el += s;
    el /= static_cast<double>(iters);

    // VaR: ceil(q N)-th order statistic (1-based) of the sorted losses.
    const auto rank = static_cast<std::size_t>(
        std::ceil(cfg.q * static_cast<double>(iters)));
    const std::size_t idx = std::min(iters, std::max<std::size_t>(1, rank)) - 1;
    std::vector<double> sorted(losses);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx),
                     sorted.end());
    const double var = sorted[idx];

    SimResult res;
    res.el = el;
    res.var = var;
    res.ul = var - el;
    if (static_cast<double>(iters) * (1.0 - cfg.q) < 10.0)
        res.warning = "quantile poorly resolved: iterations * (1 - q) < 10";
    if (cfg.keep_samples) res.losses = std::move(losses);
    return res;
}

}  // namespace coexp
