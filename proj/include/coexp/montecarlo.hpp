#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coexp {

struct SimConfig {
    std::size_t iterations = 100000;
    double q = 0.999;
    std::uint64_t seed = 0;
    std::optional<double> downturn_a;  // stressed pd = sqrt(a * pd) when set
    bool keep_samples = false;
    unsigned threads = 1;

    void validate() const;
};

struct SimPosition {
    double share = 0.0;  // fraction of the lender's total exposure
    double pd = 0.0;
    double lgd = 0.0;
};

struct SimResult {
    double el = 0.0;
    double var = 0.0;
    double ul = 0.0;
    std::vector<double> losses;  // kept only when keep_samples
    std::string warning;         // e.g. poorly resolved quantile
};

// Downturn transform sqrt(a * pd), clamped to 1.
double downturn_pd(double pd, double a);

// Independent-default loss simulation. Per iteration, borrower i defaults
// iff u < pd_i; the loss is sum over defaults of share_i * lgd_i. EL is the
// sample mean, VaR the ceil(q N)-th smallest loss, UL = VaR - EL. Identical
// results for identical (portfolio, config) regardless of thread count.
SimResult simulate_losses(const std::vector<SimPosition>& portfolio, const SimConfig& cfg);

}  // namespace coexp
