#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexp/network.hpp"

namespace coexp {

// Null-model randomization: per trial, link values are permuted within each
// (lender, risk category) cell of the fixed bipartite topology. Per-lender
// HHI, totals, risk composition and the overlap set are conserved exactly;
// the system dependency index is recomputed per trial.
struct RandomizationResult {
    std::vector<double> samples;  // DI_sys per trial
    double observed = 0.0;
    double p_value = 1.0;  // right tail, add-one convention
    bool conserved = true; // per-trial conservation checks all held
};

RandomizationResult randomize_within_risk(const ExposureNetwork& net, std::size_t trials,
                                          std::uint64_t seed, unsigned threads = 1);

// Counterparty downgrade: moves target borrowers to new_category, reweights
// with the step function and reports dependency increases, separately per
// target and jointly, with the convexity difference (joint - sum of singles).
struct DowngradeReport {
    std::vector<std::string> lender_ids;
    std::vector<std::string> targets;
    std::vector<std::vector<double>> single_delta_di;  // [target][lender]
    std::vector<double> single_delta_di_sys;           // [target]
    std::vector<double> joint_delta_di;                // [lender]
    double joint_delta_di_sys = 0.0;
    std::vector<double> convexity;      // [lender] joint - sum singles
    std::vector<double> convexity_pct;  // [lender] 100 * convexity / sum singles
    double convexity_di_sys = 0.0;
    double convexity_di_sys_pct = 0.0;
};

DowngradeReport downgrade(const ExposureNetwork& net, const std::vector<std::string>& targets,
                          int new_category, const StepWeightParams& params);

// Overlap rewiring: per step, two same-class single-lender borrowers of
// different lenders merge into one shared borrower. Per-lender HHI, totals
// and risk composition are conserved; the trajectory records the mean DI_sys
// over independent trials.
struct OverlapGrowth {
    std::vector<double> mean_di_sys;    // index = step, starting at step 0
    std::vector<double> stderr_di_sys;
    std::size_t steps_completed = 0;    // steps reached by every trial
    bool truncated = false;             // some trial ran out of eligible pairs
    bool conserved = true;
};

OverlapGrowth grow_overlap(const ExposureNetwork& net, std::size_t steps, std::size_t trials,
                           std::uint64_t seed, unsigned threads = 1);

// Factor-k stress of one borrower column at a time: scales the borrower's
// risk-adjusted exposures, records the change in DI_sys and in the system
// HHI (exposure-weighted mean of per-lender risk-adjusted HHIs), restores.
struct SensitivityRecord {
    std::string borrower_id;
    double delta_di_sys = 0.0;
    double delta_hhi_sys = 0.0;
};

std::vector<SensitivityRecord> borrower_stress(const ExposureNetwork& net, double factor);

// Synthetic overlapping portfolios from a loan list. Loans aggregate by
// issuer; the risk-adjusted amount is amount/price. A fraction of issuers
// (drawn outside the largest ones) become single-lender borrowers; the rest
// split into tranches of at least min_tranche each, assigned to distinct
// lenders. Risk categories come from issuer price bands (1 = highest price).
struct LoanRecord {
    std::string issuer;
    double amount = 0.0;
    double price = 0.0;
};

struct TrancheGenConfig {
    std::size_t n_lenders = 5;
    double isolated_frac = 0.15;
    double top_exclude_frac = 0.10;
    std::size_t n_tranches = 3;
    double min_tranche = 0.20;
    std::uint64_t seed = 0;
};

ExposureNetwork generate_tranche_network(const std::vector<LoanRecord>& loans,
                                         const TrancheGenConfig& cfg);

}  // namespace coexp
