#pragma once

#include <map>
#include <string>
#include <vector>

#include "coexp/impact.hpp"
#include "coexp/network.hpp"

namespace coexp {

// Herfindahl-Hirschman index sum(v^2)/sum(v)^2; rejects all-zero input.
double herfindahl(const std::vector<double>& exposures);

// DI_i = 1 - [ sum_j (s_ji/s_ii)^2 ]^-1 from a valid impact matrix.
double dependency_index(const ImpactMatrix& s, std::size_t lender);

// Weighted mean of per-lender dependency indices, weights = risk-adjusted
// lender totals.
double system_dependency_index(const ExposureNetwork& net, const std::vector<double>& di);

struct OverlapStats {
    std::vector<bool> overlap;             // per borrower: held by >= 2 lenders
    std::vector<double> co_exposure_frac;  // per lender, raw
    std::vector<double> co_weight_frac;    // per lender, risk-adjusted
};

OverlapStats overlap_stats(const ExposureNetwork& net);

// Risk-adjusted exposure fraction per risk category, for each lender and for
// the overlap set as a whole. Fractions sum to 1 per scope.
struct RiskComposition {
    std::vector<int> categories;                     // sorted distinct categories
    std::vector<std::vector<double>> lender_fracs;   // [lender][category pos]
    std::vector<double> overlap_fracs;               // [category pos]
};

RiskComposition risk_composition(const ExposureNetwork& net);

struct LenderConcentration {
    std::string lender;
    double hhi_raw = 0.0;
    double hhi_weighted = 0.0;
    double di = 0.0;
    double co_exposure_frac = 0.0;
    double co_weight_frac = 0.0;
};

struct ConcentrationReport {
    std::vector<LenderConcentration> per_lender;
    double di_sys = 0.0;
};

ConcentrationReport build_concentration_report(const ExposureNetwork& net);

}  // namespace coexp
