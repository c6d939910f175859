#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coexp/calibrate.hpp"
#include "coexp/capital.hpp"
#include "coexp/coexposure.hpp"
#include "coexp/montecarlo.hpp"
#include "coexp/network.hpp"

namespace coexp {

// Full per-lender capital stack: IRB capital, granularity adjustment,
// co-exposure add-on and its double-counting correction.
struct LenderCapital {
    std::string lender;
    double k = 0.0;
    double gamma = 0.0;
    double x_ce = 0.0;
    double r = 1.0;
    double k_ce = 0.0;
    double k_total = 0.0;
    bool k_ce_floored = false;
};

struct CapitalReport {
    std::vector<LenderCapital> lenders;
    std::vector<double> delta_di_sys;  // per borrower, from the stress run
    bool downturn_applied = false;
    double alpha = 0.0;
    double eta = 0.0;
    double stress_factor = 0.0;
};

// Computes the capital table. Requires pd and lgd on every borrower; when
// downturn_a is set, all analytic formulas use the stressed pd sqrt(a pd).
// The per-borrower dependency increments come from the factor stress of the
// risk-adjusted network as given (the stress itself is never downturned).
CapitalReport build_capital_report(const ExposureNetwork& net, const CapitalParams& capital,
                                   const CoexposureParams& coexposure,
                                   std::optional<double> downturn_a);

// Per-lender share/pd/lgd triples for the loss simulation.
std::vector<std::vector<SimPosition>> lender_portfolios(const ExposureNetwork& net);

// Assembles calibration inputs: per-lender gap = UL - (K + Gamma) plus the
// cached co-exposure terms, everything under the same downturn scenario.
std::vector<CalibrationLender> calibration_inputs(const ExposureNetwork& net,
                                                  const CapitalParams& capital,
                                                  const CoexposureParams& coexposure,
                                                  const SimConfig& sim);

}  // namespace coexp
