#pragma once

#include <string>
#include <vector>

#include "coexp/coexposure.hpp"

namespace coexp {

// Gap between simulated unexpected loss and the analytic capital stack.
double capital_gap(double ul, double k_plus_gamma);

struct CalibrationLender {
    std::string lender;
    double gap = 0.0;  // UL - (K + Gamma), same downturn scenario on both sides
    double r = 1.0;
    std::vector<CoexposureTerm> terms;
};

struct FitConfig {
    std::size_t eta_grid = 32;   // log-spaced
    double eta_min = 0.1;
    double eta_max = 1000.0;
    std::size_t alpha_grid = 21; // linear on [0,1]
    double rel_tol = 1e-6;
    std::size_t max_refine_iters = 400;
};

struct CalibrationResult {
    double alpha = 0.0;
    double eta = 0.0;
    double rss = 0.0;
    std::vector<std::string> excluded;   // lenders with gap <= 0 (target K_CE = 0)
    std::vector<double> gaps;            // per input lender
    std::vector<double> fitted_k_ce;     // per input lender at (alpha, eta)
};

// Least-squares fit of (alpha, eta) so the co-exposure add-on matches the
// positive per-lender gaps: coarse grid search, then a Nelder-Mead style
// refinement projected onto alpha in [0,1], eta >= 0. Deterministic; grid
// ties resolve toward the smallest eta.
CalibrationResult fit_addon_parameters(const std::vector<CalibrationLender>& lenders,
                                       const FitConfig& cfg);

}  // namespace coexp
