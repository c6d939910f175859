#pragma once

#include <optional>
#include <string>
#include <vector>

namespace coexp {

struct CapitalParams {
    double q = 0.999;          // systematic factor percentile
    double delta = 4.83;       // granularity adjustment regulatory parameter
    double gamma = 0.25;       // LGD variance mix in C_i
    double maturity = 1.0;     // years; MA = 1 at M = 1
    bool b_squared = true;     // square the maturity slope (Basel form)
    // Asset correlation: fixed value, or the Basel corporate curve if unset.
    std::optional<double> rho;

    void validate() const;
};

// Basel corporate correlation curve.
double basel_corporate_rho(double pd);

double resolve_rho(const CapitalParams& p, double pd);

// Maturity adjustment (1 + (M-2.5)b) / (1 - 1.5b), b = 0.119 - 0.0548 ln(pd),
// squared when b_squared. Throws when the denominator is not positive.
double maturity_adjustment(double pd, double maturity, bool b_squared);

// Single-name capital: MA * LGD * (Phi[(Phi^-1(pd) + sqrt(rho) Phi^-1(q)) /
// sqrt(1-rho)] - pd). pd must lie strictly inside (0,1).
double irb_capital(double pd, double lgd, double rho, double q, double ma);

struct BorrowerCapital {
    double k = 0.0;        // IRB capital K_i
    double reserve = 0.0;  // R_i = lgd * pd
    double c = 0.0;        // C_i
    double ma = 1.0;
};

BorrowerCapital borrower_capital(double pd, double lgd, const CapitalParams& p);

// K = sum s_i K_i over a share simplex.
double portfolio_capital(const std::vector<double>& shares, const std::vector<double>& k);

// Granularity adjustment (1/2K) sum s_i^2 C_i [delta (K_i+R_i) - K_i].
double granularity_adjustment(const std::vector<double>& shares,
                              const std::vector<BorrowerCapital>& caps, double delta);

// Two-tier aggregated portfolio: two positions of weight u = (1-(N-2)w)/2 and
// N-2 positions of weight w, all with the same pd/lgd. Sweeps w, evaluates
// the granularity adjustment and fits the single constant of the quadratic
// 1 - 2(N-2)w + N(N-2)w^2 it should be proportional to.
struct GammaCurvePoint {
    double w = 0.0, u = 0.0, gamma = 0.0, quadratic = 0.0;
};

struct GammaCurve {
    std::vector<GammaCurvePoint> points;
    double fitted_constant = 0.0;
    double max_rel_dev = 0.0;      // of gamma vs fitted_constant * quadratic
    double w_at_minimum = 0.0;     // closed-form minimum, 1/N
};

GammaCurve overlap_gamma_curve(std::size_t n_borrowers, double pd, double lgd,
                               const CapitalParams& params,
                               const std::vector<double>& w_grid);

}  // namespace coexp
