#pragma once

#include <string>
#include <vector>

#include "coexp/capital.hpp"

namespace coexp {

struct CoexposureParams {
    double eta = 68.9;
    double alpha = 0.53;
    double stress_factor = 5.0;

    void validate() const;
};

// One portfolio position as seen by the co-exposure capital.
struct CoexposureTerm {
    std::string borrower_id;
    double share = 0.0;
    double pd = 0.0;
    double lgd = 0.0;
    double ma = 1.0;
    double delta_di = 0.0;  // system dependency increment from stressing this borrower
    bool in_overlap = false;
};

// X_CE = sum_i s_i MA_i LGD_i { Phi[Phi^-1(pd_i) + eta z_i] - pd_i } with
// z_i = Phi^-1((1 + max(delta_di, 0))/2). Non-positive increments contribute
// exactly zero.
struct CoexposureCapital {
    double x_ce = 0.0;
    std::vector<double> per_borrower;
};

CoexposureCapital coexposure_capital(const std::vector<CoexposureTerm>& terms, double eta);

// Double-counting ratio: sign(r-1) equals the sign of the derivative of the
// granularity adjustment under the overlap-increasing share perturbation
// (s_i + eps on the overlap, s_i - eps N_omega/N_z off it), evaluated with
// subset-weighted means and K~_i = C_i[(delta-1)K_i + R_i]/2. Returns 1 when
// either subset is empty (the perturbation is undefined).
double double_count_ratio(const std::vector<double>& shares,
                          const std::vector<bool>& in_overlap,
                          const std::vector<BorrowerCapital>& caps, double delta);

// K_CE = [alpha (r-1) + 1] X_CE, floored at zero.
struct AddonResult {
    double k_ce = 0.0;
    bool floored = false;
};

AddonResult coexposure_addon(double x_ce, double r, double alpha);

// K_total = K + Gamma + K_CE; all components must be nonnegative.
double total_capital(double k, double gamma, double k_ce);

}  // namespace coexp
