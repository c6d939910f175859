#include "coexp/calibrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coexp/normal.hpp"

namespace coexp {

double capital_gap(double ul, double k_plus_gamma) { return ul - k_plus_gamma; }

namespace {

// Cached X_CE pieces: x_ce(eta) = sum coef_i (Phi(zpd_i + eta zdi_i) - pd_i)
// over positive-increment terms.
struct PreparedLender {
    double gap = 0.0;
    double r = 1.0;
    std::vector<double> coef, zpd, zdi, pd;
};

double x_ce_at(const PreparedLender& l, double eta) {
    if (eta == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < l.coef.size(); ++i)
        acc += l.coef[i] * (norm_cdf(l.zpd[i] + eta * l.zdi[i]) - l.pd[i]);
    return acc;
}

double objective(const std::vector<PreparedLender>& prepared, double alpha, double eta) {
    double rss = 0.0;
    for (const auto& l : prepared) {
        const double k_ce = std::max(0.0, (alpha * (l.r - 1.0) + 1.0) * x_ce_at(l, eta));
        const double resid = k_ce - l.gap;
        rss += resid * resid;
    }
    return rss;
}

}  // namespace

CalibrationResult fit_addon_parameters(const std::vector<CalibrationLender>& lenders,
                                       const FitConfig& cfg) {
    CalibrationResult res;
    std::vector<PreparedLender> prepared;
    for (const auto& l : lenders) {
        res.gaps.push_back(l.gap);
        if (!(l.gap > 0.0)) {
            res.excluded.push_back(l.lender);
            continue;
        }
        PreparedLender p;
        p.gap = l.gap;
        p.r = l.r;
        for (const auto& t : l.terms) {
            if (!t.in_overlap || !(t.delta_di > 0.0)) continue;
            if (!(t.pd > 0.0 && t.pd < 1.0))
                throw std::domain_error("calibration: pd must lie strictly in (0,1)");
            p.coef.push_back(t.share * t.ma * t.lgd);
            p.zpd.push_back(norm_ppf(t.pd));
            p.zdi.push_back(norm_ppf((1.0 + t.delta_di) / 2.0));
            p.pd.push_back(t.pd);
        }
        prepared.push_back(std::move(p));
    }
    if (prepared.size() < 2) throw std::runtime_error("underdetermined calibration");

    // Stage 1: coarse grid, eta log-spaced ascending so ties keep the
    // smallest eta.
    double best_a = 0.0, best_e = cfg.eta_min;
    double best = std::numeric_limits<double>::infinity();
    const double log_lo = std::log(cfg.eta_min), log_hi = std::log(cfg.eta_max);
    for (std::size_t ei = 0; ei < cfg.eta_grid; ++ei) {
        const double frac = cfg.eta_grid > 1
                                ? static_cast<double>(ei) / static_cast<double>(cfg.eta_grid - 1)
                                : 0.0;
        const double eta = std::exp(log_lo + frac * (log_hi - log_lo));
        for (std::size_t ai = 0; ai < cfg.alpha_grid; ++ai) {
            const double alpha =
                cfg.alpha_grid > 1
                    ? static_cast<double>(ai) / static_cast<double>(cfg.alpha_grid - 1)
                    : 0.0;
            const double val = objective(prepared, alpha, eta);
            if (val < best) {
                best = val;
                best_a = alpha;
                best_e = eta;
            }
        }
    }

    // Stage 2: Nelder-Mead on (alpha, log-ish eta scale handled by plain
    // coordinates with projection onto the box).
    const auto project = [&](std::array<double, 2>& p) {
        p[0] = std::clamp(p[0], 0.0, 1.0);
        p[1] = std::max(p[1], 0.0);
    };
    const auto eval = [&](std::array<double, 2> p) {
        project(p);
        return objective(prepared, p[0], p[1]);
    };

    std::array<std::array<double, 2>, 3> simplex{{{best_a, best_e},
                                                  {std::min(1.0, best_a + 0.1), best_e},
                                                  {best_a, best_e * 1.25 + 1e-3}}};
    if (simplex[1][0] == simplex[0][0]) simplex[1][0] = std::max(0.0, best_a - 0.1);
    std::array<double, 3> fval{eval(simplex[0]), eval(simplex[1]), eval(simplex[2])};

    for (std::size_t iter = 0; iter < cfg.max_refine_iters; ++iter) {
        std::array<std::size_t, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(),
                  [&](std::size_t a, std::size_t b) { return fval[a] < fval[b]; });
        const auto lo = ord[0], mid = ord[1], hi = ord[2];

        const double fspread = std::abs(fval[hi] - fval[lo]);
        const double fscale = std::max(1e-300, std::abs(fval[lo]));
        double dspread = 0.0;
        for (int d = 0; d < 2; ++d) {
            const double scale =
                std::max({1e-12, std::abs(simplex[lo][d]), std::abs(simplex[hi][d])});
            dspread = std::max(dspread, std::abs(simplex[hi][d] - simplex[lo][d]) / scale);
        }
        if (fspread <= cfg.rel_tol * fscale && dspread <= cfg.rel_tol) break;

        std::array<double, 2> centroid{(simplex[lo][0] + simplex[mid][0]) / 2.0,
                                       (simplex[lo][1] + simplex[mid][1]) / 2.0};
        std::array<double, 2> refl{2.0 * centroid[0] - simplex[hi][0],
                                   2.0 * centroid[1] - simplex[hi][1]};
        const double frefl = eval(refl);
        if (frefl < fval[lo]) {
            std::array<double, 2> expand{centroid[0] + 2.0 * (refl[0] - centroid[0]),
                                         centroid[1] + 2.0 * (refl[1] - centroid[1])};
            const double fexp = eval(expand);
            if (fexp < frefl) {
                simplex[hi] = expand;
                fval[hi] = fexp;
            } else {
                simplex[hi] = refl;
                fval[hi] = frefl;
            }
        } else if (frefl < fval[mid]) {
            simplex[hi] = refl;
            fval[hi] = frefl;
        } else {
            std::array<double, 2> contract{(centroid[0] + simplex[hi][0]) / 2.0,
                                           (centroid[1] + simplex[hi][1]) / 2.0};
            const double fcon = eval(contract);
            if (fcon < fval[hi]) {
                simplex[hi] = contract;
                fval[hi] = fcon;
            } else {
                for (auto idx : {mid, hi}) {
                    simplex[idx][0] = (simplex[idx][0] + simplex[lo][0]) / 2.0;
                    simplex[idx][1] = (simplex[idx][1] + simplex[lo][1]) / 2.0;
                    fval[idx] = eval(simplex[idx]);
                }
            }
        }
    }

    std::size_t lo = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (fval[i] < fval[lo]) lo = i;
    std::array<double, 2> opt = simplex[lo];
    project(opt);
    double fopt = fval[lo];
    if (best < fopt) {  // refinement must never lose to the grid
        opt = {best_a, best_e};
        fopt = best;
    }

    res.alpha = opt[0];
    res.eta = opt[1];
    res.rss = fopt;
    for (const auto& l : lenders) {
        PreparedLender p;
        p.r = l.r;
        for (const auto& t : l.terms) {
            if (!t.in_overlap || !(t.delta_di > 0.0)) continue;
            p.coef.push_back(t.share * t.ma * t.lgd);
            p.zpd.push_back(norm_ppf(t.pd));
            p.zdi.push_back(norm_ppf((1.0 + t.delta_di) / 2.0));
            p.pd.push_back(t.pd);
        }
        if (l.gap > 0.0) {
            res.fitted_k_ce.push_back(
                std::max(0.0, (res.alpha * (l.r - 1.0) + 1.0) * x_ce_at(p, res.eta)));
        } else {
            res.fitted_k_ce.push_back(0.0);
        }
    }
    return res;
}

}  // namespace coexp
