#include "coexp/capital.hpp"

#include <cmath>
#include <stdexcept>

#include "coexp/normal.hpp"

namespace coexp {

void CapitalParams::validate() const {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("capital: q must lie in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("capital: delta must be > 0");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("capital: gamma must lie in [0,1]");
    if (!(maturity > 0.0)) throw std::invalid_argument("capital: maturity must be > 0");
    if (rho && !(*rho >= 0.0 && *rho < 1.0))
        throw std::invalid_argument("capital: rho must lie in [0,1)");
}

double basel_corporate_rho(double pd) {
    const double x = (1.0 - std::exp(-50.0 * pd)) / (1.0 - std::exp(-50.0));
    return 0.12 * x + 0.24 * (1.0 - x);
}

double resolve_rho(const CapitalParams& p, double pd) {
    return p.rho ? *p.rho : basel_corporate_rho(pd);
}

double maturity_adjustment(double pd, double maturity, bool b_squared) {
    if (!(pd > 0.0 && pd <= 1.0))
        throw std::domain_error("maturity_adjustment: pd must lie in (0,1]");
    double b = 0.119 - 0.0548 * std::log(pd);
    if (b_squared) b *= b;
    const double den = 1.0 - 1.5 * b;
    if (!(den > 0.0)) throw std::domain_error("maturity adjustment singular");
    return (1.0 + (maturity - 2.5) * b) / den;
}

double irb_capital(double pd, double lgd, double rho, double q, double ma) {
    if (!(pd > 0.0 && pd < 1.0))
        throw std::domain_error("irb_capital: pd must lie strictly in (0,1)");
    if (!(lgd >= 0.0 && lgd <= 1.0)) throw std::domain_error("irb_capital: lgd out of [0,1]");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("irb_capital: rho out of [0,1)");
    const double stressed =
        norm_cdf((norm_ppf(pd) + std::sqrt(rho) * norm_ppf(q)) / std::sqrt(1.0 - rho));
    return ma * (lgd * stressed - lgd * pd);
}

BorrowerCapital borrower_capital(double pd, double lgd, const CapitalParams& p) {
    BorrowerCapital out;
    out.ma = maturity_adjustment(pd, p.maturity, p.b_squared);
    out.k = irb_capital(pd, lgd, resolve_rho(p, pd), p.q, out.ma);
    out.reserve = lgd * pd;
    if (!(lgd > 0.0)) throw std::domain_error("borrower_capital: C_i singular at lgd = 0");
    out.c = (p.gamma * lgd * (1.0 - lgd) + lgd * lgd) / lgd;
    return out;
}

double portfolio_capital(const std::vector<double>& shares, const std::vector<double>& k) {
    if (shares.size() != k.size())
        throw std::invalid_argument("portfolio_capital: dimension mismatch");
    double total = 0.0, cap = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (shares[i] < 0.0) throw std::invalid_argument("portfolio_capital: negative share");
        total += shares[i];
        cap += shares[i] * k[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("portfolio_capital: shares must sum to 1");
    return cap;
}

double granularity_adjustment(const std::vector<double>& shares,
                              const std::vector<BorrowerCapital>& caps, double delta) {
    if (shares.size() != caps.size())
        throw std::invalid_argument("granularity_adjustment: dimension mismatch");
    double k = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i) k += shares[i] * caps[i].k;
    if (!(k > 0.0)) throw std::domain_error("granularity_adjustment: portfolio capital is zero");
    double acc = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        acc += shares[i] * shares[i] * caps[i].c *
               (delta * (caps[i].k + caps[i].reserve) - caps[i].k);
    }
    return acc / (2.0 * k);
}

GammaCurve overlap_gamma_curve(std::size_t n_borrowers, double pd, double lgd,
                               const CapitalParams& params,
                               const std::vector<double>& w_grid) {
    if (n_borrowers < 3)
        throw std::invalid_argument("overlap_gamma_curve: need at least 3 borrowers");
    params.validate();
    const auto cap = borrower_capital(pd, lgd, params);
    const double nd = static_cast<double>(n_borrowers);

    GammaCurve out;
    out.w_at_minimum = 1.0 / nd;
    for (double w : w_grid) {
        const double u = (1.0 - (nd - 2.0) * w) / 2.0;
        if (w < 0.0 || u < 0.0) continue;  // infeasible grid point
        std::vector<double> shares(n_borrowers, w);
        shares[0] = shares[1] = u;
        std::vector<BorrowerCapital> caps(n_borrowers, cap);
        GammaCurvePoint pt;
        pt.w = w;
        pt.u = u;
        pt.gamma = granularity_adjustment(shares, caps, params.delta);
        pt.quadratic = 1.0 - 2.0 * (nd - 2.0) * w + nd * (nd - 2.0) * w * w;
        out.points.push_back(pt);
    }
    if (out.points.empty())
        throw std::invalid_argument("overlap_gamma_curve: no feasible grid points");

    // Least-squares fit of the single constant gamma ~ c * quadratic.
    double num = 0.0, den = 0.0;
    for (const auto& pt : out.points) {
        num += pt.gamma * pt.quadratic;
        den += pt.quadratic * pt.quadratic;
    }
    out.fitted_constant = num / den;
    out.max_rel_dev = 0.0;
    for (const auto& pt : out.points) {
        const double fit = out.fitted_constant * pt.quadratic;
        const double scale = std::max(std::abs(pt.gamma), std::abs(fit));
        if (scale > 0.0)
            out.max_rel_dev = std::max(out.max_rel_dev, std::abs(pt.gamma - fit) / scale);
    }
    return out;
}

}  // namespace coexp
