#include "coexp/coexposure.hpp"

#include <cmath>
#include <stdexcept>

#include "coexp/normal.hpp"

namespace coexp {

void CoexposureParams::validate() const {
    if (!(eta >= 0.0)) throw std::invalid_argument("coexposure: eta must be >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("coexposure: alpha must lie in [0,1]");
    if (!(stress_factor > 0.0))
        throw std::invalid_argument("coexposure: stress_factor must be > 0");
}

CoexposureCapital coexposure_capital(const std::vector<CoexposureTerm>& terms, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("coexposure_capital: eta must be >= 0");
    CoexposureCapital out;
    out.per_borrower.resize(terms.size(), 0.0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        // Single-lender borrowers have Phi^-1(0.5) = 0 in the shift, so their
        // contribution is identically zero; same for non-positive increments
        // and eta = 0, where the bracket collapses to Phi(Phi^-1(pd)) - pd.
        if (!t.in_overlap || !(t.delta_di > 0.0) || eta == 0.0) continue;
        const double half_shift = (1.0 + t.delta_di) / 2.0;
        if (half_shift >= 1.0)
            throw std::domain_error("coexposure_capital: dependency increment out of range");
        if (!(t.pd > 0.0 && t.pd < 1.0))
            throw std::domain_error("coexposure_capital: pd must lie strictly in (0,1)");
        const double stressed = norm_cdf(norm_ppf(t.pd) + eta * norm_ppf(half_shift));
        const double term = t.share * t.ma * t.lgd * (stressed - t.pd);
        out.per_borrower[i] = term;
        out.x_ce += term;
    }
    return out;
}

double double_count_ratio(const std::vector<double>& shares,
                          const std::vector<bool>& in_overlap,
                          const std::vector<BorrowerCapital>& caps, double delta) {
    const std::size_t n = shares.size();
    if (in_overlap.size() != n || caps.size() != n)
        throw std::invalid_argument("double_count_ratio: dimension mismatch");

    double s_o = 0.0, s_z = 0.0, q_o = 0.0, q_z = 0.0;
    double sk_o = 0.0, sk_z = 0.0, skt_o = 0.0, skt_z = 0.0;
    std::size_t n_o = 0, n_z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double kt = 0.5 * caps[i].c * ((delta - 1.0) * caps[i].k + caps[i].reserve);
        if (in_overlap[i]) {
            ++n_o;
            s_o += shares[i];
            q_o += shares[i] * shares[i];
            sk_o += shares[i] * caps[i].k;
            skt_o += shares[i] * kt;
        } else {
            ++n_z;
            s_z += shares[i];
            q_z += shares[i] * shares[i];
            sk_z += shares[i] * caps[i].k;
            skt_z += shares[i] * kt;
        }
    }
    // No overlap or no complement: the defining perturbation does not exist,
    // so no correction applies.
    if (n_o == 0 || n_z == 0) return 1.0;

    const double mean_k_o = sk_o / s_o, mean_k_z = sk_z / s_z;
    const double mean_kt_o = skt_o / s_o, mean_kt_z = skt_z / s_z;
    const double a = q_o * mean_kt_o + q_z * mean_kt_z;
    const double b = s_o * mean_k_o + s_z * mean_k_z;
    const double no = static_cast<double>(n_o), nz = static_cast<double>(n_z);

    const double num = 2.0 * s_o * mean_kt_o * b + no * mean_k_z * a;
    const double den = (no / nz) * (2.0 * s_z * mean_kt_z * b + nz * mean_k_o * a);
    if (!(den > 0.0)) throw std::domain_error("double_count_ratio: degenerate denominator");
    return num / den;
}

AddonResult coexposure_addon(double x_ce, double r, double alpha) {
    if (!(x_ce >= 0.0)) throw std::invalid_argument("coexposure_addon: X_CE must be >= 0");
    AddonResult out;
    const double k_ce = (alpha * (r - 1.0) + 1.0) * x_ce;
    out.floored = k_ce < 0.0;
    out.k_ce = out.floored ? 0.0 : k_ce;
    return out;
}

double total_capital(double k, double gamma, double k_ce) {
    if (!(k >= 0.0) || !(gamma >= 0.0) || !(k_ce >= 0.0))
        throw std::invalid_argument("total_capital: components must be nonnegative");
    return k + gamma + k_ce;
}

}  // namespace coexp
