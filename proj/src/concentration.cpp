#include "coexp/concentration.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "coexp/kernels.hpp"

namespace coexp {

double herfindahl(const std::vector<double>& exposures) {
    const double total = kernels::sum(exposures.data(), exposures.size());
    if (!(total > 0.0)) throw std::invalid_argument("herfindahl: exposures sum to zero");
    return kernels::sumsq(exposures.data(), exposures.size()) / (total * total);
}

double dependency_index(const ImpactMatrix& s, std::size_t lender) {
    const std::size_t n = s.size();
    if (lender >= n) throw std::out_of_range("dependency_index: lender index");
    const double sii = s(lender, lender);
    if (!(sii > 0.0)) throw std::runtime_error("dependency_index: zero diagonal entry");
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = s(j, lender) / sii;
        acc += r * r;
    }
    return 1.0 - 1.0 / acc;
}

double system_dependency_index(const ExposureNetwork& net, const std::vector<double>& di) {
    const auto totals = net.lender_totals_weighted();
    if (totals.size() != di.size())
        throw std::invalid_argument("system_dependency_index: dimension mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < di.size(); ++i) {
        num += totals[i] * di[i];
        den += totals[i];
    }
    return num / den;
}

OverlapStats overlap_stats(const ExposureNetwork& net) {
    OverlapStats out;
    out.overlap = net.overlap_mask();
    const std::size_t n = net.n_lenders();
    std::vector<double> raw_tot(n, 0.0), raw_shared(n, 0.0);
    std::vector<double> w_tot(n, 0.0), w_shared(n, 0.0);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const bool shared = out.overlap[b];
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            const std::size_t i = net.link_lender()[k];
            raw_tot[i] += net.raw_values()[k];
            w_tot[i] += net.weighted_values()[k];
            if (shared) {
                raw_shared[i] += net.raw_values()[k];
                w_shared[i] += net.weighted_values()[k];
            }
        }
    }
    out.co_exposure_frac.resize(n);
    out.co_weight_frac.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.co_exposure_frac[i] = raw_shared[i] / raw_tot[i];
        out.co_weight_frac[i] = w_shared[i] / w_tot[i];
    }
    return out;
}

RiskComposition risk_composition(const ExposureNetwork& net) {
    std::set<int> cats;
    for (const auto& b : net.borrowers()) {
        if (!b.risk_category)
            throw std::runtime_error("risk_composition: borrower '" + b.id +
                                     "' has no risk_category");
        cats.insert(*b.risk_category);
    }
    RiskComposition out;
    out.categories.assign(cats.begin(), cats.end());
    const auto pos_of = [&](int cat) {
        return static_cast<std::size_t>(
            std::lower_bound(out.categories.begin(), out.categories.end(), cat) -
            out.categories.begin());
    };

    const std::size_t n = net.n_lenders(), nc = out.categories.size();
    std::vector<std::vector<double>> lender_mass(n, std::vector<double>(nc, 0.0));
    std::vector<double> overlap_mass(nc, 0.0);
    const auto overlap = net.overlap_mask();
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const std::size_t c = pos_of(*net.borrowers()[b].risk_category);
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            const double w = net.weighted_values()[k];
            lender_mass[net.link_lender()[k]][c] += w;
            if (overlap[b]) overlap_mass[c] += w;
        }
    }

    out.lender_fracs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double tot = 0.0;
        for (double v : lender_mass[i]) tot += v;
        out.lender_fracs[i].resize(nc);
        for (std::size_t c = 0; c < nc; ++c) out.lender_fracs[i][c] = lender_mass[i][c] / tot;
    }
    double otot = 0.0;
    for (double v : overlap_mass) otot += v;
    out.overlap_fracs.resize(nc, 0.0);
    if (otot > 0.0)
        for (std::size_t c = 0; c < nc; ++c) out.overlap_fracs[c] = overlap_mass[c] / otot;
    return out;
}

ConcentrationReport build_concentration_report(const ExposureNetwork& net) {
    const std::size_t n = net.n_lenders();
    const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(),
                                       net.weighted_values());
    const auto di = dependency_from_kernel(t, n);
    const auto stats = overlap_stats(net);

    // Per-lender exposure vectors for the HHI.
    std::vector<std::vector<double>> raw_rows(n), w_rows(n);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            raw_rows[net.link_lender()[k]].push_back(net.raw_values()[k]);
            w_rows[net.link_lender()[k]].push_back(net.weighted_values()[k]);
        }
    }

    ConcentrationReport rep;
    rep.per_lender.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rep.per_lender[i];
        row.lender = net.lender_ids()[i];
        row.hhi_raw = herfindahl(raw_rows[i]);
        row.hhi_weighted = herfindahl(w_rows[i]);
        row.di = di[i];
        row.co_exposure_frac = stats.co_exposure_frac[i];
        row.co_weight_frac = stats.co_weight_frac[i];
    }
    rep.di_sys = system_dependency_index(net, di);
    return rep;
}

}  // namespace coexp
