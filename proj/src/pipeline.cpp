#include "coexp/pipeline.hpp"

#include <stdexcept>

#include "coexp/rng.hpp"
#include "coexp/scenarios.hpp"

namespace coexp {

namespace {

struct LenderView {
    std::vector<std::size_t> borrower;  // borrower index per position
    std::vector<double> share;          // raw exposure fractions
};

std::vector<LenderView> lender_views(const ExposureNetwork& net) {
    const std::size_t n = net.n_lenders();
    std::vector<LenderView> views(n);
    std::vector<double> totals(n, 0.0);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            const std::size_t i = net.link_lender()[k];
            views[i].borrower.push_back(b);
            views[i].share.push_back(net.raw_values()[k]);
            totals[i] += net.raw_values()[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (auto& s : views[i].share) s /= totals[i];
    return views;
}

void require_pd_lgd(const ExposureNetwork& net) {
    std::string missing;
    for (const auto& b : net.borrowers()) {
        if (!b.pd || !b.lgd) {
            if (!missing.empty()) missing += ", ";
            missing += b.id;
        }
    }
    if (!missing.empty())
        throw std::runtime_error("borrowers missing pd or lgd: " + missing);
}

}  // namespace

CapitalReport build_capital_report(const ExposureNetwork& net, const CapitalParams& capital,
                                   const CoexposureParams& coexposure,
                                   std::optional<double> downturn_a) {
    capital.validate();
    coexposure.validate();
    require_pd_lgd(net);

    const auto stress = borrower_stress(net, coexposure.stress_factor);
    const auto overlap = net.overlap_mask();
    const auto views = lender_views(net);

    CapitalReport rep;
    rep.downturn_applied = downturn_a.has_value();
    rep.alpha = coexposure.alpha;
    rep.eta = coexposure.eta;
    rep.stress_factor = coexposure.stress_factor;
    rep.delta_di_sys.resize(net.n_borrowers());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b)
        rep.delta_di_sys[b] = stress[b].delta_di_sys;

    for (std::size_t i = 0; i < net.n_lenders(); ++i) {
        const auto& view = views[i];
        const std::size_t np = view.borrower.size();
        std::vector<BorrowerCapital> caps(np);
        std::vector<bool> in_overlap(np);
        std::vector<CoexposureTerm> terms(np);
        double k_portfolio = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            const std::size_t b = view.borrower[p];
            const auto& attrs = net.borrowers()[b];
            const double pd_eff =
                downturn_a ? downturn_pd(*attrs.pd, *downturn_a) : *attrs.pd;
            caps[p] = borrower_capital(pd_eff, *attrs.lgd, capital);
            in_overlap[p] = overlap[b];
            k_portfolio += view.share[p] * caps[p].k;

            auto& t = terms[p];
            t.borrower_id = attrs.id;
            t.share = view.share[p];
            t.pd = pd_eff;
            t.lgd = *attrs.lgd;
            t.ma = caps[p].ma;
            t.delta_di = stress[b].delta_di_sys;
            t.in_overlap = overlap[b];
        }

        LenderCapital lc;
        lc.lender = net.lender_ids()[i];
        lc.k = k_portfolio;
        lc.gamma = granularity_adjustment(view.share, caps, capital.delta);
        lc.x_ce = coexposure_capital(terms, coexposure.eta).x_ce;
        lc.r = double_count_ratio(view.share, in_overlap, caps, capital.delta);
        const auto addon = coexposure_addon(lc.x_ce, lc.r, coexposure.alpha);
        lc.k_ce = addon.k_ce;
        lc.k_ce_floored = addon.floored;
        lc.k_total = total_capital(lc.k, lc.gamma, lc.k_ce);
        rep.lenders.push_back(std::move(lc));
    }
    return rep;
}

std::vector<std::vector<SimPosition>> lender_portfolios(const ExposureNetwork& net) {
    require_pd_lgd(net);
    const auto views = lender_views(net);
    std::vector<std::vector<SimPosition>> out(views.size());
    for (std::size_t i = 0; i < views.size(); ++i) {
        out[i].resize(views[i].borrower.size());
        for (std::size_t p = 0; p < views[i].borrower.size(); ++p) {
            const auto& attrs = net.borrowers()[views[i].borrower[p]];
            out[i][p] = SimPosition{views[i].share[p], *attrs.pd, *attrs.lgd};
        }
    }
    return out;
}

std::vector<CalibrationLender> calibration_inputs(const ExposureNetwork& net,
                                                  const CapitalParams& capital,
                                                  const CoexposureParams& coexposure,
                                                  const SimConfig& sim) {
    // Same downturn scenario on both sides of the gap.
    const auto report = build_capital_report(net, capital, coexposure, sim.downturn_a);
    const auto portfolios = lender_portfolios(net);
    const auto overlap = net.overlap_mask();
    const auto stress_deltas = report.delta_di_sys;
    const auto views = lender_views(net);

    std::vector<CalibrationLender> out;
    for (std::size_t i = 0; i < net.n_lenders(); ++i) {
        SimConfig per_lender = sim;
        per_lender.seed = rng::stream_key(sim.seed, i);
        const SimResult res = simulate_losses(portfolios[i], per_lender);

        CalibrationLender cl;
        cl.lender = net.lender_ids()[i];
        cl.gap = capital_gap(res.ul, report.lenders[i].k + report.lenders[i].gamma);
        cl.r = report.lenders[i].r;
        for (std::size_t p = 0; p < views[i].borrower.size(); ++p) {
            const std::size_t b = views[i].borrower[p];
            const auto& attrs = net.borrowers()[b];
            CoexposureTerm t;
            t.borrower_id = attrs.id;
            t.share = views[i].share[p];
            t.pd = sim.downturn_a ? downturn_pd(*attrs.pd, *sim.downturn_a) : *attrs.pd;
            t.lgd = *attrs.lgd;
            t.ma = maturity_adjustment(t.pd, capital.maturity, capital.b_squared);
            t.delta_di = stress_deltas[b];
            t.in_overlap = overlap[b];
            cl.terms.push_back(t);
        }
        out.push_back(std::move(cl));
    }
    return out;
}

}  // namespace coexp
