#include "coexp/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "coexp/csv.hpp"

namespace coexp {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json meta_json(const Meta& meta) {
    ordered_json j;
    j["version"] = meta.version;
    j["config_hash"] = meta.config_hash;
    j["seed"] = meta.seed;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

std::string meta_comment(const Meta& meta) {
    return "# coexp " + meta.version + " config=" + meta.config_hash +
           " seed=" + std::to_string(meta.seed) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string impact_csv(const ImpactMatrix& s, const Meta& meta) {
    std::string out = meta_comment(meta);
    std::vector<std::string> header{"lender"};
    header.insert(header.end(), s.lender_ids.begin(), s.lender_ids.end());
    out += csv::join_row(header);
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::string> row{s.lender_ids[i]};
        for (std::size_t j = 0; j < s.size(); ++j) row.push_back(fmt(s(i, j)));
        out += csv::join_row(row);  // row = impacting lender
    }
    return out;
}

std::string impact_json(const ImpactMatrix& s, const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["lenders"] = s.lender_ids;
    ordered_json entries;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ordered_json row;
        for (std::size_t k = 0; k < s.size(); ++k) row[s.lender_ids[k]] = s(i, k);
        entries[s.lender_ids[i]] = row;
    }
    j["impact"] = entries;
    return dump(j);
}

std::string concentration_csv(const ConcentrationReport& rep, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += csv::join_row({"Lender", "HHI", "DI", "Co-exposures %", "Co-weights %"});
    for (const auto& row : rep.per_lender) {
        out += csv::join_row({row.lender, fmt(row.hhi_weighted), fmt(row.di),
                              fmt(100.0 * row.co_exposure_frac),
                              fmt(100.0 * row.co_weight_frac)});
    }
    return out;
}

std::string concentration_json(const ConcentrationReport& rep, const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    ordered_json lenders = ordered_json::array();
    for (const auto& row : rep.per_lender) {
        ordered_json l;
        l["lender"] = row.lender;
        l["hhi_raw"] = row.hhi_raw;
        l["hhi_weighted"] = row.hhi_weighted;
        l["di"] = row.di;
        l["co_exposure_frac"] = row.co_exposure_frac;
        l["co_weight_frac"] = row.co_weight_frac;
        lenders.push_back(l);
    }
    j["lenders"] = lenders;
    j["di_sys"] = rep.di_sys;
    return dump(j);
}

std::string projection_csv(const ExposureNetwork& net, const BorrowerProjection& proj,
                           const Meta& meta) {
    std::string out = meta_comment(meta);
    out += "# borrower projection: transpose-symmetric weighting of the lender impact\n";
    out += csv::join_row({"from", "to", "weight"});
    const std::size_t k = proj.borrower_indices.size();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            const double w = proj.p[a * k + b];
            if (w == 0.0) continue;
            out += csv::join_row({net.borrowers()[proj.borrower_indices[a]].id,
                                  net.borrowers()[proj.borrower_indices[b]].id, fmt(w)});
        }
    }
    return out;
}

std::string randomization_csv(const RandomizationResult& res, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += csv::join_row({"trial", "di_sys"});
    for (std::size_t t = 0; t < res.samples.size(); ++t)
        out += csv::join_row({std::to_string(t), fmt(res.samples[t])});
    return out;
}

std::string randomization_json(const RandomizationResult& res, std::size_t bins,
                               const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["observed"] = res.observed;
    j["p_value"] = res.p_value;
    j["trials"] = res.samples.size();
    j["conserved"] = res.conserved;

    if (bins > 0 && !res.samples.empty()) {
        double lo = *std::min_element(res.samples.begin(), res.samples.end());
        double hi = *std::max_element(res.samples.begin(), res.samples.end());
        lo = std::min(lo, res.observed);
        hi = std::max(hi, res.observed);
        if (hi == lo) hi = lo + 1e-12;
        const double width = (hi - lo) / static_cast<double>(bins);
        std::vector<std::size_t> counts(bins, 0);
        for (double v : res.samples) {
            auto idx = static_cast<std::size_t>((v - lo) / width);
            if (idx >= bins) idx = bins - 1;
            ++counts[idx];
        }
        ordered_json edges = ordered_json::array();
        for (std::size_t b = 0; b <= bins; ++b)
            edges.push_back(lo + width * static_cast<double>(b));
        j["histogram"]["bin_edges"] = edges;
        j["histogram"]["counts"] = counts;
    }
    return dump(j);
}

std::string downgrade_csv(const DowngradeReport& rep, const Meta& meta) {
    std::string out = meta_comment(meta);
    std::vector<std::string> header{"scenario"};
    for (const auto& lender : rep.lender_ids) header.push_back("delta_di_" + lender);
    header.push_back("delta_di_sys");
    out += csv::join_row(header);
    for (std::size_t t = 0; t < rep.targets.size(); ++t) {
        std::vector<std::string> row{rep.targets[t]};
        for (double v : rep.single_delta_di[t]) row.push_back(fmt(v));
        row.push_back(fmt(rep.single_delta_di_sys[t]));
        out += csv::join_row(row);
    }
    std::vector<std::string> joint{"joint"};
    for (double v : rep.joint_delta_di) joint.push_back(fmt(v));
    joint.push_back(fmt(rep.joint_delta_di_sys));
    out += csv::join_row(joint);
    std::vector<std::string> diff{"difference"};
    for (double v : rep.convexity) diff.push_back(fmt(v));
    diff.push_back(fmt(rep.convexity_di_sys));
    out += csv::join_row(diff);
    std::vector<std::string> pct{"difference_pct"};
    for (double v : rep.convexity_pct) pct.push_back(fmt(v));
    pct.push_back(fmt(rep.convexity_di_sys_pct));
    out += csv::join_row(pct);
    return out;
}

std::string downgrade_json(const DowngradeReport& rep, const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["lenders"] = rep.lender_ids;
    j["targets"] = rep.targets;
    j["single_delta_di"] = rep.single_delta_di;
    j["single_delta_di_sys"] = rep.single_delta_di_sys;
    j["joint_delta_di"] = rep.joint_delta_di;
    j["joint_delta_di_sys"] = rep.joint_delta_di_sys;
    j["convexity"] = rep.convexity;
    j["convexity_pct"] = rep.convexity_pct;
    j["convexity_di_sys"] = rep.convexity_di_sys;
    j["convexity_di_sys_pct"] = rep.convexity_di_sys_pct;
    return dump(j);
}

std::string growth_csv(const OverlapGrowth& growth, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += "# truncated=" + std::string(growth.truncated ? "true" : "false") + "\n";
    out += csv::join_row({"step", "mean_di_sys", "stderr_di_sys"});
    for (std::size_t s = 0; s < growth.mean_di_sys.size(); ++s)
        out += csv::join_row(
            {std::to_string(s), fmt(growth.mean_di_sys[s]), fmt(growth.stderr_di_sys[s])});
    return out;
}

std::string stress_csv(const std::vector<SensitivityRecord>& records, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += csv::join_row({"borrower_id", "delta_di_sys", "delta_hhi_sys"});
    for (const auto& r : records)
        out += csv::join_row({r.borrower_id, fmt(r.delta_di_sys), fmt(r.delta_hhi_sys)});
    return out;
}

std::string capital_csv(const CapitalReport& rep, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += "# alpha=" + fmt(rep.alpha) + " eta=" + fmt(rep.eta) +
           " stress_factor=" + fmt(rep.stress_factor) + "\n";
    out += csv::join_row({"lender", "K", "Gamma", "X_CE", "r", "K_CE", "K_total"});
    for (const auto& l : rep.lenders)
        out += csv::join_row({l.lender, fmt(l.k), fmt(l.gamma), fmt(l.x_ce), fmt(l.r),
                              fmt(l.k_ce), fmt(l.k_total)});
    return out;
}

std::string capital_json(const CapitalReport& rep, const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["params"]["alpha"] = rep.alpha;
    j["params"]["eta"] = rep.eta;
    j["params"]["stress_factor"] = rep.stress_factor;
    j["downturn_applied"] = rep.downturn_applied;
    // The zero floor on K_CE is an extension over the plain linear correction.
    j["k_ce_floor"] = "max(0, [alpha (r-1) + 1] X_CE)";
    ordered_json lenders = ordered_json::array();
    for (const auto& l : rep.lenders) {
        ordered_json e;
        e["lender"] = l.lender;
        e["K"] = l.k;
        e["Gamma"] = l.gamma;
        e["X_CE"] = l.x_ce;
        e["r"] = l.r;
        e["K_CE"] = l.k_ce;
        e["K_total"] = l.k_total;
        e["k_ce_floored"] = l.k_ce_floored;
        lenders.push_back(e);
    }
    j["lenders"] = lenders;
    return dump(j);
}

std::string borrower_capital_csv(const ExposureNetwork& net, const CapitalParams& params,
                                 std::optional<double> downturn_a, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += csv::join_row({"borrower_id", "pd", "lgd", "rho", "MA", "K", "R", "C"});
    for (const auto& b : net.borrowers()) {
        if (!b.pd || !b.lgd)
            throw std::runtime_error("borrower capital table: '" + b.id +
                                     "' lacks pd or lgd");
        const double pd = downturn_a ? downturn_pd(*b.pd, *downturn_a) : *b.pd;
        const auto cap = borrower_capital(pd, *b.lgd, params);
        out += csv::join_row({b.id, fmt(pd), fmt(*b.lgd), fmt(resolve_rho(params, pd)),
                              fmt(cap.ma), fmt(cap.k), fmt(cap.reserve), fmt(cap.c)});
    }
    return out;
}

std::string simulation_json(const std::vector<std::string>& lenders,
                            const std::vector<SimResult>& results, bool downturn,
                            const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["downturn_applied"] = downturn;
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < lenders.size(); ++i) {
        ordered_json e;
        e["lender"] = lenders[i];
        e["el"] = results[i].el;
        e["var"] = results[i].var;
        e["ul"] = results[i].ul;
        if (!results[i].warning.empty()) e["warning"] = results[i].warning;
        arr.push_back(e);
    }
    j["lenders"] = arr;
    return dump(j);
}

std::string simulation_portfolios_csv(const ExposureNetwork& net,
                                      std::optional<double> downturn_a, const Meta& meta) {
    std::string out = meta_comment(meta);
    out += csv::join_row({"lender_id", "borrower_id", "share", "pd", "pd_stressed", "lgd"});
    const auto totals = net.lender_totals_raw();
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const auto& attrs = net.borrowers()[b];
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            const std::size_t i = net.link_lender()[k];
            const double share = net.raw_values()[k] / totals[i];
            const double pd = attrs.pd.value_or(0.0);
            const double stressed = downturn_a ? downturn_pd(pd, *downturn_a) : pd;
            out += csv::join_row({net.lender_ids()[i], attrs.id, fmt(share), fmt(pd),
                                  fmt(stressed), fmt(attrs.lgd.value_or(0.0))});
        }
    }
    return out;
}

std::string calibration_json(const CalibrationResult& res,
                             const std::vector<CalibrationLender>& inputs, const Meta& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["alpha"] = res.alpha;
    j["eta"] = res.eta;
    j["rss"] = res.rss;
    ordered_json lenders = ordered_json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        ordered_json e;
        e["lender"] = inputs[i].lender;
        e["gap"] = res.gaps[i];
        e["r"] = inputs[i].r;
        e["k_ce_fitted"] = res.fitted_k_ce[i];
        e["excluded"] = !(inputs[i].gap > 0.0);
        lenders.push_back(e);
    }
    j["lenders"] = lenders;
    j["excluded"] = res.excluded;
    return dump(j);
}

std::string network_csv(const ExposureNetwork& net, const Meta& meta) {
    std::string out = meta_comment(meta);
    bool any_pd = false, any_lgd = false, any_cat = false;
    for (const auto& b : net.borrowers()) {
        any_pd |= b.pd.has_value();
        any_lgd |= b.lgd.has_value();
        any_cat |= b.risk_category.has_value();
    }
    std::vector<std::string> header{"lender_id", "borrower_id", "ead"};
    if (any_pd) header.push_back("pd");
    if (any_lgd) header.push_back("lgd");
    if (any_cat) header.push_back("risk_category");
    out += csv::join_row(header);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const auto& attrs = net.borrowers()[b];
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            std::vector<std::string> row{net.lender_ids()[net.link_lender()[k]], attrs.id,
                                         fmt(net.weighted_values()[k])};
            if (any_pd) row.push_back(attrs.pd ? fmt(*attrs.pd) : "");
            if (any_lgd) row.push_back(attrs.lgd ? fmt(*attrs.lgd) : "");
            if (any_cat)
                row.push_back(attrs.risk_category ? std::to_string(*attrs.risk_category) : "");
            out += csv::join_row(row);
        }
    }
    return out;
}

}  // namespace coexp
