#include "coexp/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "coexp/csv.hpp"

namespace coexp {

std::vector<double> ExposureNetwork::lender_totals_raw() const {
    std::vector<double> tot(n_lenders(), 0.0);
    for (std::size_t k = 0; k < link_lender_.size(); ++k) tot[link_lender_[k]] += raw_[k];
    return tot;
}

std::vector<double> ExposureNetwork::lender_totals_weighted() const {
    std::vector<double> tot(n_lenders(), 0.0);
    for (std::size_t k = 0; k < link_lender_.size(); ++k) tot[link_lender_[k]] += weighted_[k];
    return tot;
}

std::vector<double> ExposureNetwork::borrower_totals_weighted() const {
    std::vector<double> tot(n_borrowers(), 0.0);
    for (std::size_t b = 0; b < n_borrowers(); ++b)
        for (std::size_t k = col_ptr_[b]; k < col_ptr_[b + 1]; ++k) tot[b] += weighted_[k];
    return tot;
}

std::vector<bool> ExposureNetwork::overlap_mask() const {
    std::vector<bool> mask(n_borrowers());
    for (std::size_t b = 0; b < n_borrowers(); ++b) mask[b] = degree(b) >= 2;
    return mask;
}

ExposureNetwork ExposureNetwork::with_weights(std::vector<double> weighted) const {
    if (weighted.size() != weighted_.size())
        throw std::invalid_argument("with_weights: size mismatch");
    ExposureNetwork out(*this);
    out.weighted_ = std::move(weighted);
    return out;
}

std::size_t NetworkBuilder::lender_index(const std::string& id) {
    const auto [it, inserted] = lender_lookup_.try_emplace(id, lender_ids_.size());
    if (inserted) lender_ids_.push_back(id);
    return it->second;
}

std::size_t NetworkBuilder::borrower_index(const std::string& id) {
    const auto [it, inserted] = borrower_lookup_.try_emplace(id, borrowers_.size());
    if (inserted) {
        borrowers_.push_back(Borrower{id, std::nullopt, std::nullopt, std::nullopt});
        cols_.emplace_back();
    }
    return it->second;
}

void NetworkBuilder::add(const std::string& lender_id, const std::string& borrower_id,
                         double ead) {
    if (!(ead >= 0.0))
        throw std::invalid_argument("negative exposure for lender '" + lender_id +
                                    "', borrower '" + borrower_id + "'");
    const auto li = static_cast<std::uint32_t>(lender_index(lender_id));
    const auto bi = borrower_index(borrower_id);
    for (auto& [lender, value] : cols_[bi]) {
        if (lender == li) {
            value += ead;  // duplicate rows sum
            return;
        }
    }
    cols_[bi].emplace_back(li, ead);
}

void NetworkBuilder::set_pd(const std::string& borrower_id, double pd) {
    if (!(pd >= 0.0 && pd <= 1.0))
        throw std::invalid_argument("pd out of [0,1] for borrower '" + borrower_id + "'");
    auto& b = borrowers_[borrower_index(borrower_id)];
    b.pd = b.pd ? std::max(*b.pd, pd) : pd;
}

void NetworkBuilder::set_lgd(const std::string& borrower_id, double lgd) {
    if (!(lgd >= 0.0 && lgd <= 1.0))
        throw std::invalid_argument("lgd out of [0,1] for borrower '" + borrower_id + "'");
    auto& b = borrowers_[borrower_index(borrower_id)];
    b.lgd = b.lgd ? std::max(*b.lgd, lgd) : lgd;
}

void NetworkBuilder::set_risk_category(const std::string& borrower_id, int category) {
    if (category < 1)
        throw std::invalid_argument("risk_category must be >= 1 for borrower '" +
                                    borrower_id + "'");
    auto& b = borrowers_[borrower_index(borrower_id)];
    // Cross-source disagreement resolves to the riskier class.
    b.risk_category = b.risk_category ? std::max(*b.risk_category, category) : category;
}

ExposureNetwork NetworkBuilder::build(bool require_risk_info) {
    if (lender_ids_.empty() || borrowers_.empty())
        throw std::runtime_error("network has no exposures");

    ExposureNetwork net;
    net.lender_ids_ = lender_ids_;
    net.borrowers_ = borrowers_;
    net.col_ptr_.assign(borrowers_.size() + 1, 0);

    std::vector<double> lender_total(lender_ids_.size(), 0.0);
    for (std::size_t b = 0; b < cols_.size(); ++b) {
        double col_total = 0.0;
        for (const auto& [lender, value] : cols_[b]) {
            net.link_lender_.push_back(lender);
            net.raw_.push_back(value);
            lender_total[lender] += value;
            col_total += value;
        }
        net.col_ptr_[b + 1] = net.link_lender_.size();
        if (!(col_total > 0.0))
            throw std::runtime_error("borrower '" + borrowers_[b].id +
                                     "' has zero total exposure");
        if (require_risk_info && !borrowers_[b].pd && !borrowers_[b].risk_category)
            throw std::runtime_error("borrower '" + borrowers_[b].id +
                                     "' has neither pd nor risk_category");
    }
    for (std::size_t i = 0; i < lender_total.size(); ++i)
        if (!(lender_total[i] > 0.0))
            throw std::runtime_error("lender '" + lender_ids_[i] + "' has zero total exposure");

    net.weighted_ = net.raw_;
    return net;
}

namespace {

double parse_double(const std::string& s, const std::string& what, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("line " + std::to_string(line) + ": bad " + what + " '" + s +
                                 "'");
    return v;
}

int parse_int(const std::string& s, const std::string& what, std::size_t line) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("line " + std::to_string(line) + ": bad " + what + " '" + s +
                                 "'");
    return v;
}

}  // namespace

ExposureNetwork load_exposures(std::istream& in, const std::string& source_name) {
    const csv::Table t = csv::read(in, source_name);
    const int c_lender = t.require_column("lender_id");
    const int c_borrower = t.require_column("borrower_id");
    const int c_ead = t.require_column("ead");
    const int c_pd = t.column("pd");
    const int c_lgd = t.column("lgd");
    const int c_cat = t.column("risk_category");

    if (t.rows.empty()) throw std::runtime_error(source_name + ": no exposure rows");

    NetworkBuilder builder;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::size_t line = t.line_numbers[r];
        const std::string& lender = row[c_lender];
        const std::string& borrower = row[c_borrower];
        if (lender.empty() || borrower.empty())
            throw std::runtime_error("line " + std::to_string(line) + ": empty id");
        const double ead = parse_double(row[c_ead], "ead", line);
        if (ead < 0.0)
            throw std::runtime_error("line " + std::to_string(line) + ": negative exposure");
        builder.add(lender, borrower, ead);
        if (c_pd >= 0 && !row[c_pd].empty())
            builder.set_pd(borrower, parse_double(row[c_pd], "pd", line));
        if (c_lgd >= 0 && !row[c_lgd].empty())
            builder.set_lgd(borrower, parse_double(row[c_lgd], "lgd", line));
        if (c_cat >= 0 && !row[c_cat].empty())
            builder.set_risk_category(borrower, parse_int(row[c_cat], "risk_category", line));
    }
    return builder.build();
}

ExposureNetwork load_exposures_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_exposures(f, path);
}

double step_weight(int risk_category, const StepWeightParams& p) {
    return p.a + (static_cast<double>(risk_category) > p.r0 ? p.b : 0.0);
}

ExposureNetwork apply_step_weights(const ExposureNetwork& net, const StepWeightParams& p) {
    if (!(p.a + p.b > 0.0)) throw std::invalid_argument("step weights require a + b > 0");
    std::vector<double> w(net.n_links());
    const auto& col_ptr = net.col_ptr();
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const auto& attrs = net.borrowers()[b];
        if (!attrs.risk_category)
            throw std::runtime_error("borrower '" + attrs.id + "' has no risk_category");
        const double f = step_weight(*attrs.risk_category, p);
        if (!(f > 0.0))
            throw std::runtime_error("zero-weight borrower column '" + attrs.id + "'");
        for (std::size_t k = col_ptr[b]; k < col_ptr[b + 1]; ++k)
            w[k] = f * net.raw_values()[k];
    }
    return net.with_weights(std::move(w));
}

ExposureNetwork apply_pd_weights(const ExposureNetwork& net) {
    std::vector<double> w(net.n_links());
    const auto& col_ptr = net.col_ptr();
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const auto& attrs = net.borrowers()[b];
        if (!attrs.pd) throw std::runtime_error("borrower '" + attrs.id + "' has no pd");
        if (!(*attrs.pd > 0.0))
            throw std::runtime_error("zero-weight borrower column '" + attrs.id + "'");
        for (std::size_t k = col_ptr[b]; k < col_ptr[b + 1]; ++k)
            w[k] = *attrs.pd * net.raw_values()[k];
    }
    return net.with_weights(std::move(w));
}

}  // namespace coexp
