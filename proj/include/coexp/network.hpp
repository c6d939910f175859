#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace coexp {

struct Borrower {
    std::string id;
    std::optional<double> pd;             // probability of default, [0,1]
    std::optional<double> lgd;            // loss given default, [0,1]
    std::optional<int> risk_category;     // 1 = safest
};

// Step weight f(r) = a + b * [r > r0].
struct StepWeightParams {
    double a = 0.2;
    double b = 1.0;
    double r0 = 1.5;
};

// Bipartite lender/borrower exposure network in column (borrower) major
// sparse form. Raw and risk-adjusted values share one sparsity pattern.
// Immutable after construction; safe to share across threads.
class ExposureNetwork {
public:
    std::size_t n_lenders() const { return lender_ids_.size(); }
    std::size_t n_borrowers() const { return borrowers_.size(); }
    std::size_t n_links() const { return link_lender_.size(); }

    const std::vector<std::string>& lender_ids() const { return lender_ids_; }
    const std::vector<Borrower>& borrowers() const { return borrowers_; }

    const std::vector<std::size_t>& col_ptr() const { return col_ptr_; }
    const std::vector<std::uint32_t>& link_lender() const { return link_lender_; }
    const std::vector<double>& raw_values() const { return raw_; }
    const std::vector<double>& weighted_values() const { return weighted_; }

    std::size_t degree(std::size_t borrower) const {
        return col_ptr_[borrower + 1] - col_ptr_[borrower];
    }

    // Per-lender totals over all borrowers.
    std::vector<double> lender_totals_raw() const;
    std::vector<double> lender_totals_weighted() const;
    // Per-borrower totals over all lenders.
    std::vector<double> borrower_totals_weighted() const;

    // Borrowers held by two or more lenders.
    std::vector<bool> overlap_mask() const;

    ExposureNetwork with_weights(std::vector<double> weighted) const;

private:
    friend class NetworkBuilder;
    std::vector<std::string> lender_ids_;
    std::vector<Borrower> borrowers_;
    std::vector<std::size_t> col_ptr_;
    std::vector<std::uint32_t> link_lender_;
    std::vector<double> raw_;
    std::vector<double> weighted_;
};

// Accumulates exposure rows (duplicates summed, first-appearance ordering)
// and validates the network invariants on build().
class NetworkBuilder {
public:
    // Pins a lender's position in the ordering before any links reference it.
    void declare_lender(const std::string& lender_id) { lender_index(lender_id); }

    void add(const std::string& lender_id, const std::string& borrower_id, double ead);
    // Attribute setters merge conservatively: conflicting pd/lgd/category
    // resolve to the riskier value (max).
    void set_pd(const std::string& borrower_id, double pd);
    void set_lgd(const std::string& borrower_id, double lgd);
    void set_risk_category(const std::string& borrower_id, int category);

    // require_risk_info: demand pd or risk_category on every borrower.
    ExposureNetwork build(bool require_risk_info = true);

private:
    std::size_t lender_index(const std::string& id);
    std::size_t borrower_index(const std::string& id);

    std::vector<std::string> lender_ids_;
    std::vector<Borrower> borrowers_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols_;  // per borrower
    // first-appearance order lives in the vectors; maps are lookup only
    std::unordered_map<std::string, std::size_t> lender_lookup_;
    std::unordered_map<std::string, std::size_t> borrower_lookup_;
};

// CSV ingestion: columns lender_id,borrower_id,ead plus optional pd, lgd,
// risk_category. Duplicate (lender,borrower) rows are summed. Negative ead,
// borrowers without any risk information, and empty files are rejected.
ExposureNetwork load_exposures(std::istream& in, const std::string& source_name);
ExposureNetwork load_exposures_file(const std::string& path);

// Risk weighting schemes (return a reweighted copy).
ExposureNetwork apply_step_weights(const ExposureNetwork& net, const StepWeightParams& p);
ExposureNetwork apply_pd_weights(const ExposureNetwork& net);

double step_weight(int risk_category, const StepWeightParams& p);

}  // namespace coexp
