#include "coexp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coexp/impact.hpp"
#include "coexp/parallel.hpp"
#include "coexp/concentration.hpp"
#include "coexp/rng.hpp"

namespace coexp {

namespace {

double di_sys_from_weights(const ExposureNetwork& net, const std::vector<double>& weights) {
    const std::size_t n = net.n_lenders();
    const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(), weights);
    const auto di = dependency_from_kernel(t, n);
    std::vector<double> totals(n, 0.0);
    for (std::size_t k = 0; k < weights.size(); ++k) totals[net.link_lender()[k]] += weights[k];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += totals[i] * di[i];
        den += totals[i];
    }
    return num / den;
}

// Sorted per-(lender, category) value multisets; bitwise-comparable
// conservation fingerprint.
std::vector<std::vector<double>> cell_fingerprint(const ExposureNetwork& net,
                                                  const std::vector<double>& values,
                                                  const std::vector<int>& borrower_cat,
                                                  int n_cats) {
    std::vector<std::vector<double>> cells(net.n_lenders() * n_cats);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k) {
            cells[net.link_lender()[k] * n_cats + borrower_cat[b]].push_back(values[k]);
        }
    }
    for (auto& c : cells) std::sort(c.begin(), c.end());
    return cells;
}

std::vector<int> dense_categories(const ExposureNetwork& net, int& n_cats) {
    std::map<int, int> remap;
    for (const auto& b : net.borrowers()) {
        if (!b.risk_category)
            throw std::runtime_error("scenario requires risk categories; borrower '" + b.id +
                                     "' has none");
        remap.emplace(*b.risk_category, 0);
    }
    int next = 0;
    for (auto& [cat, pos] : remap) pos = next++;
    n_cats = next;
    std::vector<int> out(net.n_borrowers());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b)
        out[b] = remap[*net.borrowers()[b].risk_category];
    return out;
}

}  // namespace

RandomizationResult randomize_within_risk(const ExposureNetwork& net, std::size_t trials,
                                          std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("randomize: trials must be >= 1");
    int n_cats = 0;
    const auto cat = dense_categories(net, n_cats);

    // Link indices per (lender, category) cell; only cells with >= 2 links
    // have permutation freedom.
    std::vector<std::vector<std::size_t>> cells(net.n_lenders() * n_cats);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b)
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            cells[net.link_lender()[k] * n_cats + cat[b]].push_back(k);

    const auto base_cells = cell_fingerprint(net, net.weighted_values(), cat, n_cats);

    RandomizationResult res;
    res.observed = di_sys_from_weights(net, net.weighted_values());
    res.samples.resize(trials);
    res.conserved = true;

    constexpr std::size_t kChunk = 32;
    std::vector<char> chunk_ok((trials + kChunk - 1) / kChunk, 1);
    parallel_chunks(trials, kChunk, threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        std::vector<double> w(net.n_links());
                        for (std::size_t trial = begin; trial < end; ++trial) {
                            Stream stream(seed, trial);
                            w = net.weighted_values();
                            for (const auto& cell : cells) {
                                const std::size_t k = cell.size();
                                if (k < 2) continue;
                                for (std::size_t i = k; i > 1; --i) {
                                    const std::size_t j =
                                        static_cast<std::size_t>(stream.next_below(i));
                                    std::swap(w[cell[i - 1]], w[cell[j]]);
                                }
                            }
                            if (cell_fingerprint(net, w, cat, n_cats) != base_cells)
                                chunk_ok[chunk] = 0;
                            res.samples[trial] = di_sys_from_weights(net, w);
                        }
                    });
    for (char ok : chunk_ok) res.conserved = res.conserved && ok;
    std::size_t ge = 0;
    for (double d : res.samples)
        if (d >= res.observed) ++ge;
    res.p_value = static_cast<double>(ge + 1) / static_cast<double>(trials + 1);
    return res;
}

namespace {

std::vector<double> step_weights_for(const ExposureNetwork& net,
                                     const std::vector<int>& categories,
                                     const StepWeightParams& p) {
    std::vector<double> w(net.n_links());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const double f = step_weight(categories[b], p);
        if (!(f > 0.0)) throw std::runtime_error("zero-weight borrower column");
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            w[k] = f * net.raw_values()[k];
    }
    return w;
}

struct DiState {
    std::vector<double> di;
    double di_sys;
};

DiState di_state(const ExposureNetwork& net, const std::vector<double>& w) {
    const std::size_t n = net.n_lenders();
    const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(), w);
    DiState st;
    st.di = dependency_from_kernel(t, n);
    std::vector<double> totals(n, 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) totals[net.link_lender()[k]] += w[k];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += totals[i] * st.di[i];
        den += totals[i];
    }
    st.di_sys = num / den;
    return st;
}

}  // namespace

DowngradeReport downgrade(const ExposureNetwork& net, const std::vector<std::string>& targets,
                          int new_category, const StepWeightParams& params) {
    if (targets.empty()) throw std::invalid_argument("downgrade: no target borrowers");

    std::vector<int> base_cat(net.n_borrowers());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const auto& attrs = net.borrowers()[b];
        if (!attrs.risk_category)
            throw std::runtime_error("downgrade requires risk categories; borrower '" +
                                     attrs.id + "' has none");
        base_cat[b] = *attrs.risk_category;
    }

    std::vector<std::size_t> target_idx;
    for (const auto& id : targets) {
        std::size_t found = net.n_borrowers();
        for (std::size_t b = 0; b < net.n_borrowers(); ++b)
            if (net.borrowers()[b].id == id) {
                found = b;
                break;
            }
        if (found == net.n_borrowers())
            throw std::invalid_argument("downgrade: unknown borrower '" + id + "'");
        if (new_category < base_cat[found])
            throw std::invalid_argument("downgrade: borrower '" + id +
                                        "' would move to a safer category");
        target_idx.push_back(found);
    }

    const auto base = di_state(net, step_weights_for(net, base_cat, params));

    const auto scenario = [&](const std::vector<std::size_t>& moved) {
        std::vector<int> cat = base_cat;
        for (std::size_t b : moved) cat[b] = new_category;
        return di_state(net, step_weights_for(net, cat, params));
    };

    const std::size_t n = net.n_lenders();
    DowngradeReport rep;
    rep.lender_ids = net.lender_ids();
    rep.targets = targets;
    rep.single_delta_di.resize(targets.size());
    rep.single_delta_di_sys.resize(targets.size());

    std::vector<double> sum_single(n, 0.0);
    double sum_single_sys = 0.0;
    for (std::size_t t = 0; t < target_idx.size(); ++t) {
        const auto st = scenario({target_idx[t]});
        rep.single_delta_di[t].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            rep.single_delta_di[t][i] = st.di[i] - base.di[i];
        rep.single_delta_di_sys[t] = st.di_sys - base.di_sys;
        for (std::size_t i = 0; i < n; ++i) sum_single[i] += rep.single_delta_di[t][i];
        sum_single_sys += rep.single_delta_di_sys[t];
    }

    const auto joint = scenario(target_idx);
    rep.joint_delta_di.resize(n);
    rep.convexity.resize(n);
    rep.convexity_pct.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rep.joint_delta_di[i] = joint.di[i] - base.di[i];
        rep.convexity[i] = rep.joint_delta_di[i] - sum_single[i];
        rep.convexity_pct[i] =
            sum_single[i] != 0.0 ? 100.0 * rep.convexity[i] / sum_single[i] : 0.0;
    }
    rep.joint_delta_di_sys = joint.di_sys - base.di_sys;
    rep.convexity_di_sys = rep.joint_delta_di_sys - sum_single_sys;
    rep.convexity_di_sys_pct =
        sum_single_sys != 0.0 ? 100.0 * rep.convexity_di_sys / sum_single_sys : 0.0;
    return rep;
}

namespace {

// Mutable column-list view used by the rewiring scenario.
struct GrowLink {
    std::uint32_t lender;
    double raw, weighted;
};
struct GrowCol {
    int cat;
    bool active = true;
    std::vector<GrowLink> links;
};

double di_sys_from_cols(std::size_t n, const std::vector<GrowCol>& cols) {
    std::vector<double> t(n * n, 0.0);
    std::vector<double> totals(n, 0.0);
    for (const auto& col : cols) {
        if (!col.active) continue;
        double colsum = 0.0;
        for (const auto& l : col.links) colsum += l.weighted;
        const double inv = 1.0 / colsum;
        for (const auto& a : col.links) {
            totals[a.lender] += a.weighted;
            const double wa = a.weighted * inv;
            double* row = t.data() + static_cast<std::size_t>(a.lender) * n;
            for (const auto& c : col.links) row[c.lender] += wa * c.weighted;
        }
    }
    const auto di = dependency_from_kernel(t, n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += totals[i] * di[i];
        den += totals[i];
    }
    return num / den;
}

}  // namespace

OverlapGrowth grow_overlap(const ExposureNetwork& net, std::size_t steps, std::size_t trials,
                           std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("grow_overlap: trials must be >= 1");
    int n_cats = 0;
    const auto cat = dense_categories(net, n_cats);
    const std::size_t n = net.n_lenders();

    std::vector<GrowCol> base_cols(net.n_borrowers());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        base_cols[b].cat = cat[b];
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            base_cols[b].links.push_back(
                GrowLink{net.link_lender()[k], net.raw_values()[k], net.weighted_values()[k]});
    }

    const double observed = di_sys_from_cols(n, base_cols);

    // Conservation fingerprint: per-lender sorted weighted multiset.
    const auto fingerprint = [&](const std::vector<GrowCol>& cols) {
        std::vector<std::vector<double>> per_lender(n);
        for (const auto& col : cols) {
            if (!col.active) continue;
            for (const auto& l : col.links) per_lender[l.lender].push_back(l.weighted);
        }
        for (auto& v : per_lender) std::sort(v.begin(), v.end());
        return per_lender;
    };
    const auto base_fp = fingerprint(base_cols);

    std::vector<std::vector<double>> trajectories(trials);
    constexpr std::size_t kChunk = 8;
    std::vector<char> chunk_ok((trials + kChunk - 1) / kChunk, 1);

    const auto run_trial = [&](std::size_t trial, char* ok_flag) {
        Stream stream(seed, trial);
        auto cols = base_cols;
        // Pool of single-lender columns per category.
        std::vector<std::vector<std::size_t>> pool(n_cats);
        for (std::size_t b = 0; b < cols.size(); ++b)
            if (cols[b].links.size() == 1) pool[cols[b].cat].push_back(b);

        auto& traj = trajectories[trial];
        traj.push_back(observed);
        for (std::size_t s = 0; s < steps; ++s) {
            // Eligible pair count per category: all pairs minus same-lender pairs.
            std::uint64_t total_pairs = 0;
            std::vector<std::uint64_t> cat_pairs(n_cats, 0);
            for (int c = 0; c < n_cats; ++c) {
                const auto& p = pool[c];
                std::vector<std::size_t> per_lender(n, 0);
                for (std::size_t idx : p) ++per_lender[cols[idx].links[0].lender];
                std::uint64_t pairs = p.size() * (p.size() - 1) / 2;
                for (std::size_t cnt : per_lender) pairs -= cnt * (cnt - 1) / 2;
                cat_pairs[c] = pairs;
                total_pairs += pairs;
            }
            if (total_pairs == 0) break;

            std::uint64_t pick = stream.next_below(total_pairs);
            int chosen_cat = 0;
            while (pick >= cat_pairs[chosen_cat]) {
                pick -= cat_pairs[chosen_cat];
                ++chosen_cat;
            }
            auto& p = pool[chosen_cat];
            // Uniform eligible pair via rejection of same-lender draws.
            std::size_t a, b;
            for (;;) {
                a = static_cast<std::size_t>(stream.next_below(p.size()));
                b = static_cast<std::size_t>(stream.next_below(p.size()));
                if (a == b) continue;
                if (cols[p[a]].links[0].lender != cols[p[b]].links[0].lender) break;
            }
            const std::size_t col_a = p[a], col_b = p[b];
            cols[col_a].links.push_back(cols[col_b].links[0]);
            cols[col_b].active = false;
            // Merged borrowers keep the riskier class on disagreement; the
            // same-class rule makes this a no-op, kept as a guard.
            cols[col_a].cat = std::max(cols[col_a].cat, cols[col_b].cat);
            // Remove both from the pool (col_a now has two lenders).
            if (a < b) std::swap(a, b);
            p[a] = p.back();
            p.pop_back();
            p[b] = p.back();
            p.pop_back();

            traj.push_back(di_sys_from_cols(n, cols));
        }
        if (fingerprint(cols) != base_fp) *ok_flag = 0;
    };

    parallel_chunks(trials, kChunk, threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        for (std::size_t trial = begin; trial < end; ++trial)
                            run_trial(trial, &chunk_ok[chunk]);
                    });

    bool conserved = true;
    for (char ok : chunk_ok) conserved = conserved && ok;
    std::size_t min_steps = steps;
    for (const auto& traj : trajectories)
        min_steps = std::min(min_steps, traj.size() - 1);

    OverlapGrowth out;
    out.steps_completed = min_steps;
    out.truncated = min_steps < steps;
    out.conserved = conserved;
    out.mean_di_sys.resize(min_steps + 1);
    out.stderr_di_sys.resize(min_steps + 1);
    for (std::size_t s = 0; s <= min_steps; ++s) {
        double mean = 0.0;
        for (const auto& traj : trajectories) mean += traj[s];
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (const auto& traj : trajectories) {
            const double d = traj[s] - mean;
            var += d * d;
        }
        out.mean_di_sys[s] = mean;
        out.stderr_di_sys[s] =
            trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1) /
                                   static_cast<double>(trials))
                       : 0.0;
    }
    return out;
}

std::vector<SensitivityRecord> borrower_stress(const ExposureNetwork& net, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("borrower_stress: factor must be > 0");
    const std::size_t n = net.n_lenders();
    const auto& w = net.weighted_values();
    const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(), w);
    const auto di = dependency_from_kernel(t, n);

    std::vector<double> totals(n, 0.0), sumsq(n, 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) {
        totals[net.link_lender()[k]] += w[k];
        sumsq[net.link_lender()[k]] += w[k] * w[k];
    }
    double s_num = 0.0, s_den = 0.0, h_num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s_num += totals[i] * di[i];
        s_den += totals[i];
        h_num += sumsq[i] / totals[i];
    }
    const double di_sys0 = s_num / s_den;
    const double hhi_sys0 = h_num / s_den;

    std::vector<SensitivityRecord> out(net.n_borrowers());
    std::vector<std::uint32_t> lenders;
    std::vector<double> vals;
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const std::size_t lo = net.col_ptr()[b], hi = net.col_ptr()[b + 1];
        lenders.clear();
        vals.clear();
        double colsum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            lenders.push_back(net.link_lender()[k]);
            vals.push_back(w[k]);
            colsum += w[k];
        }
        const std::size_t d = lenders.size();
        // Scaling column b by f shifts its kernel contribution by (f-1):
        // T'_ij = T_ij + (f-1) w_ib w_jb / colsum_b for i,j in the column.
        const double shift = (factor - 1.0) / colsum;

        double num = s_num, den = s_den, hn = h_num;
        for (std::size_t ai = 0; ai < d; ++ai) {
            const std::size_t i = lenders[ai];
            const double tii = t[i * n + i] + shift * vals[ai] * vals[ai];
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double tji = t[j * n + i];
                for (std::size_t bj = 0; bj < d; ++bj) {
                    if (lenders[bj] == j) {
                        tji += shift * vals[bj] * vals[ai];
                        break;
                    }
                }
                const double r = tji / tii;
                acc += r * r;
            }
            const double di_i = 1.0 - 1.0 / acc;
            const double w_i = totals[i] + (factor - 1.0) * vals[ai];
            const double ss_i = sumsq[i] + (factor * factor - 1.0) * vals[ai] * vals[ai];
            num += w_i * di_i - totals[i] * di[i];
            den += (factor - 1.0) * vals[ai];
            hn += ss_i / w_i - sumsq[i] / totals[i];
        }
        out[b].borrower_id = net.borrowers()[b].id;
        out[b].delta_di_sys = num / den - di_sys0;
        out[b].delta_hhi_sys = hn / den - hhi_sys0;
    }
    return out;
}

ExposureNetwork generate_tranche_network(const std::vector<LoanRecord>& loans,
                                         const TrancheGenConfig& cfg) {
    if (loans.empty()) throw std::invalid_argument("tranche generator: no loans");
    if (cfg.n_lenders < 2) throw std::invalid_argument("tranche generator: need >= 2 lenders");
    if (cfg.n_tranches < 2)
        throw std::invalid_argument("tranche generator: need >= 2 tranches");
    if (cfg.n_tranches > cfg.n_lenders)
        throw std::invalid_argument("tranche generator: more tranches than lenders");
    if (!(cfg.isolated_frac >= 0.0 && cfg.isolated_frac < 1.0) ||
        !(cfg.top_exclude_frac >= 0.0 && cfg.top_exclude_frac < 1.0))
        throw std::invalid_argument("tranche generator: fractions must lie in [0,1)");
    if (cfg.min_tranche * static_cast<double>(cfg.n_tranches) > 1.0)
        throw std::invalid_argument("tranche generator: min_tranche * n_tranches exceeds 1");

    struct Issuer {
        std::string id;
        double raw = 0.0;
        double adjusted = 0.0;
    };
    std::vector<Issuer> issuers;
    std::unordered_map<std::string, std::size_t> lookup;
    for (const auto& loan : loans) {
        if (!(loan.amount > 0.0) || !(loan.price > 0.0))
            throw std::invalid_argument("tranche generator: amounts and prices must be > 0");
        const auto [it, inserted] = lookup.try_emplace(loan.issuer, issuers.size());
        if (inserted) issuers.push_back(Issuer{loan.issuer, 0.0, 0.0});
        issuers[it->second].raw += loan.amount;
        issuers[it->second].adjusted += loan.amount / loan.price;
    }
    const std::size_t n_issuers = issuers.size();

    // Risk bands from the issuer-level price proxy (total / adjusted):
    // highest prices first, three equal bands, 1 = safest.
    std::vector<std::size_t> by_price(n_issuers);
    std::iota(by_price.begin(), by_price.end(), std::size_t{0});
    std::stable_sort(by_price.begin(), by_price.end(), [&](std::size_t a, std::size_t b) {
        return issuers[a].raw / issuers[a].adjusted > issuers[b].raw / issuers[b].adjusted;
    });
    std::vector<int> category(n_issuers, 1);
    for (std::size_t rank = 0; rank < n_issuers; ++rank)
        category[by_price[rank]] = 1 + static_cast<int>(3 * rank / n_issuers);

    const auto n_iso = static_cast<std::size_t>(
        std::llround(cfg.isolated_frac * static_cast<double>(n_issuers)));
    const auto n_top = static_cast<std::size_t>(
        std::llround(cfg.top_exclude_frac * static_cast<double>(n_issuers)));

    std::vector<std::size_t> by_size(n_issuers);
    std::iota(by_size.begin(), by_size.end(), std::size_t{0});
    std::stable_sort(by_size.begin(), by_size.end(),
                     [&](std::size_t a, std::size_t b) { return issuers[a].raw > issuers[b].raw; });
    std::vector<std::size_t> eligible(by_size.begin() + static_cast<std::ptrdiff_t>(n_top),
                                      by_size.end());
    if (n_iso > eligible.size())
        throw std::invalid_argument("tranche generator: too few issuers for isolated draw");

    Stream stream(cfg.seed, 0);
    // Partial Fisher-Yates: first n_iso entries become the isolated set.
    for (std::size_t i = 0; i < n_iso; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(stream.next_below(eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
    }
    std::vector<bool> isolated(n_issuers, false);
    for (std::size_t i = 0; i < n_iso; ++i) isolated[eligible[i]] = true;

    const auto lender_name = [&](std::size_t i) {
        if (cfg.n_lenders <= 26) return std::string(1, static_cast<char>('A' + i));
        return "L" + std::to_string(i + 1);
    };

    NetworkBuilder builder;
    for (std::size_t i = 0; i < cfg.n_lenders; ++i) builder.declare_lender(lender_name(i));

    std::vector<std::size_t> lender_pick(cfg.n_lenders);
    std::vector<double> fracs(cfg.n_tranches);
    for (std::size_t b = 0; b < n_issuers; ++b) {
        builder.set_risk_category(issuers[b].id, category[b]);
        if (isolated[b]) {
            const std::size_t lender = static_cast<std::size_t>(stream.next_below(cfg.n_lenders));
            builder.add(lender_name(lender), issuers[b].id, issuers[b].raw);
            continue;
        }
        // Tranche fractions: min_tranche floor plus a uniform simplex split
        // of the remainder (exponential spacings).
        double esum = 0.0;
        for (auto& f : fracs) {
            f = stream.next_exp();
            esum += f;
        }
        const double slack = 1.0 - cfg.min_tranche * static_cast<double>(cfg.n_tranches);
        for (auto& f : fracs) f = cfg.min_tranche + slack * (f / esum);
        // Distinct lenders via partial shuffle.
        std::iota(lender_pick.begin(), lender_pick.end(), std::size_t{0});
        for (std::size_t i = 0; i < cfg.n_tranches; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(stream.next_below(cfg.n_lenders - i));
            std::swap(lender_pick[i], lender_pick[j]);
        }
        for (std::size_t tr = 0; tr < cfg.n_tranches; ++tr)
            builder.add(lender_name(lender_pick[tr]), issuers[b].id, fracs[tr] * issuers[b].raw);
    }

    if ((n_issuers - n_iso) * cfg.n_tranches + n_iso < cfg.n_lenders)
        throw std::invalid_argument("tranche generator: too few issuers for the lender count");
    ExposureNetwork net = [&] {
        try {
            return builder.build(/*require_risk_info=*/true);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument(
                "tranche generator: too few issuers to populate every lender");
        }
    }();
    // Risk-adjusted values: scale each borrower column by adjusted/raw so the
    // weighted exposure equals the amount/price split.
    std::vector<double> weighted(net.n_links());
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) {
        const std::size_t src = lookup.at(net.borrowers()[b].id);
        const double scale = issuers[src].adjusted / issuers[src].raw;
        for (std::size_t k = net.col_ptr()[b]; k < net.col_ptr()[b + 1]; ++k)
            weighted[k] = scale * net.raw_values()[k];
    }
    return net.with_weights(std::move(weighted));
}

}  // namespace coexp
