// coexp: system-wide credit concentration analytics over overlapping loan
// portfolios. Subcommands cover network metrics, scenario experiments,
// regulatory capital with the co-exposure add-on, loss simulation and
// parameter calibration. All outputs embed (version, config hash, seed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coexp/concentration.hpp"
#include "coexp/config.hpp"
#include "coexp/csv.hpp"
#include "coexp/impact.hpp"
#include "coexp/kernels.hpp"
#include "coexp/montecarlo.hpp"
#include "coexp/pipeline.hpp"
#include "coexp/report_io.hpp"
#include "coexp/rng.hpp"
#include "coexp/scenarios.hpp"
#include "coexp/version.hpp"

namespace fs = std::filesystem;
using namespace coexp;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string kernels;
};

RunConfig effective_config(const GlobalArgs& g) {
    RunConfig cfg = g.config_path.empty() ? RunConfig{} : RunConfig::from_file(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    if (g.threads) cfg.threads = *g.threads;
    if (!g.kernels.empty()) cfg.kernels = g.kernels;
    kernels::select(cfg.kernels);
    cfg.validate();
    return cfg;
}

Meta make_meta(const RunConfig& cfg) {
    return Meta{kVersion, cfg.config_hash(), cfg.seed};
}

std::string out_path(const GlobalArgs& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

void cmd_metrics(const GlobalArgs& g) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);

    const ConcentrationReport rep = build_concentration_report(net);
    write_text_file(out_path(g, "lender_stats.csv"), concentration_csv(rep, meta));
    write_text_file(out_path(g, "lender_stats.json"), concentration_json(rep, meta));

    const ImpactMatrix s = impact_matrix(net);
    write_text_file(out_path(g, "impact_matrix.csv"), impact_csv(s, meta));
    write_text_file(out_path(g, "impact_matrix.json"), impact_json(s, meta));

    const std::size_t top_k = std::min<std::size_t>(cfg.scenario.top_k, net.n_borrowers());
    const BorrowerProjection proj = borrower_projection(net, top_k);
    write_text_file(out_path(g, "borrower_projection.csv"), projection_csv(net, proj, meta));
}

void cmd_randomize(const GlobalArgs& g) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const RandomizationResult res = randomize_within_risk(net, cfg.scenario.trials, cfg.seed, cfg.threads);
    write_text_file(out_path(g, "randomize_samples.csv"), randomization_csv(res, meta));
    write_text_file(out_path(g, "randomize_summary.json"), randomization_json(res, 40, meta));
}

void cmd_downgrade(const GlobalArgs& g, const std::vector<std::string>& ids, int category) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const DowngradeReport rep = downgrade(net, ids, category, cfg.step);
    write_text_file(out_path(g, "downgrade.csv"), downgrade_csv(rep, meta));
    write_text_file(out_path(g, "downgrade.json"), downgrade_json(rep, meta));
}

void cmd_grow_overlap(const GlobalArgs& g) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const OverlapGrowth growth =
        grow_overlap(net, cfg.scenario.steps, cfg.scenario.trials, cfg.seed, cfg.threads);
    write_text_file(out_path(g, "grow_overlap.csv"), growth_csv(growth, meta));
}

void cmd_stress(const GlobalArgs& g, double factor) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const auto records = borrower_stress(net, factor);
    write_text_file(out_path(g, "stress.csv"), stress_csv(records, meta));
}

void cmd_capital(const GlobalArgs& g) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const std::optional<double> downturn =
        cfg.capital_downturn ? cfg.sim.downturn_a : std::nullopt;
    const CapitalReport rep = build_capital_report(net, cfg.capital, cfg.coexposure, downturn);
    write_text_file(out_path(g, "capital.csv"), capital_csv(rep, meta));
    write_text_file(out_path(g, "capital.json"), capital_json(rep, meta));
    write_text_file(out_path(g, "borrower_capital.csv"),
                    borrower_capital_csv(net, cfg.capital, downturn, meta));
}

void cmd_simulate(const GlobalArgs& g) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    const auto portfolios = lender_portfolios(net);
    std::vector<SimResult> results;
    for (std::size_t i = 0; i < portfolios.size(); ++i) {
        SimConfig sc = cfg.sim;
        sc.threads = cfg.threads;
        sc.seed = rng::stream_key(cfg.seed, i);
        results.push_back(simulate_losses(portfolios[i], sc));
    }
    write_text_file(out_path(g, "simulation.json"),
                    simulation_json(net.lender_ids(), results, cfg.sim.downturn_a.has_value(),
                                    meta));
    write_text_file(out_path(g, "simulation_portfolios.csv"),
                    simulation_portfolios_csv(net, cfg.sim.downturn_a, meta));
    if (cfg.sim.keep_samples) {
        for (std::size_t i = 0; i < results.size(); ++i) {
            std::string dump = meta_comment(meta);
            dump += "loss\n";
            for (double loss : results[i].losses) dump += csv::format_double(loss) + "\n";
            write_text_file(out_path(g, "losses_" + net.lender_ids()[i] + ".csv"), dump);
        }
    }
}

void cmd_calibrate(const GlobalArgs& g, bool write_params) {
    const RunConfig cfg = effective_config(g);
    const ExposureNetwork net = cfg.load_and_weight();
    const Meta meta = make_meta(cfg);
    SimConfig sim = cfg.sim;
    sim.threads = cfg.threads;
    sim.seed = cfg.seed;
    const auto inputs = calibration_inputs(net, cfg.capital, cfg.coexposure, sim);
    const CalibrationResult res = fit_addon_parameters(inputs, cfg.fit);
    write_text_file(out_path(g, "calibration.json"), calibration_json(res, inputs, meta));

    if (write_params) {
        if (g.config_path.empty())
            throw std::runtime_error("calibrate --write-params needs --config");
        KeyValueFile kv = KeyValueFile::load(g.config_path);
        fs::copy_file(g.config_path, g.config_path + ".bak",
                      fs::copy_options::overwrite_existing);
        kv.set("coexposure", "alpha", csv::format_double(res.alpha));
        kv.set("coexposure", "eta", csv::format_double(res.eta));
        write_text_file(g.config_path, kv.serialize());
    }
}

void cmd_gen(const GlobalArgs& g, const std::string& loans_path, std::size_t n_lenders,
             double isolated_frac, std::size_t n_tranches, double min_tranche) {
    const RunConfig cfg = effective_config(g);
    const Meta meta = make_meta(cfg);

    const csv::Table t = csv::read_file(loans_path);
    const int c_issuer = t.require_column("issuer");
    const int c_amount = t.require_column("amount");
    const int c_price = t.require_column("price");
    std::vector<LoanRecord> loans;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        LoanRecord rec;
        rec.issuer = t.rows[r][c_issuer];
        rec.amount = std::stod(t.rows[r][c_amount]);
        rec.price = std::stod(t.rows[r][c_price]);
        loans.push_back(std::move(rec));
    }

    TrancheGenConfig gen;
    gen.n_lenders = n_lenders;
    gen.isolated_frac = isolated_frac;
    gen.n_tranches = n_tranches;
    gen.min_tranche = min_tranche;
    gen.seed = cfg.seed;
    const ExposureNetwork net = generate_tranche_network(loans, gen);
    write_text_file(out_path(g, "generated_network.csv"), network_csv(net, meta));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"credit co-exposure concentration analytics"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalArgs g;
    app.add_option("--config", g.config_path, "key-value config file");
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    std::uint64_t seed_arg = 0;
    auto* seed_opt = app.add_option("--seed", seed_arg, "rng seed (overrides config)");
    unsigned threads_arg = 1;
    auto* threads_opt = app.add_option("--threads", threads_arg, "worker thread cap");
    app.add_option("--kernels", g.kernels, "kernel backend: auto|scalar|avx2");

    auto* metrics = app.add_subcommand("metrics", "lender stats, impact matrix, projection");
    auto* randomize = app.add_subcommand("randomize", "risk-preserving null-model test");
    auto* downgrade_cmd = app.add_subcommand("downgrade", "counterparty downgrade deltas");
    std::vector<std::string> downgrade_ids;
    int downgrade_cat = 0;
    downgrade_cmd->add_option("--ids", downgrade_ids, "borrower ids")->required();
    downgrade_cmd->add_option("--category", downgrade_cat, "new risk category")->required();
    auto* grow = app.add_subcommand("grow-overlap", "merge isolated borrowers stepwise");
    auto* stress = app.add_subcommand("stress", "factor stress per borrower");
    double stress_factor = 5.0;
    stress->add_option("--factor", stress_factor, "exposure multiplier")
        ->capture_default_str();
    auto* capital = app.add_subcommand("capital", "IRB + granularity + co-exposure add-on");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo loss distribution");
    auto* calibrate = app.add_subcommand("calibrate", "fit addon parameters to the UL gap");
    bool write_params = false;
    calibrate->add_flag("--write-params", write_params, "write fitted alpha/eta to config");
    auto* gen = app.add_subcommand("gen", "synthetic overlapping portfolios from loans");
    std::string loans_path;
    std::size_t gen_lenders = 5, gen_tranches = 3;
    double gen_isolated = 0.15, gen_min_tranche = 0.20;
    gen->add_option("--loans", loans_path, "loan csv (issuer,amount,price)")->required();
    gen->add_option("--lenders", gen_lenders, "number of lenders")->capture_default_str();
    gen->add_option("--tranches", gen_tranches, "tranches per shared issuer")
        ->capture_default_str();
    gen->add_option("--isolated-frac", gen_isolated, "single-lender issuer fraction")
        ->capture_default_str();
    gen->add_option("--min-tranche", gen_min_tranche, "minimum tranche fraction")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) g.seed = seed_arg;
    if (*threads_opt) g.threads = threads_arg;

    try {
        if (*metrics) cmd_metrics(g);
        if (*randomize) cmd_randomize(g);
        if (*downgrade_cmd) cmd_downgrade(g, downgrade_ids, downgrade_cat);
        if (*grow) cmd_grow_overlap(g);
        if (*stress) cmd_stress(g, stress_factor);
        if (*capital) cmd_capital(g);
        if (*simulate) cmd_simulate(g);
        if (*calibrate) cmd_calibrate(g, write_params);
        if (*gen)
            cmd_gen(g, loans_path, gen_lenders, gen_isolated, gen_tranches, gen_min_tranche);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
