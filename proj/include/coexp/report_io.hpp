#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexp/calibrate.hpp"
#include "coexp/concentration.hpp"
#include "coexp/impact.hpp"
#include "coexp/montecarlo.hpp"
#include "coexp/pipeline.hpp"
#include "coexp/scenarios.hpp"

namespace coexp {

// Provenance header embedded in every output file; identical inputs and
// seed reproduce byte-identical files.
struct Meta {
    std::string version;
    std::string config_hash;
    std::uint64_t seed = 0;
};

std::string meta_comment(const Meta& meta);  // '# ...' line for CSV files

void write_text_file(const std::string& path, const std::string& content);

std::string impact_csv(const ImpactMatrix& s, const Meta& meta);
std::string impact_json(const ImpactMatrix& s, const Meta& meta);

std::string concentration_csv(const ConcentrationReport& rep, const Meta& meta);
std::string concentration_json(const ConcentrationReport& rep, const Meta& meta);

std::string projection_csv(const ExposureNetwork& net, const BorrowerProjection& proj,
                           const Meta& meta);

std::string randomization_csv(const RandomizationResult& res, const Meta& meta);
std::string randomization_json(const RandomizationResult& res, std::size_t bins,
                               const Meta& meta);

std::string downgrade_csv(const DowngradeReport& rep, const Meta& meta);
std::string downgrade_json(const DowngradeReport& rep, const Meta& meta);

std::string growth_csv(const OverlapGrowth& growth, const Meta& meta);

std::string stress_csv(const std::vector<SensitivityRecord>& records, const Meta& meta);

std::string capital_csv(const CapitalReport& rep, const Meta& meta);
std::string capital_json(const CapitalReport& rep, const Meta& meta);

// Borrower-level capital inputs and outputs (lender-independent).
std::string borrower_capital_csv(const ExposureNetwork& net, const CapitalParams& params,
                                 std::optional<double> downturn_a, const Meta& meta);

std::string simulation_json(const std::vector<std::string>& lenders,
                            const std::vector<SimResult>& results, bool downturn,
                            const Meta& meta);
std::string simulation_portfolios_csv(const ExposureNetwork& net,
                                      std::optional<double> downturn_a, const Meta& meta);

std::string calibration_json(const CalibrationResult& res,
                             const std::vector<CalibrationLender>& inputs, const Meta& meta);

std::string network_csv(const ExposureNetwork& net, const Meta& meta);

}  // namespace coexp
