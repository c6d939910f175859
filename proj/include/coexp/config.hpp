#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "coexp/calibrate.hpp"
#include "coexp/capital.hpp"
#include "coexp/coexposure.hpp"
#include "coexp/montecarlo.hpp"
#include "coexp/network.hpp"

namespace coexp {

// Flat key-value config with [section] headers and '#' comments.
class KeyValueFile {
public:
    static KeyValueFile parse(const std::string& text, const std::string& source_name);
    static KeyValueFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    // Canonical text form (sections and keys sorted); hashing input.
    std::string serialize() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct ScenarioConfig {
    std::size_t trials = 1000;
    std::size_t steps = 50;
    std::size_t top_k = 20;
};

struct RunConfig {
    std::string exposures_path;
    std::string weight_scheme = "step";  // step | pd | none
    StepWeightParams step;
    CapitalParams capital;
    bool capital_downturn = false;  // apply the downturn transform to analytics
    CoexposureParams coexposure;
    SimConfig sim;
    ScenarioConfig scenario;
    FitConfig fit;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string kernels = "auto";

    // Hash of the canonical serialized form, embedded in every output.
    std::string config_hash() const;
    KeyValueFile to_key_values() const;

    static RunConfig from_key_values(const KeyValueFile& kv);
    static RunConfig from_file(const std::string& path);

    ExposureNetwork load_and_weight() const;
    void validate() const;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace coexp
