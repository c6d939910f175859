#include "coexp/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coexp/csv.hpp"

namespace coexp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& source_name) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                                         ": malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            kv.sections_[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        std::string value = s.substr(eq + 1);
        if (const auto hash = value.find('#'); hash != std::string::npos)
            value.resize(hash);  // inline comment
        kv.sections_[section][trim(s.substr(0, eq))] = trim(value);
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str(), path);
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string KeyValueFile::get(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double KeyValueFile::get_double(const std::string& section, const std::string& key,
                                double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw std::runtime_error("config [" + section + "] " + key + ": bad number '" + v + "'");
    return out;
}

std::int64_t KeyValueFile::get_int(const std::string& section, const std::string& key,
                                   std::int64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw std::runtime_error("config [" + section + "] " + key + ": bad integer '" + v +
                                 "'");
    return out;
}

bool KeyValueFile::get_bool(const std::string& section, const std::string& key,
                            bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config [" + section + "] " + key + ": bad boolean '" + v + "'");
}

void KeyValueFile::set(const std::string& section, const std::string& key,
                       const std::string& value) {
    sections_[section][key] = value;
}

std::string KeyValueFile::serialize() const {
    std::string out;
    for (const auto& [section, keys] : sections_) {
        out += "[" + section + "]\n";
        for (const auto& [key, value] : keys) out += key + " = " + value + "\n";
        out += "\n";
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RunConfig RunConfig::from_key_values(const KeyValueFile& kv) {
    RunConfig c;
    c.exposures_path = kv.get("input", "exposures", "");
    c.weight_scheme = kv.get("input", "weights", "step");

    c.step.a = kv.get_double("step_weights", "a", 0.2);
    c.step.b = kv.get_double("step_weights", "b", 1.0);
    c.step.r0 = kv.get_double("step_weights", "r0", 1.5);

    c.capital.q = kv.get_double("capital", "q", 0.999);
    c.capital.delta = kv.get_double("capital", "delta", 4.83);
    c.capital.gamma = kv.get_double("capital", "gamma", 0.25);
    c.capital.maturity = kv.get_double("capital", "maturity", 1.0);
    c.capital.b_squared = kv.get_bool("capital", "b_squared", true);
    const std::string rho = kv.get("capital", "rho", "0.12");
    if (rho == "basel") {
        c.capital.rho.reset();
    } else {
        double v = 0.0;
        const auto res = std::from_chars(rho.data(), rho.data() + rho.size(), v);
        if (res.ec != std::errc{} || res.ptr != rho.data() + rho.size())
            throw std::runtime_error("config [capital] rho: expected number or 'basel'");
        c.capital.rho = v;
    }
    c.capital_downturn = kv.get_bool("capital", "downturn", false);

    c.coexposure.alpha = kv.get_double("coexposure", "alpha", 0.53);
    c.coexposure.eta = kv.get_double("coexposure", "eta", 68.9);
    c.coexposure.stress_factor = kv.get_double("coexposure", "stress_factor", 5.0);

    c.sim.iterations = static_cast<std::size_t>(kv.get_int("sim", "iterations", 100000));
    c.sim.q = kv.get_double("sim", "q", 0.999);
    if (kv.has("sim", "downturn_a")) {
        const double a = kv.get_double("sim", "downturn_a", 0.3);
        if (a > 0.0) c.sim.downturn_a = a;
    } else {
        c.sim.downturn_a = 0.3;
    }
    c.sim.keep_samples = kv.get_bool("sim", "keep_samples", false);

    c.scenario.trials = static_cast<std::size_t>(kv.get_int("scenario", "trials", 1000));
    c.scenario.steps = static_cast<std::size_t>(kv.get_int("scenario", "steps", 50));
    c.scenario.top_k = static_cast<std::size_t>(kv.get_int("scenario", "top_k", 20));

    c.fit.eta_grid = static_cast<std::size_t>(kv.get_int("calibration", "eta_grid", 32));
    c.fit.eta_min = kv.get_double("calibration", "eta_min", 0.1);
    c.fit.eta_max = kv.get_double("calibration", "eta_max", 1000.0);
    c.fit.alpha_grid = static_cast<std::size_t>(kv.get_int("calibration", "alpha_grid", 21));
    c.fit.rel_tol = kv.get_double("calibration", "tol", 1e-6);

    c.seed = static_cast<std::uint64_t>(kv.get_int("run", "seed", 0));
    c.threads = static_cast<unsigned>(kv.get_int("run", "threads", 1));
    c.kernels = kv.get("run", "kernels", "auto");
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_key_values(KeyValueFile::load(path));
}

KeyValueFile RunConfig::to_key_values() const {
    KeyValueFile kv;
    kv.set("input", "exposures", exposures_path);
    kv.set("input", "weights", weight_scheme);
    kv.set("step_weights", "a", csv::format_double(step.a));
    kv.set("step_weights", "b", csv::format_double(step.b));
    kv.set("step_weights", "r0", csv::format_double(step.r0));
    kv.set("capital", "q", csv::format_double(capital.q));
    kv.set("capital", "delta", csv::format_double(capital.delta));
    kv.set("capital", "gamma", csv::format_double(capital.gamma));
    kv.set("capital", "maturity", csv::format_double(capital.maturity));
    kv.set("capital", "b_squared", capital.b_squared ? "true" : "false");
    kv.set("capital", "rho", capital.rho ? csv::format_double(*capital.rho) : "basel");
    kv.set("capital", "downturn", capital_downturn ? "true" : "false");
    kv.set("coexposure", "alpha", csv::format_double(coexposure.alpha));
    kv.set("coexposure", "eta", csv::format_double(coexposure.eta));
    kv.set("coexposure", "stress_factor", csv::format_double(coexposure.stress_factor));
    kv.set("sim", "iterations", std::to_string(sim.iterations));
    kv.set("sim", "q", csv::format_double(sim.q));
    kv.set("sim", "downturn_a", sim.downturn_a ? csv::format_double(*sim.downturn_a) : "0");
    kv.set("sim", "keep_samples", sim.keep_samples ? "true" : "false");
    kv.set("scenario", "trials", std::to_string(scenario.trials));
    kv.set("scenario", "steps", std::to_string(scenario.steps));
    kv.set("scenario", "top_k", std::to_string(scenario.top_k));
    kv.set("calibration", "eta_grid", std::to_string(fit.eta_grid));
    kv.set("calibration", "eta_min", csv::format_double(fit.eta_min));
    kv.set("calibration", "eta_max", csv::format_double(fit.eta_max));
    kv.set("calibration", "alpha_grid", std::to_string(fit.alpha_grid));
    kv.set("calibration", "tol", csv::format_double(fit.rel_tol));
    kv.set("run", "seed", std::to_string(seed));
    kv.set("run", "threads", std::to_string(threads));
    kv.set("run", "kernels", kernels);
    return kv;
}

std::string RunConfig::config_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_key_values().serialize())));
    return std::string(buf);
}

void RunConfig::validate() const {
    if (weight_scheme != "step" && weight_scheme != "pd" && weight_scheme != "none")
        throw std::runtime_error("config: weights must be one of step|pd|none");
    capital.validate();
    coexposure.validate();
    sim.validate();
}

ExposureNetwork RunConfig::load_and_weight() const {
    if (exposures_path.empty()) throw std::runtime_error("config: no exposures file given");
    ExposureNetwork net = load_exposures_file(exposures_path);
    if (weight_scheme == "step") return apply_step_weights(net, step);
    if (weight_scheme == "pd") return apply_pd_weights(net);
    return net;  // none: weighted values stay equal to raw
}

}  // namespace coexp
