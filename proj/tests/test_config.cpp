#include <doctest.h>

#include <stdexcept>

#include "coexp/config.hpp"
#include "coexp/report_io.hpp"
#include "helpers.hpp"

using namespace coexp;

TEST_CASE("key-value parsing with sections and comments") {
    const auto kv = KeyValueFile::parse(
        "# comment\n"
        "[capital]\n"
        "q = 0.995\n"
        "rho = basel\n"
        "\n"
        "[run]\n"
        "seed = 42\n",
        "test");
    CHECK(kv.get_double("capital", "q", 0.0) == 0.995);
    CHECK(kv.get("capital", "rho", "") == "basel");
    CHECK(kv.get_int("run", "seed", 0) == 42);
    CHECK(kv.get_int("run", "threads", 3) == 3);  // fallback
    CHECK_THROWS(KeyValueFile::parse("[broken\n", "test"));
    CHECK_THROWS(KeyValueFile::parse("novalue\n", "test"));
}

TEST_CASE("run config defaults match the shipped constants") {
    const RunConfig cfg;
    CHECK(cfg.capital.q == 0.999);
    CHECK(cfg.capital.delta == 4.83);
    CHECK(cfg.capital.gamma == 0.25);
    CHECK(cfg.coexposure.alpha == 0.53);
    CHECK(cfg.coexposure.eta == 68.9);
    CHECK(cfg.coexposure.stress_factor == 5.0);
    CHECK(cfg.sim.iterations == 100000);
    CHECK(cfg.sim.q == 0.999);
    CHECK(cfg.fit.eta_grid == 32);
    CHECK(cfg.fit.alpha_grid == 21);
}

TEST_CASE("config round trip preserves the hash") {
    RunConfig cfg;
    cfg.seed = 7;
    cfg.capital.rho = 0.2;
    const auto kv = cfg.to_key_values();
    const RunConfig back = RunConfig::from_key_values(
        KeyValueFile::parse(kv.serialize(), "roundtrip"));
    CHECK(back.seed == 7);
    CHECK(back.capital.rho == 0.2);
    CHECK(back.config_hash() == cfg.config_hash());

    RunConfig other = cfg;
    other.coexposure.eta = 50.0;
    CHECK(other.config_hash() != cfg.config_hash());
}

TEST_CASE("basel rho spelled out in the config") {
    const auto kv = KeyValueFile::parse("[capital]\nrho = basel\n", "test");
    const auto cfg = RunConfig::from_key_values(kv);
    CHECK_FALSE(cfg.capital.rho.has_value());
    CHECK_THROWS(RunConfig::from_key_values(
        KeyValueFile::parse("[capital]\nrho = definitely\n", "test")));
}

TEST_CASE("weight scheme validation") {
    RunConfig cfg;
    cfg.weight_scheme = "mystery";
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("step|pd|none"),
                         std::runtime_error);
}

TEST_CASE("report outputs embed the meta line and reproduce byte for byte") {
    const auto net = coexp::testing::building_block();
    const Meta meta{"0.1.0", "deadbeefdeadbeef", 42};
    const auto s = impact_matrix(net);
    const auto a = impact_csv(s, meta);
    const auto b = impact_csv(s, meta);
    CHECK(a == b);
    CHECK(a.find("# coexp 0.1.0 config=deadbeefdeadbeef seed=42") == 0);
    CHECK(a.find("0.75") != std::string::npos);

    const auto j = impact_json(s, meta);
    CHECK(j.find("\"config_hash\": \"deadbeefdeadbeef\"") != std::string::npos);

    const auto rep = build_concentration_report(net);
    const auto csv_text = concentration_csv(rep, meta);
    CHECK(csv_text.find("Lender,HHI,DI,Co-exposures %,Co-weights %") != std::string::npos);
    CHECK(csv_text.find("0.1") != std::string::npos);
}
