#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "coexp/network.hpp"
#include "helpers.hpp"

using namespace coexp;

TEST_CASE("csv ingestion builds the network with first-appearance ordering") {
    std::istringstream in(
        "lender_id,borrower_id,ead,risk_category\n"
        "A,1,100,1\n"
        "A,2,50,2\n"
        "B,2,70,2\n");
    const auto net = load_exposures(in, "test");
    CHECK(net.n_lenders() == 2);
    CHECK(net.n_borrowers() == 2);
    CHECK(net.lender_ids()[0] == "A");
    CHECK(net.borrowers()[0].id == "1");
    // raw[A,2] = 50: borrower "2" is column 1, lender A is row 0
    const std::size_t b2 = 1;
    bool found = false;
    for (std::size_t k = net.col_ptr()[b2]; k < net.col_ptr()[b2 + 1]; ++k) {
        if (net.link_lender()[k] == 0) {
            CHECK(net.raw_values()[k] == 50.0);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("duplicate lender-borrower rows sum") {
    std::istringstream in(
        "lender_id,borrower_id,ead,risk_category\n"
        "A,1,100,1\n"
        "A,1,50,1\n");
    const auto net = load_exposures(in, "test");
    CHECK(net.n_links() == 1);
    CHECK(net.raw_values()[0] == 150.0);
}

TEST_CASE("negative exposure is rejected with the line number") {
    std::istringstream in(
        "lender_id,borrower_id,ead,risk_category\n"
        "A,1,-5,1\n");
    CHECK_THROWS_WITH_AS(load_exposures(in, "test"),
                         doctest::Contains("negative exposure"), std::runtime_error);
}

TEST_CASE("borrower without risk info is rejected") {
    std::istringstream in(
        "lender_id,borrower_id,ead\n"
        "A,1,10\n");
    CHECK_THROWS_WITH_AS(load_exposures(in, "test"),
                         doctest::Contains("neither pd nor risk_category"),
                         std::runtime_error);
}

TEST_CASE("empty and header-only files are rejected") {
    std::istringstream empty("");
    CHECK_THROWS(load_exposures(empty, "test"));
    std::istringstream header_only("lender_id,borrower_id,ead\n");
    CHECK_THROWS(load_exposures(header_only, "test"));
}

TEST_CASE("missing required column names the column") {
    std::istringstream in("lender,borrower_id,ead\nA,1,10\n");
    CHECK_THROWS_WITH_AS(load_exposures(in, "test"), doctest::Contains("lender_id"),
                         std::runtime_error);
}

TEST_CASE("conflicting attributes resolve to the riskier value") {
    std::istringstream in(
        "lender_id,borrower_id,ead,risk_category\n"
        "A,x,10,1\n"
        "B,x,10,3\n");
    const auto net = load_exposures(in, "test");
    CHECK(net.borrowers()[0].risk_category == 3);
}

TEST_CASE("step weights follow f(r) = a + b [r > r0]") {
    NetworkBuilder builder;
    builder.add("A", "low", 100.0);
    builder.add("A", "high", 100.0);
    builder.set_risk_category("low", 1);
    builder.set_risk_category("high", 3);
    const auto net = builder.build();

    const StepWeightParams p{0.2, 1.0, 1.5};
    const auto weighted = apply_step_weights(net, p);
    CHECK(weighted.weighted_values()[0] == doctest::Approx(20.0));   // 0.2 * 100
    CHECK(weighted.weighted_values()[1] == doctest::Approx(120.0));  // 1.2 * 100

    // b = 0 collapses to a * e regardless of category.
    const auto flat = apply_step_weights(net, StepWeightParams{0.3, 0.0, 1.5});
    CHECK(flat.weighted_values()[0] == doctest::Approx(30.0));
    CHECK(flat.weighted_values()[1] == doctest::Approx(30.0));
}

TEST_CASE("boundary category stays on the safe side of the step") {
    NetworkBuilder builder;
    builder.add("A", "edge", 10.0);
    builder.add("A", "other", 10.0);
    builder.set_risk_category("edge", 2);
    builder.set_risk_category("other", 1);
    const auto net = builder.build();
    // r0 = 2: theta(0) resolves to 0, category 2 keeps the base weight.
    const auto w = apply_step_weights(net, StepWeightParams{0.2, 1.0, 2.0});
    CHECK(w.weighted_values()[0] == doctest::Approx(2.0));
}

TEST_CASE("pd weighting multiplies columns by pd") {
    NetworkBuilder builder;
    builder.add("A", "x", 1000.0);
    builder.add("A", "y", 10.0);
    builder.set_pd("x", 0.01);
    builder.set_pd("y", 1.0);
    const auto net = builder.build();
    const auto w = apply_pd_weights(net);
    CHECK(w.weighted_values()[0] == doctest::Approx(10.0));
    CHECK(w.weighted_values()[1] == doctest::Approx(10.0));  // pd = 1 identity

    NetworkBuilder zero;
    zero.add("A", "x", 10.0);
    zero.add("A", "y", 10.0);
    zero.set_pd("x", 0.0);
    zero.set_pd("y", 0.1);
    CHECK_THROWS_WITH_AS(apply_pd_weights(zero.build()),
                         doctest::Contains("zero-weight borrower column"),
                         std::runtime_error);

    NetworkBuilder missing;
    missing.add("A", "x", 10.0);
    missing.set_risk_category("x", 1);
    CHECK_THROWS_WITH_AS(apply_pd_weights(missing.build()), doctest::Contains("no pd"),
                         std::runtime_error);
}

TEST_CASE("missing risk category blocks step weighting") {
    NetworkBuilder builder;
    builder.add("A", "x", 10.0);
    builder.set_pd("x", 0.5);
    CHECK_THROWS_WITH_AS(apply_step_weights(builder.build(), StepWeightParams{}),
                         doctest::Contains("no risk_category"), std::runtime_error);
}

TEST_CASE("network invariants: shared sparsity, positive rows and columns") {
    const auto net = coexp::testing::random_network(321);
    CHECK(net.raw_values().size() == net.weighted_values().size());
    for (double v : net.raw_values()) CHECK(v >= 0.0);
    for (std::size_t b = 0; b < net.n_borrowers(); ++b) CHECK(net.degree(b) >= 1);
    const auto totals = net.lender_totals_raw();
    for (double t : totals) CHECK(t > 0.0);
}
