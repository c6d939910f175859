#include <doctest.h>

#include <cmath>

#include "coexp/concentration.hpp"
#include "helpers.hpp"

using namespace coexp;
using coexp::testing::building_block;
using coexp::testing::random_network;

TEST_CASE("herfindahl basics") {
    CHECK(herfindahl({5.0}) == doctest::Approx(1.0));
    CHECK(herfindahl({2.0, 2.0, 2.0, 2.0}) == doctest::Approx(0.25));
    CHECK(herfindahl({100.0, 50.0, 50.0}) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK_THROWS(herfindahl({0.0, 0.0}));
    // Permutation invariance.
    CHECK(herfindahl({1.0, 3.0, 7.0}) == doctest::Approx(herfindahl({7.0, 1.0, 3.0})));
}

TEST_CASE("dependency index on the building block") {
    const auto net = building_block();
    const auto s = impact_matrix(net);
    CHECK(dependency_index(s, 0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dependency_index(s, 1) == doctest::Approx(0.1).epsilon(1e-12));

    const auto t = cooccurrence_kernel(2, net.col_ptr(), net.link_lender(),
                                       net.weighted_values());
    const auto di = dependency_from_kernel(t, 2);
    CHECK(di[0] == doctest::Approx(dependency_index(s, 0)).epsilon(1e-12));
    CHECK(system_dependency_index(net, di) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("identity impact matrix gives zero dependency") {
    NetworkBuilder builder;
    builder.add("A", "1", 1.0);
    builder.add("B", "2", 5.0);
    builder.set_risk_category("1", 1);
    builder.set_risk_category("2", 1);
    const auto net = builder.build();
    const auto s = impact_matrix(net);
    CHECK(dependency_index(s, 0) == 0.0);
    CHECK(dependency_index(s, 1) == 0.0);
    const auto t = cooccurrence_kernel(2, net.col_ptr(), net.link_lender(),
                                       net.weighted_values());
    CHECK(system_dependency_index(net, dependency_from_kernel(t, 2)) == 0.0);
}

TEST_CASE("system dependency index is the weighted mean") {
    // One lender holds 0.99 of the system at DI 0, the other DI 0.5.
    NetworkBuilder builder;
    builder.add("A", "x", 99.0);
    builder.add("B", "y", 1.0);
    builder.set_risk_category("x", 1);
    builder.set_risk_category("y", 1);
    const auto net = builder.build();
    CHECK(system_dependency_index(net, {0.0, 0.5}) == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("dependency range and minimum-dependency equivalence") {
    for (std::uint64_t seed = 500; seed < 600; ++seed) {
        coexp::testing::RandomNetConfig cfg;
        cfg.n_lenders = 2 + seed % 6;
        cfg.n_borrowers = 4 + seed % 20;
        const auto net = random_network(seed, cfg);
        const std::size_t n = net.n_lenders();
        const auto s = impact_matrix(net);
        const auto t = cooccurrence_kernel(n, net.col_ptr(), net.link_lender(),
                                           net.weighted_values());
        const auto di = dependency_from_kernel(t, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(di[i] >= 0.0);
            CHECK(di[i] < 1.0);
            double max_off = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) max_off = std::max(max_off, s(j, i));
            // DI_i = 0 iff every off-diagonal entry of column i vanishes.
            if (max_off == 0.0) {
                CHECK(di[i] == 0.0);
            } else {
                CHECK(di[i] > 0.0);
            }
        }
    }
}

TEST_CASE("overlap stats on the building block") {
    const auto stats = overlap_stats(building_block());
    REQUIRE(stats.overlap.size() == 3);
    CHECK_FALSE(stats.overlap[0]);
    CHECK(stats.overlap[1]);  // shared borrower
    CHECK_FALSE(stats.overlap[2]);
    CHECK(stats.co_weight_frac[0] == doctest::Approx(0.5));
    CHECK(stats.co_exposure_frac[0] == doctest::Approx(0.5));
}

TEST_CASE("overlap stats boundary cases") {
    NetworkBuilder disjoint;
    disjoint.add("A", "1", 1.0);
    disjoint.add("B", "2", 1.0);
    disjoint.set_risk_category("1", 1);
    disjoint.set_risk_category("2", 1);
    const auto d = overlap_stats(disjoint.build());
    CHECK(d.co_exposure_frac[0] == 0.0);
    CHECK(d.co_exposure_frac[1] == 0.0);

    NetworkBuilder all_shared;
    all_shared.add("A", "1", 1.0);
    all_shared.add("B", "1", 2.0);
    all_shared.add("A", "2", 3.0);
    all_shared.add("B", "2", 4.0);
    all_shared.set_risk_category("1", 1);
    all_shared.set_risk_category("2", 1);
    const auto a = overlap_stats(all_shared.build());
    CHECK(a.co_exposure_frac[0] == doctest::Approx(1.0));
    CHECK(a.co_weight_frac[1] == doctest::Approx(1.0));
}

TEST_CASE("risk composition sums to one per scope") {
    NetworkBuilder builder;
    builder.add("A", "1", 1.0);
    builder.add("A", "2", 1.0);
    builder.add("B", "2", 1.0);
    builder.add("B", "3", 3.0);
    builder.set_risk_category("1", 1);
    builder.set_risk_category("2", 2);
    builder.set_risk_category("3", 2);
    const auto net = apply_step_weights(builder.build(), StepWeightParams{});
    const auto comp = risk_composition(net);
    REQUIRE(comp.categories.size() == 2);
    for (const auto& fr : comp.lender_fracs) {
        double tot = 0.0;
        for (double f : fr) tot += f;
        CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
    }
    double overlap_tot = 0.0;
    for (double f : comp.overlap_fracs) overlap_tot += f;
    CHECK(overlap_tot == doctest::Approx(1.0).epsilon(1e-12));
    // The overlap here is exactly borrower 2 (category 2).
    CHECK(comp.overlap_fracs[1] == doctest::Approx(1.0));

    // Single category network: fraction 1.
    NetworkBuilder single;
    single.add("A", "1", 1.0);
    single.set_risk_category("1", 1);
    const auto mono = risk_composition(single.build());
    CHECK(mono.lender_fracs[0][0] == doctest::Approx(1.0));
}

TEST_CASE("skewed overlap yields lower safe share in overlap than in portfolios") {
    // Shared borrowers risky, isolated borrowers safe.
    NetworkBuilder builder;
    builder.add("A", "safe_a", 10.0);
    builder.add("B", "safe_b", 10.0);
    builder.add("A", "shared1", 5.0);
    builder.add("B", "shared1", 5.0);
    builder.add("A", "shared2", 4.0);
    builder.add("B", "shared2", 4.0);
    builder.set_risk_category("safe_a", 1);
    builder.set_risk_category("safe_b", 1);
    builder.set_risk_category("shared1", 4);
    builder.set_risk_category("shared2", 4);
    const auto net = apply_step_weights(builder.build(), StepWeightParams{});
    const auto comp = risk_composition(net);
    const std::size_t safe_pos = 0;  // category 1
    CHECK(comp.overlap_fracs[safe_pos] < comp.lender_fracs[0][safe_pos]);
    CHECK(comp.overlap_fracs[safe_pos] < comp.lender_fracs[1][safe_pos]);
}

// Dependency index properties on the building-block family.

TEST_CASE("transfer toward the shared borrower never lowers dependency") {
    for (std::uint64_t seed = 700; seed < 760; ++seed) {
        Stream s(seed, 0);
        const double a = 0.2 + 5.0 * s.next_unit();
        const double b = 0.2 + 5.0 * s.next_unit();
        const double c = 0.2 + 5.0 * s.next_unit();
        const double d = 0.2 + 5.0 * s.next_unit();
        const auto base = building_block(a, b, c, d);
        const auto tb = cooccurrence_kernel(2, base.col_ptr(), base.link_lender(),
                                            base.weighted_values());
        const auto di0 = dependency_from_kernel(tb, 2);
        const double sys0 = system_dependency_index(base, di0);
        for (double frac : {1e-6, 1e-4, 1e-2, 1e-1}) {
            const double eps = frac * a;
            const auto moved = building_block(a - eps, b + eps, c, d);
            const auto tm = cooccurrence_kernel(2, moved.col_ptr(), moved.link_lender(),
                                                moved.weighted_values());
            const auto di1 = dependency_from_kernel(tm, 2);
            CHECK(di1[0] >= di0[0] - 1e-15);
            CHECK(di1[1] >= di0[1] - 1e-15);
            CHECK(system_dependency_index(moved, di1) >= sys0 - 1e-15);
        }
    }
}

TEST_CASE("merging common exposures is superadditive with a proportional equality case") {
    const auto merged_di = [](double a1, double a2, double b1, double b2) {
        NetworkBuilder builder;
        builder.add("A", "m", a1 + a2);
        builder.add("B", "m", b1 + b2);
        builder.set_risk_category("m", 1);
        const auto net = builder.build();
        const auto t = cooccurrence_kernel(2, net.col_ptr(), net.link_lender(),
                                           net.weighted_values());
        return dependency_from_kernel(t, 2);
    };
    const auto split_di = [](double a1, double a2, double b1, double b2) {
        NetworkBuilder builder;
        builder.add("A", "1", a1);
        builder.add("B", "1", b1);
        builder.add("A", "2", a2);
        builder.add("B", "2", b2);
        builder.set_risk_category("1", 1);
        builder.set_risk_category("2", 1);
        const auto net = builder.build();
        const auto t = cooccurrence_kernel(2, net.col_ptr(), net.link_lender(),
                                           net.weighted_values());
        return dependency_from_kernel(t, 2);
    };

    for (std::uint64_t seed = 800; seed < 860; ++seed) {
        Stream s(seed, 0);
        const double a1 = 0.2 + 5.0 * s.next_unit();
        const double a2 = 0.2 + 5.0 * s.next_unit();
        const double b1 = 0.2 + 5.0 * s.next_unit();
        const double b2 = 0.2 + 5.0 * s.next_unit();
        const auto before = split_di(a1, a2, b1, b2);
        const auto after = merged_di(a1, a2, b1, b2);
        CHECK(after[0] >= before[0] - 1e-14);
        CHECK(after[1] >= before[1] - 1e-14);
    }

    // Equality holds exactly for proportional exposures.
    const auto before = split_di(1.0, 1.0, 1.0, 1.0);
    const auto after = merged_di(1.0, 1.0, 1.0, 1.0);
    CHECK(before[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(after[0] == doctest::Approx(0.5).epsilon(1e-14));
    const auto before2 = split_di(2.0, 4.0, 1.0, 2.0);
    const auto after2 = merged_di(2.0, 4.0, 1.0, 2.0);
    CHECK(after2[0] == doctest::Approx(before2[0]).epsilon(1e-13));
    CHECK(after2[1] == doctest::Approx(before2[1]).epsilon(1e-13));
}

TEST_CASE("moving weight to a fresh isolated borrower dilutes dependency") {
    for (std::uint64_t seed = 900; seed < 960; ++seed) {
        Stream s(seed, 0);
        const double b = 0.5 + 5.0 * s.next_unit();
        const double c = 0.2 + 5.0 * s.next_unit();
        const double d = 0.2 + 5.0 * s.next_unit();
        // Start with no isolated borrower on A: w_A1 = 0 means borrower 1 is
        // created fresh by the transfer.
        NetworkBuilder base;
        base.add("A", "2", b);
        base.add("B", "2", c);
        base.add("B", "3", d);
        base.set_risk_category("2", 1);
        base.set_risk_category("3", 1);
        const auto net0 = base.build();
        const auto t0 = cooccurrence_kernel(2, net0.col_ptr(), net0.link_lender(),
                                            net0.weighted_values());
        const auto di0 = dependency_from_kernel(t0, 2);
        const double sys0 = system_dependency_index(net0, di0);

        for (double frac : {1e-6, 1e-4, 1e-2, 1e-1}) {
            const double eps = frac * b;
            const auto net1 = building_block(eps, b - eps, c, d);
            const auto t1 = cooccurrence_kernel(2, net1.col_ptr(), net1.link_lender(),
                                                net1.weighted_values());
            const auto di1 = dependency_from_kernel(t1, 2);
            CHECK(di1[0] <= di0[0] + 1e-15);
            CHECK(di1[1] <= di0[1] + 1e-15);
            CHECK(system_dependency_index(net1, di1) <= sys0 + 1e-15);
        }
    }
}

TEST_CASE("full concentration report") {
    const auto rep = build_concentration_report(building_block());
    REQUIRE(rep.per_lender.size() == 2);
    CHECK(rep.per_lender[0].hhi_raw == doctest::Approx(0.5));
    CHECK(rep.per_lender[0].di == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(rep.per_lender[0].co_weight_frac == doctest::Approx(0.5));
    CHECK(rep.di_sys == doctest::Approx(0.1).epsilon(1e-12));
}
