#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coexp/capital.hpp"
#include "coexp/normal.hpp"
#include "coexp/rng.hpp"

using namespace coexp;

TEST_CASE("normal quantile matches reference values") {
    // Frozen double-precision references for the AS241 implementation.
    struct Ref {
        double p, z;
    };
    const Ref refs[] = {
        {1e-10, -6.361340902404056},   {1e-4, -3.7190164854556804},
        {0.01, -2.3263478740408408},   {0.025, -1.9599639845400545},
        {0.3, -0.5244005127080409},    {0.5, 0.0},
        {0.6, 0.2533471031357997},     {0.975, 1.959963984540054},
        {0.999, 3.090232306167813},    {0.0005, -3.2905267314918945},
    };
    for (const auto& r : refs)
        CHECK(norm_ppf(r.p) == doctest::Approx(r.z).epsilon(1e-14));
    CHECK_THROWS(norm_ppf(0.0));
    CHECK_THROWS(norm_ppf(1.0));

    // Round trip through the CDF.
    for (double p : {1e-6, 0.01, 0.37, 0.5, 0.93, 1 - 1e-6})
        CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("maturity adjustment") {
    // M = 1 gives MA = 1 for any pd (numerator equals denominator).
    for (double pd : {0.001, 0.01, 0.2, 0.9})
        CHECK(maturity_adjustment(pd, 1.0, true) == doctest::Approx(1.0).epsilon(1e-14));

    // pd = 1: log term vanishes, the linear slope is exactly 0.119.
    CHECK(maturity_adjustment(1.0, 1.0, false) == doctest::Approx(1.0));
    const double b_lin = 0.119 - 0.0548 * std::log(0.01);
    CHECK(b_lin == doctest::Approx(0.3713633261921474).epsilon(1e-14));

    // Frozen references at pd = 0.01 with the squared slope.
    CHECK(maturity_adjustment(0.01, 2.5, true) ==
          doctest::Approx(1.2608211234700264).epsilon(1e-13));
    CHECK(maturity_adjustment(0.01, 3.0, true) ==
          doctest::Approx(1.3477614979600352).epsilon(1e-13));

    // The linear slope blows up the denominator for tiny pd.
    CHECK_THROWS_WITH_AS(maturity_adjustment(1e-6, 1.0, false), doctest::Contains("singular"),
                         std::domain_error);
    CHECK_THROWS(maturity_adjustment(0.0, 1.0, true));
}

TEST_CASE("irb capital") {
    // Frozen oracle value: pd=0.01, lgd=0.45, rho=0.12, q=0.999, MA=1.
    CHECK(irb_capital(0.01, 0.45, 0.12, 0.999, 1.0) ==
          doctest::Approx(0.03614662409672939).epsilon(1e-12));

    // rho = 0: the stressed pd equals pd, so capital vanishes.
    CHECK(irb_capital(0.01, 0.45, 0.0, 0.999, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    // lgd = 0 wipes the whole bracket.
    CHECK(irb_capital(0.01, 0.0, 0.12, 0.999, 1.0) == 0.0);

    CHECK_THROWS(irb_capital(0.0, 0.45, 0.12, 0.999, 1.0));
    CHECK_THROWS(irb_capital(1.0, 0.45, 0.12, 0.999, 1.0));

    // Strictly increasing in rho and in q.
    double prev = 0.0;
    for (double rho : {0.05, 0.1, 0.2, 0.4}) {
        const double k = irb_capital(0.02, 0.5, rho, 0.999, 1.0);
        CHECK(k > prev);
        prev = k;
    }
    prev = 0.0;
    for (double q : {0.9, 0.99, 0.999, 0.9999}) {
        const double k = irb_capital(0.02, 0.5, 0.12, q, 1.0);
        CHECK(k > prev);
        prev = k;
    }
    // Linear in LGD.
    const double k1 = irb_capital(0.02, 0.3, 0.12, 0.999, 1.0);
    const double k2 = irb_capital(0.02, 0.6, 0.12, 0.999, 1.0);
    CHECK(k2 == doctest::Approx(2.0 * k1).epsilon(1e-12));
}

TEST_CASE("basel corporate correlation curve") {
    CHECK(basel_corporate_rho(0.001) == doctest::Approx(0.23414753094008567).epsilon(1e-12));
    CHECK(basel_corporate_rho(0.01) == doctest::Approx(0.192783679165516).epsilon(1e-12));
    CHECK(basel_corporate_rho(0.2) == doctest::Approx(0.12000544799157149).epsilon(1e-12));
    CapitalParams p;
    p.rho.reset();
    CHECK(resolve_rho(p, 0.01) == doctest::Approx(basel_corporate_rho(0.01)));
    p.rho = 0.07;
    CHECK(resolve_rho(p, 0.01) == 0.07);
}

TEST_CASE("portfolio capital") {
    CHECK(portfolio_capital({1.0}, {0.04}) == doctest::Approx(0.04));
    CHECK(portfolio_capital({0.5, 0.5}, {0.03, 0.03}) == doctest::Approx(0.03));
    CHECK(portfolio_capital({0.6, 0.4}, {0.02, 0.05}) == doctest::Approx(0.032).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(portfolio_capital({0.6, 0.2}, {0.02, 0.05}),
                         doctest::Contains("sum to 1"), std::invalid_argument);
    CHECK_THROWS(portfolio_capital({1.2, -0.2}, {0.02, 0.05}));
}

TEST_CASE("granularity adjustment") {
    CapitalParams params;
    params.rho = 0.12;

    // Single borrower: direct substitution of the closed form.
    const auto cap = borrower_capital(0.02, 0.45, params);
    const double gamma1 = granularity_adjustment({1.0}, {cap}, params.delta);
    const double expected =
        (1.0 / (2.0 * cap.k)) * cap.c * (params.delta * (cap.k + cap.reserve) - cap.k);
    CHECK(gamma1 == doctest::Approx(expected).epsilon(1e-14));

    // lgd = 1 collapses C_i to 1.
    const auto lossy = borrower_capital(0.02, 1.0, params);
    CHECK(lossy.c == doctest::Approx(1.0).epsilon(1e-14));

    // Equal shares scale like 1/N.
    std::vector<double> g;
    for (std::size_t n : {10ul, 100ul, 1000ul}) {
        std::vector<double> shares(n, 1.0 / static_cast<double>(n));
        std::vector<BorrowerCapital> caps(n, cap);
        g.push_back(granularity_adjustment(shares, caps, params.delta));
    }
    CHECK(g[0] / g[1] == doctest::Approx(10.0).epsilon(1e-10));
    CHECK(g[1] / g[2] == doctest::Approx(10.0).epsilon(1e-10));

    // Nonnegative term by term at the default delta.
    CHECK(params.delta * (cap.k + cap.reserve) - cap.k > 0.0);
    CHECK(gamma1 >= 0.0);

    // lgd = 0 makes C_i singular.
    CHECK_THROWS_WITH_AS(borrower_capital(0.02, 0.0, params), doctest::Contains("singular"),
                         std::domain_error);
}

TEST_CASE("two-tier gamma curve is proportional to the closed-form quadratic") {
    CapitalParams params;
    params.rho = 0.12;
    for (std::size_t n : {3ul, 5ul, 8ul}) {
        const double nd = static_cast<double>(n);
        std::vector<double> grid;
        const double w_max = 1.0 / (nd - 2.0);
        for (int i = 1; i < 40; ++i) grid.push_back(w_max * i / 40.0);
        const auto curve = overlap_gamma_curve(n, 0.02, 0.45, params, grid);
        CHECK(curve.max_rel_dev < 1e-10);
        CHECK(curve.w_at_minimum == doctest::Approx(1.0 / nd));

        // Frozen spot value for n = 5, w = 0.2 (u = 0.2, pd = 0.02, lgd = 0.45).
        if (n == 5) {
            for (const auto& pt : curve.points) {
                if (std::abs(pt.w - 0.2) < 1e-12) {
                    CHECK(pt.gamma == doctest::Approx(0.26960032740906226).epsilon(1e-12));
                    CHECK(pt.quadratic == doctest::Approx(0.4).epsilon(1e-12));
                }
            }
        }

        // Convexity: positive second difference along the grid.
        for (std::size_t i = 2; i < curve.points.size(); ++i) {
            const double second = curve.points[i].gamma - 2.0 * curve.points[i - 1].gamma +
                                  curve.points[i - 2].gamma;
            CHECK(second > 0.0);
        }
    }

    // Infeasible points are skipped, not fatal.
    const auto curve = overlap_gamma_curve(5, 0.02, 0.45, params, {-0.5, 0.1, 5.0});
    CHECK(curve.points.size() == 1);
    CHECK_THROWS(overlap_gamma_curve(2, 0.02, 0.45, params, {0.1}));
}

TEST_CASE("lender aggregation doubles the common exposure weight") {
    // System (a): N-1 lenders in a chain, each holding two borrowers; the
    // shared borrowers carry weight v from each side, the two end borrowers
    // weight u. Aggregating every lender into one reproduces the two-tier
    // portfolio with common weight w = 2v.
    const std::size_t n_borrowers = 6;
    const double v = 0.11, u = (1.0 - (n_borrowers - 2) * 2.0 * v) / 2.0;
    std::vector<double> aggregated(n_borrowers, 0.0);
    // Borrower 0 and borrower N-1 are the isolated ends.
    aggregated[0] += u;
    aggregated[n_borrowers - 1] += u;
    for (std::size_t lender = 0; lender + 1 < n_borrowers - 1; ++lender) {
        // Lender holds shared borrowers lender+... each inner borrower is
        // held by exactly two lenders with weight v.
        aggregated[lender + 1] += v;
        aggregated[lender + 1] += v;
    }
    for (std::size_t b = 1; b + 1 < n_borrowers; ++b)
        CHECK(aggregated[b] == doctest::Approx(2.0 * v).epsilon(1e-14));
    double tot = 0.0;
    for (double x : aggregated) tot += x;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));

    // The aggregated shares evaluate to the same gamma the curve reports.
    CapitalParams params;
    params.rho = 0.12;
    const auto curve = overlap_gamma_curve(n_borrowers, 0.02, 0.45, params, {2.0 * v});
    REQUIRE(curve.points.size() == 1);
    const auto cap = borrower_capital(0.02, 0.45, params);
    const double gamma = granularity_adjustment(
        aggregated, std::vector<BorrowerCapital>(n_borrowers, cap), params.delta);
    CHECK(gamma == doctest::Approx(curve.points[0].gamma).epsilon(1e-12));
}

TEST_CASE("sampled minimum of the gamma curve sits at w = 1/N") {
    CapitalParams params;
    params.rho = 0.12;
    const std::size_t n = 6;
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(static_cast<double>(i) / (60.0 * 4.0));
    const auto curve = overlap_gamma_curve(n, 0.03, 0.5, params, grid);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        if (curve.points[i].gamma < curve.points[arg].gamma) arg = i;
    CHECK(curve.points[arg].w == doctest::Approx(1.0 / 6.0).epsilon(0.05));
}

TEST_CASE("capital params validation") {
    CapitalParams p;
    p.q = 1.5;
    CHECK_THROWS(p.validate());
    p = CapitalParams{};
    p.rho = 1.0;
    CHECK_THROWS(p.validate());
    p = CapitalParams{};
    CHECK_NOTHROW(p.validate());
}
