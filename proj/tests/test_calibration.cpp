#include <doctest.h>

#include <cmath>

#include "rac/calibration.hpp"
#include "rac/error.hpp"
#include "rac/moments.hpp"
#include "test_support.hpp"

using namespace rac;

namespace {

// Pricing relations written out directly in long double.
Residuals oracle_residuals(double zeta, double xi, double rho, double beta, const SampleMoments& m) {
    using L = long double;
    const L mu = m.mu_x, s2 = m.sigma2_x, r = rho;
    const L lrf = std::log(L(m.mean_Rf)), lre = std::log(L(m.mean_Re)), lex = std::log(L(m.mean_x));
    const L lb = std::log(L(beta)), lz = std::log(L(zeta)), lx = std::log(L(xi));
    const L rf_model = -lb - lx + r * mu - r * r * s2 / 2;
    const L re_model = lex - lb - lz - (1 - r) * mu - (1 - r) * (1 - r) * s2 / 2;
    const L rp_model = lx - lz + r * s2;
    return {double(lrf - rf_model), double(lre - re_model), double((lre - lrf) - rp_model)};
}

ErrorCode solve_error(double beta, const SampleMoments& m) {
    try {
        solve_system(beta, m);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected rac::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("residuals vanish at a hand-built root") {
    SampleMoments m;
    m.mu_x = 0.0;
    m.sigma2_x = 0.0;
    m.mean_x = 1.0;
    m.mean_Rf = 1.0 / 0.99;
    m.mean_Re = 1.0 / 0.99;
    auto r = system_residuals({1.0, 1.0}, 2.0, 0.99, m);
    for (double v : r) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("residuals agree with an independent long-double oracle") {
    test::Gen gen(5150);
    for (int i = 0; i < 2000; ++i) {
        SampleMoments m = gen.lognormal_consistent_moments();
        m.mean_x *= std::exp(gen.uniform(-1e-3, 1e-3));
        const double zeta = gen.uniform(0.5, 2.0), xi = gen.uniform(0.5, 2.0);
        const double rho = gen.uniform(0.0, 10.0), beta = gen.uniform(0.8, 1.0);
        auto got = system_residuals({zeta, xi}, rho, beta, m);
        auto want = oracle_residuals(zeta, xi, rho, beta, m);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);
    }
}

TEST_CASE("published realized triple leaves small residuals on the bundled data") {
    auto m = compute_moments(test::reference_dataset());
    auto r = system_residuals({test::kZetaRealized, test::kXiRealized}, test::kRhoRealized, test::kBeta, m);
    for (double v : r) CHECK(std::abs(v) < 5e-3);
}

TEST_CASE("closed form zeroes the pricing residuals; the premium residual is the gap") {
    test::Gen gen(606);
    for (int i = 0; i < 1000; ++i) {
        SampleMoments m = gen.lognormal_consistent_moments();
        m.mean_x *= std::exp(gen.uniform(-1e-3, 1e-3));
        const double rho = gen.uniform(0.0, 10.0), beta = gen.uniform(0.8, 1.0);
        auto f = solve_closed_form_given_rho(rho, beta, m);
        auto r = system_residuals(f, rho, beta, m);
        CHECK(std::abs(r[0]) < 1e-12);
        CHECK(std::abs(r[1]) < 1e-12);
        CHECK(std::abs(r[2] - consistency_gap(m)) < 1e-10);
    }
}

TEST_CASE("analytic Jacobian matches finite differences and has dependent rows") {
    test::Gen gen(31337);
    for (int i = 0; i < 200; ++i) {
        SampleMoments m = gen.lognormal_consistent_moments();
        const double rho = gen.uniform(0.0, 8.0), beta = 0.97;
        const double lz = gen.uniform(-0.3, 0.3), lx = gen.uniform(-0.3, 0.3);
        auto j = system_jacobian(rho, m);
        const double h = 1e-6;
        auto at = [&](double a, double b, double c) {
            return system_residuals({std::exp(a), std::exp(b)}, c, beta, m);
        };
        for (int col = 0; col < 3; ++col) {
            double d[3] = {0, 0, 0};
            d[col] = h;
            auto up = at(lz + d[0], lx + d[1], rho + d[2]);
            auto dn = at(lz - d[0], lx - d[1], rho - d[2]);
            for (int row = 0; row < 3; ++row) {
                CHECK((up[row] - dn[row]) / (2 * h) == doctest::Approx(j[row][col]).epsilon(1e-6).scale(1.0));
            }
        }
        for (int col = 0; col < 3; ++col) CHECK(j[2][col] == doctest::Approx(j[1][col] - j[0][col]).scale(1.0));
    }
}

TEST_CASE("condition diagnostic") {
    Jacobian identity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK(condition_diagnostic(identity) == doctest::Approx(1.0));
    Jacobian scaled{{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}}};
    CHECK(condition_diagnostic(scaled) == doctest::Approx(4.0));

    test::Gen gen(1);
    for (int i = 0; i < 100; ++i) {
        auto m = gen.lognormal_consistent_moments();
        const double c = condition_diagnostic(system_jacobian(gen.uniform(0, 10), m));
        CHECK(c >= 1.0);
        CHECK(c > 1e10);
    }
}

TEST_CASE("xi moves with rho as xi (mu - rho sigma2)") {
    auto m = compute_moments(test::reference_dataset());
    for (double rho : {0.0, 0.5, 1.0, 1.0335, 5.0, 20.0}) {
        const double h = 1e-6;
        const double fd =
            (solve_closed_form_given_rho(rho + h, 0.99, m).xi - solve_closed_form_given_rho(rho - h, 0.99, m).xi) /
            (2 * h);
        const double xi = solve_closed_form_given_rho(rho, 0.99, m).xi;
        const double analytic = xi * (m.mu_x - rho * m.sigma2_x);
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
        CHECK((fd > 0) == (rho < m.mu_x / m.sigma2_x));
    }
}

TEST_CASE("solve_system: degenerate when the log-normal identity holds") {
    test::Gen gen(9);
    for (int i = 0; i < 50; ++i) {
        CHECK(solve_error(0.99, gen.lognormal_consistent_moments()) == ErrorCode::DegenerateSystem);
    }
}

TEST_CASE("solve_system: no root on the bundled sample") {
    auto m = compute_moments(test::reference_dataset());
    REQUIRE(std::abs(consistency_gap(m)) > 1e-9);
    try {
        solve_system(0.99, m);
        FAIL("expected NoConvergence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoConvergence);
        CHECK(std::string(e.what()).find("not identified") != std::string::npos);
    }
}

TEST_CASE("solve_system: gap inside the residual tolerance accepts the initial rho") {
    test::Gen gen(10);
    for (int i = 0; i < 50; ++i) {
        SampleMoments m = gen.lognormal_consistent_moments();
        m.mean_x *= std::exp(gen.uniform(2e-12, 5e-10));
        REQUIRE(std::abs(consistency_gap(m)) >= 1e-12);
        const double rho0 = gen.uniform(0.0, 10.0);
        auto res = solve_system(0.99, m, InitialGuess{1.0, 1.0, rho0});
        CHECK(res.rho == rho0);
        for (double v : res.residuals) CHECK(std::abs(v) < 1e-9);
        CHECK(res.condition_diagnostic >= 1.0);
        auto f = solve_closed_form_given_rho(rho0, 0.99, m);
        CHECK(res.factors.zeta == f.zeta);
        CHECK(res.factors.xi == f.xi);
    }
}

TEST_CASE("solve_system rejects factors outside the admissible region") {
    SampleMoments m;
    m.mu_x = 0.0;
    m.sigma2_x = 0.0;
    m.mean_x = 1.0 + 1e-10;
    m.mean_Rf = 0.01;
    m.mean_Re = 1.0;
    CHECK(solve_error(0.99, m) == ErrorCode::NoConvergence);
}

TEST_CASE("argument checks") {
    auto m = compute_moments(test::reference_dataset());
    CHECK_THROWS_AS(system_residuals({0.0, 1.0}, 1.0, 0.99, m), Error);
    CHECK_THROWS_AS(system_residuals({1.0, 1.0}, 1.0, 0.0, m), Error);
    CHECK_THROWS_AS(solve_closed_form_given_rho(1.0, 1.5, m), Error);
    m.sigma2_x = -1.0;
    CHECK_THROWS_AS(solve_closed_form_given_rho(1.0, 0.99, m), Error);
}

TEST_CASE("calibrate_at_rho at the published rho") {
    auto m = compute_moments(test::reference_dataset());
    auto c = calibrate_at_rho(test::kRhoRealized, test::kBeta, m);
    CHECK(c.factors.zeta == doctest::Approx(test::kZetaRealized).epsilon(1e-3));
    CHECK(c.factors.xi == doctest::Approx(test::kXiRealized).epsilon(1e-3));
    CHECK(c.consistency_gap == consistency_gap(m));
    CHECK(std::abs(c.residuals[2] - c.consistency_gap) < 1e-12);
}
