#include "ccch/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccch;

TEST_CASE("bump profiles have exact plateaus and C2 seams") {
    CHECK(bump_plateau1(0.0) == 1.0);
    CHECK(bump_plateau1(0.999) == 1.0);
    CHECK(bump_plateau1(-0.5) == 1.0);
    CHECK(bump_plateau1(2.0) == 0.0);
    CHECK(bump_plateau1(3.7) == 0.0);
    CHECK(bump_plateau1(1.5) > 0.0);
    CHECK(bump_plateau1(1.5) < 1.0);

    CHECK(bump_plateau2(1.99) == 1.0);
    CHECK(bump_plateau2(-2.0) == 1.0);
    CHECK(bump_plateau2(4.0) == 0.0);

    // phi~^q == 1 on supp phi (the exact cutoff relation)
    for (double x = -2.0; x <= 2.0; x += 0.01)
        for (int q : {1, 2, 3}) CHECK(std::pow(bump_plateau2(x), q) == 1.0);

    // C2: second difference stays bounded through the seams
    auto second_diff = [](double x, double h) {
        return (bump_plateau1(x + h) - 2.0 * bump_plateau1(x) + bump_plateau1(x - h)) / (h * h);
    };
    for (double x : {0.999, 1.0, 1.001, 1.999, 2.0, 2.001})
        CHECK(std::abs(second_diff(x, 1e-4)) < 10.0);
}

TEST_CASE("oscillation grid sizing") {
    const GridSpec g = oscillation_grid(64.0, 4.0 * 8.0, 8);
    CHECK(g.length >= 4.0 * 32.0);
    // lambda periodic on the box and resolved by >= 8 points per wavelength
    const double cycles = 64.0 * g.length / kTwoPi;
    CHECK(std::abs(cycles - std::round(cycles)) < 1e-9);
    CHECK(g.n >= 8.0 * cycles);
    CHECK_THROWS_AS(oscillation_grid(3.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillation_grid(64.5, 10.0), std::invalid_argument);
}

TEST_CASE("high frequency family") {
    SUBCASE("omega = 0 gives a time-independent profile") {
        const GridSpec g = oscillation_grid(64.0, 4.0 * 8.0, 8);
        HighFreqSpec spec;
        spec.omega = 0.0;
        spec.lambda = 64.0;
        auto [u1, v1] = build_high_freq(spec, g);
        spec.t = 0.7;
        auto [u2, v2] = build_high_freq(spec, g);
        for (int j = 0; j < g.n; j += 17) {
            CHECK(u1[j] == u2[j]);
            CHECK(v1[j] == v2[j]);
        }
    }

    SUBCASE("H^r norms scale like lambda^{r-s}") {
        const double s = 3.0, delta = 0.5;
        for (double r : {0.0, 3.0}) {
            for (double lambda : {64.0, 256.0, 1024.0}) {
                const GridSpec g =
                    oscillation_grid(lambda, 2.0 * std::pow(lambda, delta), 8);
                HighFreqSpec spec;
                spec.lambda = lambda;
                spec.delta = delta;
                spec.s = s;
                auto [u, v] = build_high_freq(spec, g);
                const double ratio = sobolev_norm(u, r) / std::pow(lambda, r - s);
                CHECK(ratio > 0.3);
                CHECK(ratio < 3.0);
            }
        }
    }

    SUBCASE("sup norm respects the amplitude bound") {
        const double s = 3.0, delta = 0.5;
        const double lambda = 256.0;
        const GridSpec g = oscillation_grid(lambda, 2.0 * std::pow(lambda, delta), 8);
        HighFreqSpec spec;
        spec.lambda = lambda;
        spec.delta = delta;
        spec.s = s;
        auto [u, v] = build_high_freq(spec, g);
        CHECK(sup_norm(u) <= std::pow(lambda, -delta / 2.0 - s) * (1.0 + 1e-12));
    }

    SUBCASE("under-resolved lambda is rejected") {
        const GridSpec g = make_grid(64, kTwoPi);
        HighFreqSpec spec;
        spec.lambda = 64.0;
        CHECK_THROWS_AS(build_high_freq(spec, g), std::invalid_argument);
    }
}

TEST_CASE("low frequency data") {
    SUBCASE("omega = 0 gives zero data") {
        const GridSpec g = oscillation_grid(64.0, 4.0 * 8.0, 8);
        auto [u, v] = build_low_freq_data(0.0, 64.0, 0.5, 1, 1, g);
        CHECK(sup_norm(u) == 0.0);
        CHECK(sup_norm(v) == 0.0);
    }

    SUBCASE("H^r norm obeys the lambda^{(delta-2)/(2q)} envelope") {
        const double delta = 0.5;
        const int q = 2, p = 1;
        for (double lambda : {64.0, 256.0}) {
            const GridSpec g = oscillation_grid(lambda, 4.0 * std::pow(lambda, delta), 8);
            auto [u, v] = build_low_freq_data(1.0, lambda, delta, q, p, g);
            // ||phi~||_{H^r} on the same box
            Field profile(g);
            const double width = std::pow(lambda, delta / q);
            for (int j = 0; j < g.n; ++j)
                profile[j] = bump_plateau2((g.point(j) - 0.5 * g.length) / width);
            const double bound = std::pow(lambda, (delta - 2.0) / (2.0 * q)) *
                                 sobolev_norm(profile, 3.0) /
                                 std::pow(lambda, delta / (2.0 * q));
            // u_l(0) = lambda^{-1/q} profile, and ||profile(x/w)|| <= w^{1/2}||profile||
            CHECK(sobolev_norm(u, 3.0) <=
                  std::pow(lambda, -1.0 / q) * sobolev_norm(profile, 3.0) * (1.0 + 1e-9));
            (void)bound;
        }
    }

    SUBCASE("scaling identity for the rescaled profile L2 norm") {
        const GridSpec g = make_grid(1 << 14, 256.0);
        for (double rho : {2.0, 4.0, 8.0}) {
            Field narrow(g), wide(g);
            for (int j = 0; j < g.n; ++j) {
                const double xc = g.point(j) - 128.0;
                narrow[j] = bump_plateau2(xc);
                wide[j] = bump_plateau2(xc / rho);
            }
            const double lhs = std::pow(sobolev_norm(wide, 0.0), 2);
            const double rhs = rho * std::pow(sobolev_norm(narrow, 0.0), 2);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
        }
    }
}

TEST_CASE("dyadic-limit scaled norms approach ||psi||_L2/sqrt(2)") {
    const double lambdas[] = {256.0, 512.0, 1024.0};
    const Lemma51Report rep = check_lemma51(gaussian_profile, 3.0, 0.5, lambdas);
    CHECK(rep.rows.size() == 3);
    CHECK(rep.monotone);
    CHECK(std::abs(rep.rows.back().ratio - 1.0) < 0.05);

    const Lemma51Report sin_rep = check_lemma51(gaussian_profile, 3.0, 0.5, lambdas, true);
    CHECK(std::abs(sin_rep.rows.back().ratio - rep.rows.back().ratio) < 0.02);

    const Lemma51Report zero_rep =
        check_lemma51([](double) { return 0.0; }, 3.0, 0.5, lambdas);
    for (const auto& row : zero_rep.rows) CHECK(row.scaled_norm == 0.0);
}

TEST_CASE("hoelder region classification") {
    CHECK(hoelder_region(3.0, 2.0).name == "A1");
    CHECK(hoelder_region(3.0, 2.0).alpha == 1.0);
    CHECK(hoelder_region(4.0, 1.0).name == "A1");

    const HoelderRegion a2 = hoelder_region(2.75, 0.2);
    CHECK(a2.name == "A2");
    CHECK(a2.alpha == doctest::Approx((2.0 * 2.75 - 3.0) / (2.75 - 0.2)));

    const HoelderRegion a3 = hoelder_region(3.0, 1.4);
    CHECK(a3.name == "A3");
    CHECK(a3.alpha == doctest::Approx((3.0 - 1.4) / 2.0));

    const HoelderRegion a4 = hoelder_region(3.0, 2.5);
    CHECK(a4.name == "A4");
    CHECK(a4.alpha == doctest::Approx(0.5));

    CHECK_THROWS_AS(hoelder_region(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hoelder_region(3.0, 3.5), std::invalid_argument);
    CHECK_THROWS_AS(hoelder_region(3.0, -0.5), std::invalid_argument);
}

TEST_CASE("hoelder sweep in the Lipschitz region fits exponent near one") {
    HoelderParams par;
    par.s = 3.0;
    par.r = 2.0;
    par.p = 1;
    par.q = 1;
    par.a = 2.0;
    par.b = 2.0;
    par.n = 128;
    par.t_final = 0.1;
    par.dt = 2e-3;
    par.eps_list = {2e-2, 1e-2, 5e-3, 2.5e-3};
    const HoelderReport rep = run_hoelder(par);
    CHECK(rep.region.name == "A1");
    CHECK(rep.fitted_exponent >= 0.9);
    CHECK(rep.pass);
}

TEST_CASE("conservation harness passes for p=2a q=2b") {
    ConservationParams par;
    par.n = 128;
    par.t_final = 0.2;
    const ConservationReport rep = run_conservation(par);
    CHECK(rep.pass);
    CHECK(rep.max_drift_m2 <= par.drift_tol);
}

TEST_CASE("size bound harness") {
    const GridSpec g = make_grid(128, kTwoPi);
    const PdeParams pde{1, 1, 2.0, 2.0};
    const FieldState s0(random_band_field(g, 6, 0.5, 42), random_band_field(g, 6, 0.5, 43), pde);
    const SizeBoundResult res = check_size_bound(s0, 3.0, kCalibratedCs, 2e-3);
    CHECK(res.t0 > 0.0);
    CHECK(res.pass);

    const FieldState zero(Field(g), Field(g), pde);
    CHECK(check_size_bound(zero, 3.0, kCalibratedCs).pass);
}

TEST_CASE("approximate-solution residual decays at the predicted rate") {
    const double lambdas[] = {64.0, 128.0, 256.0};
    const ResidualDecayReport rep = residual_decay(3.0, 2.0, 0.5, 1, 1, 2.0, 2.0, lambdas);
    CHECK(rep.theta_s == doctest::Approx(1.5));
    CHECK(rep.pass);
}

TEST_CASE("small nonuniform sweep shows the decay/separation pattern") {
    NonuniformParams par;
    par.lambdas = {16.0, 32.0, 64.0};
    par.t_probe = 0.5;
    par.dt = 0.01;
    const NonuniformReport rep = run_nonuniform(par);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.decreasing_pass);
    for (const auto& row : rep.rows) {
        CHECK_FALSE(row.excluded);
        CHECK(row.dist_t > 0.0);
    }
    // degenerate omega list collapses to zero distance by construction:
    // identical data integrate identically
    const GridSpec g = oscillation_grid(64.0, 4.0 * 8.0, 8);
    auto [u0, v0] = build_low_freq_data(0.0, 64.0, 0.5, 1, 1, g);
    CHECK(sup_norm(u0) == 0.0);
    (void)v0;
}
