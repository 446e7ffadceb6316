#include "ccch/norms.hpp"
#include "ccch/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ccch;

namespace {

Field random_field(GridSpec grid, int kmax, unsigned seed) {
    std::mt19937 eng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field f(grid);
    for (int k = 1; k <= kmax; ++k) {
        const double a = dist(eng) / (1.0 + k);
        const double b = dist(eng) / (1.0 + k);
        const double kk = kTwoPi * k / grid.length;
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.point(j);
            f[j] += a * std::cos(kk * x) + b * std::sin(kk * x);
        }
    }
    return f;
}

}  // namespace

TEST_CASE("sobolev norm reference values") {
    const GridSpec g = make_grid(256, kTwoPi);
    const Field s = Field::sample(g, [](double x) { return std::sin(x); });
    CHECK(sobolev_norm(s, 0.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(sobolev_norm(s, 1.0) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-12));
}

TEST_CASE("smoothed line peakon has H^1 norm sqrt(2) on a wide box") {
    // Oracle: (1/2pi) \int (1+xi^2) |2/(1+xi^2)|^2 dxi = 2 for e^{-|x|}.
    const GridSpec g = make_grid(4096, 40.0);
    const Field peak = Field::sample(g, [&](double x) { return std::exp(-std::abs(x - 20.0)); });
    CHECK(sobolev_norm(peak, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("norm identity ||u||_{H^s} = ||m||_{H^{s-2}} is exact") {
    const GridSpec g = make_grid(128, kTwoPi);
    for (unsigned seed = 0; seed < 20; ++seed) {
        const Field u = random_field(g, 40, seed);
        const Field m = helmholtz(u);
        for (double s : {0.0, 1.0, 2.5, 3.0}) {
            const double lhs = sobolev_norm(u, s);
            const double rhs = sobolev_norm(m, s - 2.0);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs));
        }
    }
}

TEST_CASE("sobolev norm is monotone in s") {
    const GridSpec g = make_grid(128, kTwoPi);
    const Field f = random_field(g, 30, 9u);
    double prev = 0.0;
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
        const double cur = sobolev_norm(f, s);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("interpolation inequality holds with machine slack") {
    const GridSpec g = make_grid(128, kTwoPi);
    for (unsigned seed = 0; seed < 50; ++seed) {
        const Field f = random_field(g, 40, 200 + seed);
        const double s1 = 0.5, s = 1.75, s2 = 3.25;
        const double lhs = sobolev_norm(f, s);
        const double rhs = std::pow(sobolev_norm(f, s1), (s2 - s) / (s2 - s1)) *
                           std::pow(sobolev_norm(f, s2), (s - s1) / (s2 - s1));
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("dyadic block assignment") {
    CHECK(dyadic_block_index(0.0) == -1);
    CHECK(dyadic_block_index(1.0) == -1);
    CHECK(dyadic_block_index(1.5) == 1);
    CHECK(dyadic_block_index(2.0) == 2);
    CHECK(dyadic_block_index(4.0) == 3);
    CHECK(dyadic_block_index(7.99) == 3);
    CHECK(dyadic_block_index(8.0) == 4);
    CHECK(dyadic_block_index(1024.0) == 11);
}

TEST_CASE("besov norm of a single mode occupies one block") {
    const GridSpec g = make_grid(128, kTwoPi);
    const Field c4 = Field::sample(g, [](double x) { return std::cos(4.0 * x); });
    const double l2 = sobolev_norm(c4, 0.0);
    for (double s : {0.5, 1.0, 2.0}) {
        const double expected = std::pow(2.0, 3.0 * s) * l2;  // k=4 lives in block j=3
        for (double r : {1.0, 2.0, std::numeric_limits<double>::infinity()})
            CHECK(besov_norm(c4, s, r) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("besov r=2 is equivalent to sobolev with the partition constant") {
    // Oracle: per-mode bounds max/min over occupied blocks of (1+k^2)^{s/2}/2^{js}.
    const GridSpec g = make_grid(256, kTwoPi);
    const double s = 1.5;
    for (unsigned seed = 0; seed < 100; ++seed) {
        const Field f = random_field(g, 100, 300 + seed);
        const Spectrum spec = analyze(f);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int j = 0; j < spec.grid.num_modes(); ++j) {
            if (std::norm(spec.c[j]) == 0.0) continue;
            const double k = spec.grid.wavenumber(j);
            const double ratio =
                std::pow(1.0 + k * k, s / 2.0) / std::pow(2.0, dyadic_block_index(k) * s);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        const double sob = sobolev_norm(f, s);
        const double bes = besov_norm(f, s, 2.0);
        CHECK(sob <= hi * bes * (1.0 + 1e-12));
        CHECK(sob >= lo * bes * (1.0 - 1e-12));
    }
}

TEST_CASE("besov of the zero field vanishes and l1 dominates linf") {
    const GridSpec g = make_grid(64, kTwoPi);
    const Field zero(g);
    const double inf = std::numeric_limits<double>::infinity();
    for (double s : {0.0, 1.0, 2.5})
        for (double r : {1.0, 2.0, inf}) CHECK(besov_norm(zero, s, r) == 0.0);

    for (unsigned seed = 0; seed < 30; ++seed) {
        const Field f = random_field(g, 20, 400 + seed);
        CHECK(besov_norm(f, 1.5, 1.0) >= besov_norm(f, 1.5, inf) * (1.0 - 1e-13));
    }
}

TEST_CASE("lebesgue and sup norms") {
    const GridSpec g = make_grid(256, kTwoPi);

    Field two(g);
    for (int j = 0; j < g.n; ++j) two[j] = 2.0;
    CHECK(lp_norm(two, 2.0) == doctest::Approx(2.0 * std::sqrt(kTwoPi)).epsilon(1e-13));

    const Field s = Field::sample(g, [](double x) { return std::sin(x); });
    const double tol = std::pow(kPi / g.n, 2);
    CHECK(std::abs(sup_norm(s) - 1.0) <= tol);

    // |sin x|^3 against a 10x-resolution quadrature oracle
    const GridSpec fine = make_grid(4096, kTwoPi);
    double oracle = 0.0;
    for (int j = 0; j < fine.n; ++j) oracle += std::pow(std::abs(std::sin(fine.point(j))), 3.0);
    oracle *= fine.dx();
    const double val = std::pow(lp_norm(s, 3.0), 3.0);
    CHECK(val == doctest::Approx(oracle).epsilon(1e-8));

    CHECK_THROWS_AS(lp_norm(s, 0.5), std::invalid_argument);
}

TEST_CASE("moser product bound with one constant across random fields") {
    const GridSpec g = make_grid(256, kTwoPi);
    const double s = 3.0;
    double worst = 0.0;
    for (unsigned seed = 0; seed < 40; ++seed) {
        const Field f = random_field(g, 40, 500 + seed);
        const Field h = random_field(g, 40, 600 + seed);
        const Field fh = dealiased_product({&f, &h});
        const double bound =
            sup_norm(f) * sobolev_norm(h, s) + sup_norm(h) * sobolev_norm(f, s);
        worst = std::max(worst, sobolev_norm(fh, s) / bound);
    }
    CHECK(worst <= 4.0);
}
