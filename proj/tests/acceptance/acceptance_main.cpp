// Acceptance suite: one line per criterion, nonzero exit on any failure.
// An optional argv[1] (1-10) runs a single criterion.

#include "ccch/dynamics.hpp"
#include "ccch/experiments.hpp"
#include "ccch/peakon.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace ccch;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome spectral_identities() {
    const GridSpec g = make_grid(256, kTwoPi);
    double worst_round = 0.0, worst_identity = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Field u = random_band_field(g, 60, 1.0, 9000 + trial);
        const Field back = helmholtz_inv(helmholtz(u));
        const double scale = sup_norm(u);
        for (int j = 0; j < g.n; ++j)
            worst_round = std::max(worst_round, std::abs(back[j] - u[j]) / scale);

        const Field m = helmholtz(u);
        for (double s : {0.0, 1.0, 2.5, 3.0}) {
            const double a = sobolev_norm(u, s);
            const double b = sobolev_norm(m, s - 2.0);
            worst_identity = std::max(worst_identity, std::abs(a - b) / a);
        }
    }
    return {worst_round <= 1e-12 && worst_identity <= 1e-12,
            "round=" + std::to_string(worst_round) + " identity=" + std::to_string(worst_identity)};
}

Outcome formulation_consistency() {
    const GridSpec g = make_grid(128, kTwoPi);
    double worst = 0.0;
    int trial = 0;
    const int pqs[] = {1, 2, 3};
    const double abs_[] = {1.0, 2.0, 3.0};
    while (trial < 100) {
        for (int p : pqs)
            for (int q : pqs)
                for (double a : abs_)
                    for (double b : abs_) {
                        if (trial >= 100) break;
                        const PdeParams par{p, q, a, b};
                        const FieldState s(random_band_field(g, 10, 0.4, 40000 + trial),
                                           random_band_field(g, 10, 0.4, 41000 + trial), par);
                        const TendencyPair dm = rhs_momentum(s);
                        const TendencyPair du = rhs_velocity(s);
                        const Field lhs1 = helmholtz(du.first);
                        const Field lhs2 = helmholtz(du.second);
                        for (int j = 0; j < g.n; ++j) {
                            worst = std::max(worst, std::abs(lhs1[j] - dm.first[j]));
                            worst = std::max(worst, std::abs(lhs2[j] - dm.second[j]));
                        }
                        ++trial;
                    }
    }
    return {worst <= 1e-10, "max_abs_err=" + std::to_string(worst)};
}

Outcome conservation() {
    ConservationParams par;  // p=q=2, a=b=1, n=256, dt=1e-3, t_final=1
    const ConservationReport rep = run_conservation(par);
    return {rep.pass, "drift_m2=" + std::to_string(rep.max_drift_m2) +
                          " drift_n2=" + std::to_string(rep.max_drift_n2) +
                          " rate=" + std::to_string(rep.max_rate_mismatch)};
}

Outcome lagrangian_identity() {
    const GridSpec g = make_grid(256, kTwoPi);
    SolverParams sp;
    sp.pde = PdeParams{2, 2, 1.0, 1.0};
    sp.dt = 1e-3;
    sp.t_final = 0.5;
    sp.monitor_every = 1;
    const FieldState s0(random_band_field(g, 6, 0.4, 2024),
                        random_band_field(g, 6, 0.4, 2025), sp.pde);
    const IntegrateResult res = integrate(s0, sp);
    if (res.trace.verdict != RunVerdict::healthy) return {false, "run not healthy"};

    std::vector<double> seeds;
    for (int j = 0; j < g.n; j += 4) seeds.push_back(g.point(j));
    const CharacteristicBundle chars = evolve_characteristics(res.trajectory, seeds);
    if (!chars.jacobians_positive) return {false, "jacobian invariant violated"};

    const Spectrum m0 = analyze(s0.m());
    const double expo = sp.pde.a / sp.pde.p;
    double worst = 0.0;
    for (size_t i = 0; i < chars.times.size(); ++i) {
        const Spectrum mt = analyze(res.trajectory.states[i].m());
        for (size_t j = 0; j < seeds.size(); ++j) {
            const double lhs =
                eval_series(mt, chars.phi[i][j]) * std::pow(chars.phi_x[i][j], expo);
            worst = std::max(worst, std::abs(lhs - eval_series(m0, seeds[j])));
        }
    }
    return {worst <= 1e-4, "sup_residual=" + std::to_string(worst)};
}

Outcome peakon_exactness() {
    const double c = 1.0;
    PeakonConfiguration cfg = exact_traveling_peakon(c, 1, 1, PeakonDomain::line, 0.0);
    cfg.params.a = 2.0;
    cfg.params.b = 2.0;

    const PeakonTrajectory traj = integrate_peakons(cfg, 1.0, 1e-3);
    const double travel_err = std::abs(traj.configs.back().g[0] - cfg.g[0] - c);
    const double amp_drift = std::abs(traj.configs.back().f[0] - cfg.f[0]);

    const WeakResidualReport good = weak_residual(cfg, c);

    PeakonConfiguration bad = cfg;
    bad.f[0] *= 2.0;
    bad.h[0] *= 2.0;
    const WeakResidualReport scaled = weak_residual(bad, c);

    const bool pass = travel_err <= 1e-10 && amp_drift <= 1e-12 && good.identity_pass &&
                      good.sup_residual_u <= 1e-3 &&
                      scaled.sup_residual_u >= 0.1 * c * cfg.f[0];
    return {pass, "travel=" + std::to_string(travel_err) +
                      " drift=" + std::to_string(amp_drift) +
                      " res=" + std::to_string(good.sup_residual_u) +
                      " scaled_res=" + std::to_string(scaled.sup_residual_u)};
}

Outcome lemma51_limit() {
    const double lambdas[] = {256.0, 512.0, 1024.0, 2048.0, 4096.0};
    const Lemma51Report rep = check_lemma51(gaussian_profile, 3.0, 0.5, lambdas);
    return {rep.monotone && rep.final_within_5pct,
            "final_ratio=" + std::to_string(rep.rows.back().ratio) +
                (rep.monotone ? " monotone" : " non-monotone")};
}

Outcome nonuniform_dependence() {
    NonuniformParams par;  // p=q=1, a=b=2, s=3, delta=0.5
    par.lambdas = {64.0, 128.0, 256.0, 512.0, 1024.0};
    par.t_probe = 1.0;
    const NonuniformReport rep = run_nonuniform(par);
    const bool pass = rep.decreasing_pass && rep.slope_pass && rep.lower_pass;
    return {pass, "slope=" + std::to_string(rep.fitted_slope0) +
                      " (predicted " + std::to_string(rep.predicted_slope0) +
                      ") bound=" + std::to_string(rep.lower_bound)};
}

Outcome hoelder_region_a1() {
    HoelderParams par;  // s=3, r=2, five dyadic eps
    const HoelderReport rep = run_hoelder(par);
    return {rep.region.name == "A1" && rep.fitted_exponent >= 0.9,
            "fitted=" + std::to_string(rep.fitted_exponent)};
}

Outcome size_lifespan_bound() {
    const GridSpec g = make_grid(256, kTwoPi);
    const PdeParams pde{1, 1, 2.0, 2.0};
    double worst_growth = 0.0;
    bool all_pass = true;
    for (unsigned long long seed = 101; seed <= 110; ++seed) {
        const FieldState s0(random_band_field(g, 6, 0.5, seed),
                            random_band_field(g, 6, 0.5, seed + 7919), pde);
        const SizeBoundResult res = check_size_bound(s0, 3.0, kCalibratedCs);
        worst_growth = std::max({worst_growth, res.max_growth_u, res.max_growth_v});
        all_pass = all_pass && res.pass;
    }
    return {all_pass, "C_s=" + std::to_string(kCalibratedCs) +
                          " worst_growth=" + std::to_string(worst_growth)};
}

Outcome compact_support() {
    const GridSpec g = make_grid(1024, 40.0);
    SolverParams sp;
    sp.pde = PdeParams{2, 2, 1.0, 1.0};
    sp.dt = 1e-3;
    sp.t_final = 0.25;
    sp.monitor_every = 5;

    auto bump = [](double x) {
        const double y = (x - 20.0) / 4.0;
        return std::abs(y) < 1.0 ? 0.8 * std::exp(-1.0 / (1.0 - y * y)) : 0.0;
    };
    const Field m0 = Field::sample(g, bump);
    const FieldState s0(helmholtz_inv(m0), 0.6 * helmholtz_inv(m0), sp.pde);
    const IntegrateResult res = integrate(s0, sp);
    if (res.trace.verdict != RunVerdict::healthy) return {false, "run not healthy"};
    const SupportReport rep = support_diagnostic(res.trajectory, 1e-10);
    return {rep.verdict == SupportVerdict::pass, std::string("verdict=") + to_string(rep.verdict)};
}

}  // namespace

int main(int argc, char** argv) {
    using Criterion = std::pair<std::string, std::function<Outcome()>>;
    const std::vector<Criterion> criteria = {
        {"spectral identities (Helmholtz round-trip, norm identity)", spectral_identities},
        {"formulation consistency (momentum vs velocity)", formulation_consistency},
        {"conservation of momentum L2 integrals (p=2a, q=2b)", conservation},
        {"Lagrangian identity along characteristics", lagrangian_identity},
        {"peakon exactness (ODE travel + weak residual)", peakon_exactness},
        {"dyadic-limit scaled norm (Gaussian profile)", lemma51_limit},
        {"non-uniform dependence sweep", nonuniform_dependence},
        {"Hoelder continuity region A1", hoelder_region_a1},
        {"size/lifespan factor-2 bound (calibrated C_s)", size_lifespan_bound},
        {"compact support propagation", compact_support},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& err) {
            out = {false, std::string("exception: ") + err.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2zu: %s (%s, %.1fs)\n", out.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
