#include "ccch/dynamics.hpp"

#include "ccch/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ccch {

namespace {

// Pointwise helpers on padded work arrays.
void mul_into(std::vector<double>& acc, const std::vector<double>& f) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] *= f[i];
}

std::vector<double> power_of(const std::vector<double>& f, int p) {
    std::vector<double> out(f.size(), 1.0);
    for (int m = 0; m < p; ++m) mul_into(out, f);
    return out;
}

struct PaddedFactors {
    std::vector<double> w;    // u or v on the padded grid
    std::vector<double> wx;   // first derivative
    std::vector<double> wxx;  // second derivative
};

PaddedFactors upsample_with_derivs(const ProductWorkspace& ws, const Spectrum& s) {
    return PaddedFactors{ws.upsample(s), ws.upsample(deriv(s, 1)), ws.upsample(deriv(s, 2))};
}

}  // namespace

void validate(const PdeParams& par) {
    if (par.p < 1 || par.q < 1) throw std::invalid_argument("exponents p, q must be >= 1");
    if (!std::isfinite(par.a) || !std::isfinite(par.b))
        throw std::invalid_argument("coefficients a, b must be finite");
}

FieldState::FieldState(Field u_in, Field v_in, PdeParams par, double t)
    : u(std::move(u_in)), v(std::move(v_in)), params(par), time(t) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("u and v must share one grid");
    validate(params);
}

void validate(const SolverParams& par) {
    validate(par.pde);
    if (!(par.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(par.cfl > 0.0) || par.cfl > 1.0) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(par.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (par.dealias_degree != 0 && par.dealias_degree < par.pde.kappa() + 1)
        throw std::invalid_argument("dealias_degree must be >= max{p,q}+1");
    if (par.monitor_every < 1) throw std::invalid_argument("monitor_every must be >= 1");
}

TendencyPair rhs_momentum(const FieldState& state, int dealias_degree) {
    const PdeParams& par = state.params;
    const int degree = dealias_degree > 0 ? dealias_degree : par.kappa() + 1;
    ProductWorkspace ws(state.grid(), degree);

    const Spectrum su = analyze(state.u);
    const Spectrum sv = analyze(state.v);
    const Spectrum sm = helmholtz(su);
    const Spectrum sn = helmholtz(sv);

    const auto u = ws.upsample(su);
    const auto v = ws.upsample(sv);
    const auto ux = ws.upsample(deriv(su, 1));
    const auto vx = ws.upsample(deriv(sv, 1));
    const auto m = ws.upsample(sm);
    const auto mx = ws.upsample(deriv(sm, 1));
    const auto n = ws.upsample(sn);
    const auto nx = ws.upsample(deriv(sn, 1));

    // dm/dt = -v^p m_x - a v^{p-1} v_x m   (the (a/p)(v^p)_x rewriting)
    std::vector<double> dm = power_of(v, par.p);
    mul_into(dm, mx);
    {
        auto t2 = power_of(v, par.p - 1);
        mul_into(t2, vx);
        mul_into(t2, m);
        for (size_t i = 0; i < dm.size(); ++i) dm[i] = -dm[i] - par.a * t2[i];
    }

    // dn/dt = -u^q n_x - b u^{q-1} u_x n
    std::vector<double> dn = power_of(u, par.q);
    mul_into(dn, nx);
    {
        auto t2 = power_of(u, par.q - 1);
        mul_into(t2, ux);
        mul_into(t2, n);
        for (size_t i = 0; i < dn.size(); ++i) dn[i] = -dn[i] - par.b * t2[i];
    }

    return {synthesize(ws.project(dm)), synthesize(ws.project(dn))};
}

TendencyPair rhs_velocity(const FieldState& state, int dealias_degree) {
    const PdeParams& par = state.params;
    const int degree = dealias_degree > 0 ? dealias_degree : par.kappa() + 1;
    ProductWorkspace ws(state.grid(), degree);

    const auto fu = upsample_with_derivs(ws, analyze(state.u));
    const auto fv = upsample_with_derivs(ws, analyze(state.v));

    const size_t np = fu.w.size();
    const auto vp1 = power_of(fv.w, par.p - 1);  // v^{p-1}
    const auto uq1 = power_of(fu.w, par.q - 1);  // u^{q-1}

    std::vector<double> advect_u(np), local_u(np), flux_u(np);
    std::vector<double> advect_v(np), local_v(np), flux_v(np);
    for (size_t i = 0; i < np; ++i) {
        const double vp = vp1[i] * fv.w[i];   // v^p
        const double uq = uq1[i] * fu.w[i];   // u^q
        const double vgrad = vp1[i] * fv.wx[i];  // v^{p-1} v_x
        const double ugrad = uq1[i] * fu.wx[i];  // u^{q-1} u_x
        advect_u[i] = vp * fu.wx[i];
        local_u[i] = par.a * vgrad * fu.w[i] + (par.p - par.a) * vgrad * fu.wxx[i];
        flux_u[i] = vgrad * fu.wx[i];
        advect_v[i] = uq * fv.wx[i];
        local_v[i] = par.b * ugrad * fv.w[i] + (par.q - par.b) * ugrad * fv.wxx[i];
        flux_v[i] = ugrad * fv.wx[i];
    }

    // du/dt = -v^p u_x - G*[a v^{p-1}v_x u + (p-a) v^{p-1}v_x u_xx]
    //         - p G* d_x(v^{p-1}v_x u_x),   G* = (1-dxx)^{-1}
    Spectrum du = ws.project(advect_u);
    {
        const Spectrum nonlocal = helmholtz_inv(ws.project(local_u));
        const Spectrum flux = helmholtz_inv(deriv(ws.project(flux_u), 1));
        for (size_t j = 0; j < du.c.size(); ++j)
            du.c[j] = -du.c[j] - nonlocal.c[j] - static_cast<double>(par.p) * flux.c[j];
    }

    Spectrum dv = ws.project(advect_v);
    {
        const Spectrum nonlocal = helmholtz_inv(ws.project(local_v));
        const Spectrum flux = helmholtz_inv(deriv(ws.project(flux_v), 1));
        for (size_t j = 0; j < dv.c.size(); ++j)
            dv.c[j] = -dv.c[j] - nonlocal.c[j] - static_cast<double>(par.q) * flux.c[j];
    }

    return {synthesize(du), synthesize(dv)};
}

FieldState step_rk4(const FieldState& state, double dt, const SolverParams& params) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const int degree = params.effective_dealias_degree();
    const bool momentum_form = params.formulation == Formulation::momentum;

    // Stage states are always carried as (u, v); in momentum form the stage
    // combination happens on (m, n) and maps back through the inverse.
    auto tendency = [&](const FieldState& s) {
        return momentum_form ? rhs_momentum(s, degree) : rhs_velocity(s, degree);
    };
    auto advance = [&](const FieldState& base, const TendencyPair& k, double c) {
        Field first = momentum_form ? base.m() : base.u;
        Field second = momentum_form ? base.n() : base.v;
        axpy(c, k.first, first);
        axpy(c, k.second, second);
        if (momentum_form) {
            first = helmholtz_inv(first);
            second = helmholtz_inv(second);
        }
        return FieldState(std::move(first), std::move(second), base.params, base.time + c);
    };

    const TendencyPair k1 = tendency(state);
    const FieldState s2 = advance(state, k1, 0.5 * dt);
    const TendencyPair k2 = tendency(s2);
    const FieldState s3 = advance(state, k2, 0.5 * dt);
    const TendencyPair k3 = tendency(s3);
    const FieldState s4 = advance(state, k3, dt);
    const TendencyPair k4 = tendency(s4);

    TendencyPair combo = k1;
    axpy(2.0, k2.first, combo.first);
    axpy(2.0, k2.second, combo.second);
    axpy(2.0, k3.first, combo.first);
    axpy(2.0, k3.second, combo.second);
    axpy(1.0, k4.first, combo.first);
    axpy(1.0, k4.second, combo.second);

    FieldState out = advance(state, combo, dt / 6.0);
    out.time = state.time + dt;
    return out;
}

std::string to_string(RunVerdict v) {
    switch (v) {
        case RunVerdict::healthy: return "healthy";
        case RunVerdict::blowup: return "blowup";
        case RunVerdict::nonfinite: return "nonfinite";
    }
    return "unknown";
}

namespace {

double pow_integral(const Field& f, double exponent) {
    double acc = 0.0;
    for (double v : f.values()) acc += std::pow(std::abs(v), exponent);
    return acc * f.grid().dx();
}

double thm13_integrand(double sup_m, double sup_n, const PdeParams& par) {
    return std::pow(sup_n, par.p) + sup_m * std::pow(sup_n, par.p - 1) +
           std::pow(sup_m, par.q) + sup_n * std::pow(sup_m, par.q - 1);
}

struct SlopeScan {
    double min = 0.0, max = 0.0, argmin = 0.0, argmax = 0.0;
};

SlopeScan scan_extremes(const Field& f) {
    SlopeScan s{f[0], f[0], f.grid().point(0), f.grid().point(0)};
    for (int j = 1; j < f.size(); ++j) {
        if (f[j] < s.min) {
            s.min = f[j];
            s.argmin = f.grid().point(j);
        }
        if (f[j] > s.max) {
            s.max = f[j];
            s.argmax = f.grid().point(j);
        }
    }
    return s;
}

MonitorRow make_monitor_row(const FieldState& state, const SolverParams& params, double thm13_accum) {
    const PdeParams& par = state.params;
    MonitorRow row;
    row.t = state.time;
    row.u_hs = sobolev_norm(state.u, params.monitor_s);
    row.v_hs = sobolev_norm(state.v, params.monitor_s);

    const Field m = state.m();
    const Field n = state.n();
    row.indicators.sup_m = sup_norm(m);
    row.indicators.sup_n = sup_norm(n);
    row.indicators.thm13_accum = thm13_accum;

    const int degree = params.effective_dealias_degree();
    const Field vp_x = deriv(dealiased_power(state.v, par.p), 1);
    const Field uq_x = deriv(dealiased_power(state.u, par.q), 1);
    const SlopeScan sv = scan_extremes(vp_x);
    const SlopeScan su = scan_extremes(uq_x);
    row.indicators.slope_min_vp = sv.min;
    row.indicators.slope_max_vp = sv.max;
    row.indicators.slope_argmin_vp = sv.argmin;
    row.indicators.slope_argmax_vp = sv.argmax;
    row.indicators.slope_min_uq = su.min;
    row.indicators.slope_max_uq = su.max;
    row.indicators.slope_argmin_uq = su.argmin;
    row.indicators.slope_argmax_uq = su.argmax;

    const double s0u = sobolev_norm(m, 0.0);
    const double s0v = sobolev_norm(n, 0.0);
    row.int_m2 = s0u * s0u;
    row.int_n2 = s0v * s0v;
    row.int_abs_m_pa = par.a == 0.0 ? row.indicators.sup_m : pow_integral(m, par.p / par.a);
    row.int_abs_n_qb = par.b == 0.0 ? row.indicators.sup_n : pow_integral(n, par.q / par.b);

    // Rate identity: d/dt ∫m² = 2∫ m dm/dt  vs  ((p-2a)/p) ∫ m² (v^p)_x.
    const TendencyPair dm = rhs_momentum(state, degree);
    row.rate_m_lhs = 2.0 * inner(m, dm.first);
    row.rate_n_lhs = 2.0 * inner(n, dm.second);
    const Field m2vpx = dealiased_product({&m, &m, &vp_x});
    const Field n2uqx = dealiased_product({&n, &n, &uq_x});
    row.rate_m_rhs = (par.p - 2.0 * par.a) / par.p * integral(m2vpx);
    row.rate_n_rhs = (par.q - 2.0 * par.b) / par.q * integral(n2uqx);
    return row;
}

}  // namespace

IntegrateResult integrate(const FieldState& initial, const SolverParams& params) {
    validate(params);
    if (!(params.t_final > initial.time))
        throw std::invalid_argument("t_final must exceed the initial time");

    IntegrateResult result;
    FieldState state = initial;
    const double k_max = state.grid().k_max();

    double thm13 = 0.0;
    double prev_integrand =
        thm13_integrand(sup_norm(state.m()), sup_norm(state.n()), state.params);

    auto record = [&](const FieldState& s) {
        result.trace.rows.push_back(make_monitor_row(s, params, thm13));
        if (params.store_states) {
            result.trajectory.times.push_back(s.time);
            result.trajectory.states.push_back(s);
        }
    };
    if (!params.store_states) {
        result.trajectory.times.push_back(state.time);
        result.trajectory.states.push_back(state);
    }
    record(state);

    int steps = 0;
    RunVerdict verdict = RunVerdict::healthy;
    while (state.time < params.t_final - 1e-14 * params.t_final) {
        double dt = std::min(params.dt, params.t_final - state.time);
        const double speed = std::max(std::pow(sup_norm(state.v), state.params.p),
                                      std::pow(sup_norm(state.u), state.params.q));
        while (dt * speed * k_max / params.cfl > 1.0 && dt > params.dt * 0x1p-40) {
            dt *= 0.5;
            ++result.trace.cfl_halvings;
        }

        state = step_rk4(state, dt, params);
        ++steps;

        if (!state.finite()) {
            verdict = RunVerdict::nonfinite;
            break;
        }
        const double sup_m = sup_norm(state.m());
        const double sup_n = sup_norm(state.n());
        const double integrand = thm13_integrand(sup_m, sup_n, state.params);
        thm13 += 0.5 * (prev_integrand + integrand) * dt;
        prev_integrand = integrand;

        if (sup_m > params.blowup_ceiling || sup_n > params.blowup_ceiling) {
            verdict = RunVerdict::blowup;
            record(state);
            break;
        }
        if (steps % params.monitor_every == 0 ||
            state.time >= params.t_final - 1e-14 * params.t_final)
            record(state);
    }

    if (!params.store_states && verdict != RunVerdict::nonfinite && state.time > initial.time) {
        result.trajectory.times.push_back(state.time);
        result.trajectory.states.push_back(state);
    }

    result.trace.verdict = verdict;
    result.trace.end_time = state.time;
    result.trace.steps_taken = steps;
    return result;
}

double lifespan_estimate(const FieldState& initial, double s, double c_s) {
    if (!(c_s > 0.0)) throw std::invalid_argument("C_s must be positive");
    const double z0 = sobolev_norm(initial.u, s) + sobolev_norm(initial.v, s);
    if (z0 == 0.0) return std::numeric_limits<double>::infinity();
    const int kappa = initial.params.kappa();
    const double two_k = std::ldexp(1.0, kappa);
    return (two_k - 1.0) / (2.0 * two_k * kappa * c_s * std::pow(z0, kappa));
}

namespace {

// Band-limited samplers of v^p, u^q and their slopes per snapshot.
struct FlowTable {
    std::vector<Spectrum> vp, vp_x, uq, uq_x;

    explicit FlowTable(const Trajectory& traj) {
        vp.reserve(traj.states.size());
        for (const FieldState& s : traj.states) {
            Spectrum w = analyze(dealiased_power(s.v, s.params.p));
            Spectrum z = analyze(dealiased_power(s.u, s.params.q));
            vp_x.push_back(deriv(w, 1));
            uq_x.push_back(deriv(z, 1));
            vp.push_back(std::move(w));
            uq.push_back(std::move(z));
        }
    }
};

double blend(const Spectrum& lo, const Spectrum& hi, double theta, double x) {
    return (1.0 - theta) * eval_series(lo, x) + theta * eval_series(hi, x);
}

}  // namespace

CharacteristicBundle evolve_characteristics(const Trajectory& traj, std::span<const double> seeds) {
    if (traj.states.size() < 2 || traj.states.size() != traj.times.size())
        throw std::invalid_argument("trajectory must store at least two snapshots");

    const FlowTable table(traj);
    const size_t nt = traj.times.size();
    const size_t ns = seeds.size();

    CharacteristicBundle bundle;
    bundle.seeds.assign(seeds.begin(), seeds.end());
    bundle.times = traj.times;
    bundle.phi.assign(nt, std::vector<double>(ns));
    bundle.psi.assign(nt, std::vector<double>(ns));
    bundle.phi_x.assign(nt, std::vector<double>(ns, 1.0));
    bundle.psi_x.assign(nt, std::vector<double>(ns, 1.0));

    for (size_t j = 0; j < ns; ++j) {
        bundle.phi[0][j] = seeds[j];
        bundle.psi[0][j] = seeds[j];
    }

    for (size_t i = 0; i + 1 < nt; ++i) {
        const double h = traj.times[i + 1] - traj.times[i];
        auto rk4_segment = [&](const Spectrum& w_lo, const Spectrum& w_hi, const Spectrum& wx_lo,
                               const Spectrum& wx_hi, double x0, double logj0, double& x1,
                               double& logj1) {
            auto vel = [&](double theta, double x) { return blend(w_lo, w_hi, theta, x); };
            auto slope = [&](double theta, double x) { return blend(wx_lo, wx_hi, theta, x); };
            const double k1x = vel(0.0, x0), k1j = slope(0.0, x0);
            const double k2x = vel(0.5, x0 + 0.5 * h * k1x), k2j = slope(0.5, x0 + 0.5 * h * k1x);
            const double k3x = vel(0.5, x0 + 0.5 * h * k2x), k3j = slope(0.5, x0 + 0.5 * h * k2x);
            const double k4x = vel(1.0, x0 + h * k3x), k4j = slope(1.0, x0 + h * k3x);
            x1 = x0 + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            logj1 = logj0 + h / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);
        };

        for (size_t j = 0; j < ns; ++j) {
            double x1 = 0.0, lj1 = 0.0;
            rk4_segment(table.vp[i], table.vp[i + 1], table.vp_x[i], table.vp_x[i + 1],
                        bundle.phi[i][j], std::log(bundle.phi_x[i][j]), x1, lj1);
            bundle.phi[i + 1][j] = x1;
            bundle.phi_x[i + 1][j] = std::exp(lj1);

            rk4_segment(table.uq[i], table.uq[i + 1], table.uq_x[i], table.uq_x[i + 1],
                        bundle.psi[i][j], std::log(bundle.psi_x[i][j]), x1, lj1);
            bundle.psi[i + 1][j] = x1;
            bundle.psi_x[i + 1][j] = std::exp(lj1);
        }
    }

    // The exponential formula keeps Jacobians positive by construction;
    // a violated invariant shows up as a non-finite value or a crossing of
    // neighboring characteristics launched from ordered seeds.
    for (size_t i = 0; i < nt && bundle.jacobians_positive; ++i) {
        for (size_t j = 0; j < ns; ++j) {
            if (!std::isfinite(bundle.phi_x[i][j]) || !std::isfinite(bundle.psi_x[i][j]) ||
                bundle.phi_x[i][j] <= 0.0 || bundle.psi_x[i][j] <= 0.0) {
                bundle.jacobians_positive = false;
                break;
            }
        }
        for (size_t j = 0; j + 1 < ns; ++j) {
            if (seeds[j] < seeds[j + 1] && bundle.phi[i][j] >= bundle.phi[i][j + 1]) {
                bundle.jacobians_positive = false;
                break;
            }
        }
    }
    return bundle;
}

std::string to_string(SupportVerdict v) {
    switch (v) {
        case SupportVerdict::pass: return "PASS";
        case SupportVerdict::fail: return "FAIL";
        case SupportVerdict::not_applicable: return "NOT-APPLICABLE";
    }
    return "unknown";
}

namespace {

SupportInterval support_of(const Field& f, double threshold) {
    SupportInterval s;
    for (int j = 0; j < f.size(); ++j) {
        if (std::abs(f[j]) > threshold) {
            const double x = f.grid().point(j);
            if (s.empty) {
                s = {false, x, x};
            } else {
                s.lo = std::min(s.lo, x);
                s.hi = std::max(s.hi, x);
            }
        }
    }
    return s;
}

}  // namespace

SupportReport support_diagnostic(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("support threshold must be positive");
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");

    SupportReport report;
    report.threshold = threshold;
    report.times = traj.times;

    const GridSpec grid = traj.states.front().grid();
    for (const FieldState& s : traj.states) {
        report.m_support.push_back(support_of(s.m(), threshold));
        report.n_support.push_back(support_of(s.n(), threshold));
    }

    const SupportInterval init = report.m_support.front();
    if (init.empty) {
        bool all_empty = true;
        for (const auto& s : report.m_support) all_empty &= s.empty;
        report.verdict = all_empty ? SupportVerdict::pass : SupportVerdict::fail;
        return report;
    }
    if (init.hi - init.lo >= grid.length - 3.0 * grid.dx()) {
        report.verdict = SupportVerdict::not_applicable;
        return report;
    }

    const double seeds[2] = {init.lo, init.hi};
    const CharacteristicBundle chars = evolve_characteristics(traj, seeds);
    const double pad = 2.0 * grid.dx();

    report.verdict = SupportVerdict::pass;
    for (size_t i = 0; i < report.m_support.size(); ++i) {
        const SupportInterval& s = report.m_support[i];
        if (s.empty) continue;
        if (s.lo < chars.phi[i][0] - pad || s.hi > chars.phi[i][1] + pad) {
            report.verdict = SupportVerdict::fail;
            break;
        }
    }
    return report;
}

Field random_band_field(GridSpec grid, int k_band, double amplitude, unsigned long long seed) {
    if (k_band < 1 || k_band >= grid.n / 2) throw std::invalid_argument("band limit out of range");
    std::mt19937_64 engine(seed);
    auto uniform = [&]() {
        // top 53 bits -> [0,1), then to [-1,1); identical on every platform
        return 2.0 * std::ldexp(static_cast<double>(engine() >> 11), -53) - 1.0;
    };
    Field out(grid);
    for (int k = 1; k <= k_band; ++k) {
        const double decay = 1.0 / ((1.0 + k) * (1.0 + k));
        const double ak = uniform() * decay;
        const double bk = uniform() * decay;
        const double kk = kTwoPi * k / grid.length;
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.point(j);
            out[j] += ak * std::cos(kk * x) + bk * std::sin(kk * x);
        }
    }
    out *= amplitude;
    return out;
}

}  // namespace ccch
