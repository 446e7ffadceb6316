#include "ccch/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace ccch {

namespace {

// quintic smoothstep: 0 -> 0, 1 -> 1, first and second derivatives vanish
// at both ends (C2 seams)
double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

double bump_plateau1(double x) {
    const double ax = std::abs(x);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    return smoothstep5(2.0 - ax);
}

double bump_plateau2(double x) {
    const double ax = std::abs(x);
    if (ax <= 2.0) return 1.0;
    if (ax >= 4.0) return 0.0;
    return smoothstep5((4.0 - ax) / 2.0);
}

double gaussian_profile(double x) { return std::exp(-x * x); }

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope fit needs at least two samples");
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GridSpec oscillation_grid(double lambda, double support_halfwidth, int points_per_wavelength) {
    if (!(lambda >= 4.0) || lambda != std::floor(lambda))
        throw std::invalid_argument("carrier frequency must be an integer >= 4");
    double length = kTwoPi;
    while (length < 4.0 * support_halfwidth) length *= 2.0;
    // n with k_max = pi n / L >= (ppw/2) * lambda
    const double n_needed = points_per_wavelength * lambda * length / kTwoPi;
    int n = 8;
    while (n < n_needed) n *= 2;
    return make_grid(n, length);
}

std::pair<Field, Field> build_high_freq(const HighFreqSpec& spec, const GridSpec& grid) {
    if (!(spec.lambda >= 4.0)) throw std::invalid_argument("lambda must be >= 4");
    const double cycles = spec.lambda * grid.length / kTwoPi;
    if (std::abs(cycles - std::round(cycles)) > 1e-9)
        throw std::invalid_argument("lambda is not periodic on the box");
    if (grid.n < 8.0 * cycles)
        throw std::invalid_argument("grid under-resolves lambda (needs >= 8 points per wavelength)");

    const double center = 0.5 * grid.length;
    const double amp_u = std::pow(spec.lambda, -spec.delta / (2.0 * spec.p) - spec.s);
    const double amp_v = std::pow(spec.lambda, -spec.delta / (2.0 * spec.q) - spec.s);
    const double width_u = std::pow(spec.lambda, spec.delta / spec.p);
    const double width_v = std::pow(spec.lambda, spec.delta / spec.q);
    const double phase_u = std::pow(spec.omega, spec.p) * spec.t;
    const double phase_v = std::pow(spec.omega, spec.q) * spec.t;

    Field u(grid), v(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double xc = grid.point(j) - center;
        u[j] = amp_u * bump_plateau1(xc / width_u) * std::cos(spec.lambda * xc - phase_u);
        v[j] = amp_v * bump_plateau1(xc / width_v) * std::cos(spec.lambda * xc - phase_v);
    }
    return {std::move(u), std::move(v)};
}

std::pair<Field, Field> build_low_freq_data(double omega, double lambda, double delta, int q,
                                            int p, const GridSpec& grid) {
    if (!(lambda >= 4.0)) throw std::invalid_argument("lambda must be >= 4");
    const double center = 0.5 * grid.length;
    const double width_u = std::pow(lambda, delta / q);
    const double width_v = std::pow(lambda, delta / p);
    Field u(grid), v(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double xc = grid.point(j) - center;
        u[j] = omega * std::pow(lambda, -1.0 / q) * bump_plateau2(xc / width_u);
        v[j] = omega * std::pow(lambda, -1.0 / p) * bump_plateau2(xc / width_v);
    }
    return {std::move(u), std::move(v)};
}

Lemma51Report check_lemma51(const std::function<double(double)>& profile, double s, double delta,
                            std::span<const double> lambdas, bool use_sin, double phase) {
    Lemma51Report report;

    // reference L2 norm of the unscaled profile on a wide fine grid
    {
        const GridSpec fine = make_grid(1 << 16, 64.0);
        double acc = 0.0;
        for (int j = 0; j < fine.n; ++j) {
            const double x = fine.point(j) - 32.0;
            acc += profile(x) * profile(x);
        }
        report.limit = std::sqrt(acc * fine.dx()) / std::sqrt(2.0);
    }

    for (double lambda : lambdas) {
        const double width = std::pow(lambda, delta);
        const GridSpec grid = oscillation_grid(lambda, 6.0 * width, 4);
        const double center = 0.5 * grid.length;
        Field f(grid);
        for (int j = 0; j < grid.n; ++j) {
            const double xc = grid.point(j) - center;
            const double carrier =
                use_sin ? std::sin(lambda * xc - phase) : std::cos(lambda * xc - phase);
            f[j] = profile(xc / width) * carrier;
        }
        Lemma51Row row;
        row.lambda = lambda;
        row.scaled_norm = std::pow(lambda, -0.5 * delta - s) * sobolev_norm(f, s);
        row.ratio = report.limit > 0.0 ? row.scaled_norm / report.limit : 0.0;
        report.rows.push_back(row);
    }

    report.monotone = true;
    for (size_t i = 1; i < report.rows.size(); ++i) {
        const double prev = std::abs(report.rows[i - 1].ratio - 1.0);
        const double cur = std::abs(report.rows[i].ratio - 1.0);
        if (cur > prev * (1.0 + 1e-9)) report.monotone = false;
    }
    if (!report.rows.empty())
        report.final_within_5pct = std::abs(report.rows.back().ratio - 1.0) <= 0.05;
    return report;
}

void parallel_jobs(int count, const std::function<void(int)>& job, int max_threads) {
    int cap = max_threads > 0 ? max_threads : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CCCH_THREADS")) {
        const int env_cap = std::atoi(env);
        if (env_cap >= 1) cap = std::min(cap, env_cap);
    }
    cap = std::max(1, std::min(cap, count));
    if (cap == 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int w = 0; w < cap; ++w)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
        });
    for (auto& t : workers) t.join();
}

void validate(const NonuniformParams& par) {
    validate(PdeParams{par.p, par.q, par.a, par.b});
    if (!(par.s > 2.5)) throw std::invalid_argument("regularity must satisfy s > 5/2");
    if (!(par.delta > 0.0) || !(par.delta < 1.0))
        throw std::invalid_argument("scale exponent delta must lie in (0,1)");
    if (par.lambdas.size() < 2) throw std::invalid_argument("need at least two lambda values");
    for (double l : par.lambdas)
        if (!(l >= 4.0)) throw std::invalid_argument("every lambda must be >= 4");
    if (!(par.t_probe > 0.0)) throw std::invalid_argument("t_probe must be positive");
}

NonuniformReport run_nonuniform(const NonuniformParams& params) {
    validate(params);
    NonuniformReport report;
    report.params = params;
    report.predicted_slope0 = (params.delta - 2.0) / (2.0 * std::max(params.p, params.q));

    {
        const GridSpec fine = make_grid(1 << 14, 16.0);
        double acc = 0.0;
        for (int j = 0; j < fine.n; ++j) {
            const double x = fine.point(j) - 8.0;
            acc += bump_plateau1(x) * bump_plateau1(x);
        }
        report.phi_l2 = std::sqrt(acc * fine.dx());
    }
    report.lower_bound =
        0.5 * report.phi_l2 / std::sqrt(2.0) * std::abs(std::sin(params.t_probe));

    report.rows.resize(params.lambdas.size());

    for (size_t li = 0; li < params.lambdas.size(); ++li) {
        const double lambda = params.lambdas[li];
        const double halfwidth =
            4.0 * std::pow(lambda, params.delta / std::min(params.p, params.q));
        const GridSpec grid = oscillation_grid(lambda, halfwidth, 8);

        NonuniformRow& row = report.rows[li];
        row.lambda = lambda;
        row.n = grid.n;
        row.length = grid.length;

        FieldState finals[2];
        FieldState initials[2];
        bool blew_up[2] = {false, false};

        for (int w = 0; w < 2; ++w) {
            const double omega = static_cast<double>(w);
            auto [ul, vl] = build_low_freq_data(omega, lambda, params.delta, params.q, params.p, grid);
            HighFreqSpec hf{omega, lambda, params.delta, params.s, params.p, params.q, 0.0};
            auto [uh, vh] = build_high_freq(hf, grid);
            ul += uh;
            vl += vh;
            initials[w] = FieldState(std::move(ul), std::move(vl),
                                     PdeParams{params.p, params.q, params.a, params.b});
        }

        // the two omega solves are independent; run them side by side
        parallel_jobs(2, [&](int w) {
            SolverParams sp;
            sp.pde = initials[w].params;
            sp.dt = params.dt;
            sp.cfl = params.cfl;
            sp.t_final = params.t_probe;
            sp.monitor_every = 1 << 20;  // ends only
            sp.store_states = false;
            sp.monitor_s = params.s;
            const IntegrateResult res = integrate(initials[w], sp);
            blew_up[w] = res.trace.verdict != RunVerdict::healthy;
            finals[w] = res.trajectory.states.back();
        }, params.threads);

        row.sup_hs0 = std::max(
            sobolev_norm(initials[0].u, params.s) + sobolev_norm(initials[0].v, params.s),
            sobolev_norm(initials[1].u, params.s) + sobolev_norm(initials[1].v, params.s));

        if (blew_up[0] || blew_up[1]) {
            row.excluded = true;
            row.note = "solve ended before t_probe (blow-up indicator)";
            continue;
        }

        const Field du0 = initials[1].u - initials[0].u;
        const Field dv0 = initials[1].v - initials[0].v;
        row.dist0 = sobolev_norm(du0, params.s) + sobolev_norm(dv0, params.s);
        const Field dut = finals[1].u - finals[0].u;
        const Field dvt = finals[1].v - finals[0].v;
        row.dist_t = sobolev_norm(dut, params.s) + sobolev_norm(dvt, params.s);
    }

    std::vector<double> ls, d0;
    for (const auto& row : report.rows)
        if (!row.excluded) {
            ls.push_back(row.lambda);
            d0.push_back(row.dist0);
        }
    report.decreasing_pass = ls.size() >= 2;
    for (size_t i = 1; i < d0.size(); ++i)
        if (!(d0[i] < d0[i - 1])) report.decreasing_pass = false;
    if (ls.size() >= 2) {
        report.fitted_slope0 = loglog_slope(ls, d0);
        report.slope_pass = std::abs(report.fitted_slope0 - report.predicted_slope0) <=
                            0.2 * std::abs(report.predicted_slope0);
    }

    int included = 0;
    report.lower_pass = true;
    for (auto it = report.rows.rbegin(); it != report.rows.rend() && included < 2; ++it) {
        if (it->excluded) continue;
        ++included;
        if (!(it->dist_t >= report.lower_bound)) report.lower_pass = false;
    }
    if (included < 2) report.lower_pass = false;
    return report;
}

namespace {

HoelderRegion classify_region(double s, double r) {
    // Exponent table of the data-to-solution map in the H^r topology.
    if (!(s > 2.5) || r < 0.0 || !(r < s))
        throw std::invalid_argument("region classification needs s > 5/2 and 0 <= r < s");
    if (r <= 1.5) {
        if (3.0 - s <= r && r <= s - 2.0) return {"A1", 1.0};
        if (s < 3.0 && r <= 3.0 - s) return {"A2", (2.0 * s - 3.0) / (s - r)};
        if (s - 2.0 <= r) return {"A3", (s - r) / 2.0};
    } else {
        if (r <= s - 1.0) return {"A1", 1.0};
        if (r >= s - 1.0) return {"A4", s - r};
    }
    throw std::invalid_argument("(s, r) falls outside every Hoelder region");
}

}  // namespace

HoelderRegion hoelder_region(double s, double r) { return classify_region(s, r); }

HoelderReport run_hoelder(const HoelderParams& params) {
    HoelderReport report;
    report.params = params;
    report.region = hoelder_region(params.s, params.r);
    if (params.eps_list.size() < 2)
        throw std::invalid_argument("need at least two perturbation sizes");

    const GridSpec grid = make_grid(params.n, params.length);
    const PdeParams pde{params.p, params.q, params.a, params.b};

    const Field base_u = random_band_field(grid, 6, params.base_amplitude, params.seed);
    const Field base_v = random_band_field(grid, 6, params.base_amplitude, params.seed + 101);
    // fixed smooth perturbation direction, unit H^r size, applied to both
    // components
    Field dir = random_band_field(grid, 4, 1.0, params.seed + 555);
    dir *= 1.0 / sobolev_norm(dir, params.r);

    SolverParams sp;
    sp.pde = pde;
    sp.dt = params.dt;
    sp.t_final = params.t_final;
    sp.monitor_every = 1 << 20;
    sp.store_states = false;
    sp.monitor_s = params.s;

    const int jobs = static_cast<int>(params.eps_list.size()) + 1;
    std::vector<FieldState> finals(jobs);
    std::vector<bool> healthy(jobs, false);
    parallel_jobs(jobs, [&](int i) {
        Field u = base_u;
        Field v = base_v;
        if (i > 0) {
            const double eps = params.eps_list[i - 1];
            axpy(eps, dir, u);
            axpy(eps, dir, v);
        }
        const IntegrateResult res = integrate(FieldState(u, v, pde), sp);
        healthy[i] = res.trace.verdict == RunVerdict::healthy;
        finals[i] = res.trajectory.states.back();
    }, params.threads);

    if (!healthy[0]) throw std::runtime_error("base solve did not reach t_final");

    std::vector<double> d0s, dts;
    for (size_t e = 0; e < params.eps_list.size(); ++e) {
        if (!healthy[e + 1]) continue;
        HoelderRow row;
        row.eps = params.eps_list[e];
        // dist0 = eps * (||dir||_{H^r} for each component) summed
        Field du0 = dir;
        du0 *= row.eps;
        row.dist0 = 2.0 * sobolev_norm(du0, params.r);
        const Field dut = finals[e + 1].u - finals[0].u;
        const Field dvt = finals[e + 1].v - finals[0].v;
        row.dist_t = sobolev_norm(dut, params.r) + sobolev_norm(dvt, params.r);
        report.rows.push_back(row);
        d0s.push_back(row.dist0);
        dts.push_back(row.dist_t);
    }
    if (d0s.size() < 2) throw std::runtime_error("too few healthy perturbed solves to fit");
    report.fitted_exponent = loglog_slope(d0s, dts);
    report.pass = report.fitted_exponent >= report.region.alpha - 0.1;
    return report;
}

ConservationReport run_conservation(const ConservationParams& params) {
    const GridSpec grid = make_grid(params.n, params.length);
    SolverParams sp;
    sp.pde = params.pde;
    sp.dt = params.dt;
    sp.t_final = params.t_final;
    sp.monitor_every = params.monitor_every;
    sp.store_states = false;

    const FieldState s0(random_band_field(grid, params.band, params.amplitude, params.seed),
                        random_band_field(grid, params.band, params.amplitude, params.seed + 13),
                        params.pde);
    ConservationReport report;
    const IntegrateResult res = integrate(s0, sp);
    report.trace = res.trace;

    const double ref_m = res.trace.rows.front().int_m2;
    const double ref_n = res.trace.rows.front().int_n2;
    for (const auto& row : res.trace.rows) {
        report.max_drift_m2 = std::max(report.max_drift_m2, std::abs(row.int_m2 - ref_m) / ref_m);
        report.max_drift_n2 = std::max(report.max_drift_n2, std::abs(row.int_n2 - ref_n) / ref_n);
        const double scale = std::max({1.0, std::abs(row.rate_m_lhs), std::abs(row.rate_n_lhs)});
        report.max_rate_mismatch =
            std::max({report.max_rate_mismatch, std::abs(row.rate_m_lhs - row.rate_m_rhs) / scale,
                      std::abs(row.rate_n_lhs - row.rate_n_rhs) / scale});
    }
    report.pass = res.trace.verdict == RunVerdict::healthy &&
                  report.max_drift_m2 <= params.drift_tol &&
                  report.max_drift_n2 <= params.drift_tol &&
                  report.max_rate_mismatch <= params.rate_tol;
    return report;
}

SizeBoundResult check_size_bound(const FieldState& initial, double s, double c_s, double dt) {
    SizeBoundResult result;
    result.t0 = lifespan_estimate(initial, s, c_s);
    if (std::isinf(result.t0)) {
        result.max_growth_u = result.max_growth_v = 1.0;
        result.pass = true;
        return result;
    }

    SolverParams sp;
    sp.pde = initial.params;
    sp.dt = dt;
    sp.t_final = initial.time + result.t0;
    sp.monitor_every = std::max(1, static_cast<int>(result.t0 / dt / 64.0));
    sp.store_states = false;
    sp.monitor_s = s;

    const IntegrateResult res = integrate(initial, sp);
    const double u0 = res.trace.rows.front().u_hs;
    const double v0 = res.trace.rows.front().v_hs;
    for (const auto& row : res.trace.rows) {
        result.max_growth_u = std::max(result.max_growth_u, row.u_hs / u0);
        result.max_growth_v = std::max(result.max_growth_v, row.v_hs / v0);
    }
    result.pass = res.trace.verdict == RunVerdict::healthy && result.max_growth_u <= 2.0 &&
                  result.max_growth_v <= 2.0;
    return result;
}

double calibrate_cs(const CalibrationParams& params) {
    const GridSpec grid = make_grid(params.n, params.length);
    auto admissible = [&](double c_s) {
        for (unsigned long long seed : params.seeds) {
            const FieldState s0(
                random_band_field(grid, params.band, params.amplitude, seed),
                random_band_field(grid, params.band, params.amplitude, seed + 7919), params.pde);
            if (!check_size_bound(s0, params.s, c_s, params.dt).pass) return false;
        }
        return true;
    };

    double lo = params.lo, hi = params.hi;
    if (!admissible(hi)) throw std::runtime_error("calibration bracket too small");
    if (admissible(lo)) return lo;
    for (int i = 0; i < params.iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? hi : lo) = mid;
    }
    return hi;
}

ResidualDecayReport residual_decay(double s, double theta, double delta, int p, int q, double a,
                                   double b, std::span<const double> lambdas) {
    ResidualDecayReport report;
    report.theta_s = 1.0 + s - delta - theta;
    const PdeParams pde{p, q, a, b};

    for (double lambda : lambdas) {
        const double halfwidth = 4.0 * std::pow(lambda, delta / std::min(p, q));
        const GridSpec grid = oscillation_grid(lambda, halfwidth, 8);
        const double center = 0.5 * grid.length;

        auto [ul, vl] = build_low_freq_data(1.0, lambda, delta, q, p, grid);
        HighFreqSpec hf{1.0, lambda, delta, s, p, q, 0.0};
        auto [uh, vh] = build_high_freq(hf, grid);

        // d/dt of the high-frequency part at t = 0: the cos phase rotates at
        // omega^p (resp. omega^q)
        Field dt_uh(grid), dt_vh(grid);
        {
            const double amp_u = std::pow(lambda, -delta / (2.0 * p) - s);
            const double amp_v = std::pow(lambda, -delta / (2.0 * q) - s);
            const double width_u = std::pow(lambda, delta / p);
            const double width_v = std::pow(lambda, delta / q);
            for (int j = 0; j < grid.n; ++j) {
                const double xc = grid.point(j) - center;
                dt_uh[j] = amp_u * bump_plateau1(xc / width_u) * std::sin(lambda * xc);
                dt_vh[j] = amp_v * bump_plateau1(xc / width_v) * std::sin(lambda * xc);
            }
        }

        const FieldState low(ul, vl, pde);
        const FieldState sum(ul + uh, vl + vh, pde);
        const TendencyPair rhs_low = rhs_velocity(low);
        const TendencyPair rhs_sum = rhs_velocity(sum);

        // F = d/dt(appr) - RHS(appr); the low part solves the equation, so
        // d/dt u_l = RHS_u(low)
        Field f_u = dt_uh + rhs_low.first - rhs_sum.first;
        Field f_v = dt_vh + rhs_low.second - rhs_sum.second;

        ResidualDecayRow row;
        row.lambda = lambda;
        row.res_u = sobolev_norm(f_u, theta);
        row.res_v = sobolev_norm(f_v, theta);
        report.rows.push_back(row);
    }

    std::vector<double> ls, rs;
    for (const auto& row : report.rows) {
        ls.push_back(row.lambda);
        rs.push_back(row.res_u + row.res_v);
    }
    report.fitted_decay = -loglog_slope(ls, rs);
    report.pass = report.fitted_decay >= report.theta_s - 0.3;
    return report;
}

}  // namespace ccch
