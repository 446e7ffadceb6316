#include "ccch/peakon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccch {

namespace {

constexpr double kCollisionGuard = 1e-8;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double family_min_gap(const std::vector<double>& pos, PeakonDomain domain) {
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pos.size(); ++i)
        for (size_t j = i + 1; j < pos.size(); ++j) {
            double d = std::abs(pos[i] - pos[j]);
            if (domain == PeakonDomain::circle) {
                d = wrap_2pi(d);
                d = std::min(d, kTwoPi - d);
            }
            gap = std::min(gap, d);
        }
    return gap;
}

}  // namespace

double wrap_2pi(double y) {
    double w = y - kTwoPi * std::floor(y / kTwoPi);
    if (w >= kTwoPi) w -= kTwoPi;  // guards the floor rounding edge
    return w;
}

double peakon_kernel(PeakonDomain domain, double x) {
    if (domain == PeakonDomain::line) return std::exp(-std::abs(x));
    return std::cosh(wrap_2pi(x) - kPi);
}

double peakon_kernel_deriv(PeakonDomain domain, double x) {
    if (domain == PeakonDomain::line) return -sgn(x) * std::exp(-std::abs(x));
    const double w = wrap_2pi(x);
    if (w == 0.0) return 0.0;  // crest: one-sided limits +-sinh(pi) average to zero
    return std::sinh(w - kPi);
}

double PeakonConfiguration::eval_u(double x) const {
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) acc += f[i] * peakon_kernel(domain, x - g[i]);
    return acc;
}

double PeakonConfiguration::eval_v(double x) const {
    double acc = 0.0;
    for (size_t j = 0; j < h.size(); ++j) acc += h[j] * peakon_kernel(domain, x - k[j]);
    return acc;
}

double PeakonConfiguration::eval_u_slope(double x) const {
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) acc += f[i] * peakon_kernel_deriv(domain, x - g[i]);
    return acc;
}

double PeakonConfiguration::eval_v_slope(double x) const {
    double acc = 0.0;
    for (size_t j = 0; j < h.size(); ++j) acc += h[j] * peakon_kernel_deriv(domain, x - k[j]);
    return acc;
}

void validate(const PeakonConfiguration& cfg) {
    validate(cfg.params);
    if (cfg.f.size() != cfg.g.size() || cfg.h.size() != cfg.k.size())
        throw std::invalid_argument("amplitude/position arrays must pair up");
    if (cfg.f.empty() || cfg.h.empty())
        throw std::invalid_argument("each family needs at least one peak");
    for (double x : cfg.f)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite amplitude");
    for (double x : cfg.h)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite amplitude");
}

PeakonConfiguration exact_traveling_peakon(double c, int p, int q, PeakonDomain domain, double x0) {
    if (!(c > 0.0)) throw std::invalid_argument("wave speed must be positive");
    PeakonConfiguration cfg;
    cfg.domain = domain;
    cfg.params.p = p;
    cfg.params.q = q;
    validate(cfg.params);
    double alpha = std::pow(c, 1.0 / q);
    double beta = std::pow(c, 1.0 / p);
    if (domain == PeakonDomain::circle) {
        alpha /= std::cosh(kPi);
        beta /= std::cosh(kPi);
        x0 = wrap_2pi(x0);
    }
    cfg.f = {alpha};
    cfg.g = {x0};
    cfg.h = {beta};
    cfg.k = {x0};
    return cfg;
}

FieldState eval_peakon_fields(const PeakonConfiguration& cfg, const GridSpec& grid) {
    validate(cfg);
    if (cfg.domain == PeakonDomain::circle && std::abs(grid.length - kTwoPi) > 1e-12)
        throw std::invalid_argument("circle configurations require a 2*pi box");
    Field u(grid), v(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.point(j);
        u[j] = cfg.eval_u(x);
        v[j] = cfg.eval_v(x);
    }
    return FieldState(std::move(u), std::move(v), cfg.params, cfg.time);
}

PeakonDerivatives peakon_rhs(const PeakonConfiguration& cfg) {
    const int p = cfg.params.p, q = cfg.params.q;
    const double a = cfg.params.a, b = cfg.params.b;
    PeakonDerivatives d;
    d.f_dot.resize(cfg.f.size());
    d.g_dot.resize(cfg.g.size());
    d.h_dot.resize(cfg.h.size());
    d.k_dot.resize(cfg.k.size());
    for (size_t i = 0; i < cfg.g.size(); ++i) {
        const double vg = cfg.eval_v(cfg.g[i]);
        const double vxg = cfg.eval_v_slope(cfg.g[i]);
        d.g_dot[i] = std::pow(vg, p);
        d.f_dot[i] = (p - a) * std::pow(vg, p - 1) * vxg * cfg.f[i];
    }
    for (size_t j = 0; j < cfg.k.size(); ++j) {
        const double uk = cfg.eval_u(cfg.k[j]);
        const double uxk = cfg.eval_u_slope(cfg.k[j]);
        d.k_dot[j] = std::pow(uk, q);
        d.h_dot[j] = (q - b) * std::pow(uk, q - 1) * uxk * cfg.h[j];
    }
    return d;
}

namespace {

PeakonConfiguration apply(const PeakonConfiguration& base, const PeakonDerivatives& d, double c) {
    PeakonConfiguration out = base;
    for (size_t i = 0; i < out.f.size(); ++i) {
        out.f[i] += c * d.f_dot[i];
        out.g[i] += c * d.g_dot[i];
    }
    for (size_t j = 0; j < out.h.size(); ++j) {
        out.h[j] += c * d.h_dot[j];
        out.k[j] += c * d.k_dot[j];
    }
    out.time = base.time + c;
    return out;
}

void accumulate(PeakonDerivatives& acc, const PeakonDerivatives& d, double w) {
    for (size_t i = 0; i < acc.f_dot.size(); ++i) {
        acc.f_dot[i] += w * d.f_dot[i];
        acc.g_dot[i] += w * d.g_dot[i];
    }
    for (size_t j = 0; j < acc.h_dot.size(); ++j) {
        acc.h_dot[j] += w * d.h_dot[j];
        acc.k_dot[j] += w * d.k_dot[j];
    }
}

bool finite_amplitudes(const PeakonConfiguration& cfg) {
    for (double x : cfg.f)
        if (!std::isfinite(x)) return false;
    for (double x : cfg.h)
        if (!std::isfinite(x)) return false;
    for (double x : cfg.g)
        if (!std::isfinite(x)) return false;
    for (double x : cfg.k)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

PeakonTrajectory integrate_peakons(const PeakonConfiguration& cfg0, double t_final, double dt) {
    validate(cfg0);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_final > cfg0.time)) throw std::invalid_argument("t_final must exceed the start time");

    PeakonTrajectory traj;
    PeakonConfiguration cfg = cfg0;
    traj.times.push_back(cfg.time);
    traj.configs.push_back(cfg);

    auto guard = [&](const PeakonConfiguration& c) -> bool {
        if (!finite_amplitudes(c)) {
            traj.note = "non-finite amplitudes";
            return false;
        }
        if (family_min_gap(c.g, c.domain) < kCollisionGuard ||
            family_min_gap(c.k, c.domain) < kCollisionGuard) {
            traj.collision = true;
            traj.collision_time = c.time;
            traj.note = "same-family peaks closer than collision guard";
            return false;
        }
        return true;
    };
    if (!guard(cfg)) return traj;

    while (cfg.time < t_final - 1e-14 * t_final) {
        const double h = std::min(dt, t_final - cfg.time);
        const PeakonDerivatives k1 = peakon_rhs(cfg);
        const PeakonDerivatives k2 = peakon_rhs(apply(cfg, k1, 0.5 * h));
        const PeakonDerivatives k3 = peakon_rhs(apply(cfg, k2, 0.5 * h));
        const PeakonDerivatives k4 = peakon_rhs(apply(cfg, k3, h));
        PeakonDerivatives combo = k1;
        accumulate(combo, k2, 2.0);
        accumulate(combo, k3, 2.0);
        accumulate(combo, k4, 1.0);
        const double t_next = cfg.time + h;
        cfg = apply(cfg, combo, h / 6.0);
        cfg.time = t_next;
        if (cfg.domain == PeakonDomain::circle) {
            for (double& x : cfg.g) x = wrap_2pi(x);
            for (double& x : cfg.k) x = wrap_2pi(x);
        }
        traj.times.push_back(cfg.time);
        traj.configs.push_back(cfg);
        if (!guard(cfg)) break;
    }
    return traj;
}

namespace {

// Composite Simpson over [lo, hi]; the callers split at integrand kinks.
template <typename F>
double simpson(F&& f, double lo, double hi, int intervals) {
    if (hi <= lo) return 0.0;
    if (intervals % 2 == 1) ++intervals;
    const double h = (hi - lo) / intervals;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < intervals; ++i) acc += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Kink-aware integral of f over [lo, hi] splitting at the crest x0 and the
// evaluation point x.
template <typename F>
double integrate_split(F&& f, double lo, double hi, double x0, double x) {
    double cuts[4] = {lo, std::clamp(std::min(x0, x), lo, hi), std::clamp(std::max(x0, x), lo, hi),
                      hi};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += simpson(f, cuts[i], cuts[i + 1], 2048);
    return acc;
}

}  // namespace

WeakResidualReport weak_residual(const PeakonConfiguration& cfg, double c, double tolerance) {
    validate(cfg);
    if (cfg.f.size() != 1 || cfg.h.size() != 1 || cfg.g[0] != cfg.k[0])
        throw std::invalid_argument("weak_residual expects a single coincident peakon pair");
    if (cfg.domain != PeakonDomain::line)
        throw std::invalid_argument("weak_residual quadrature is defined on the line");

    const double x0 = cfg.g[0];
    const double alpha = cfg.f[0];
    const double beta = cfg.h[0];
    const int p = cfg.params.p, q = cfg.params.q;

    auto kernel = [&](double y) { return std::exp(-std::abs(y)); };
    // Classical parts of the nonlocal terms (u_yy = u away from the crest):
    //   a v^{p-1}v_y u + (p-a) v^{p-1}v_y u_yy  ->  -p a b^p sgn e^{-(p+1)|.|}
    //   v^{p-1} v_y u_y                        ->     a b^p e^{-(p+1)|.|}
    auto i1_quad = [&](double x) {
        auto green_part = [&](double y) {
            const double e = std::exp(-(p + 1) * std::abs(y - x0));
            return 0.5 * kernel(x - y) * (-static_cast<double>(p) * alpha * std::pow(beta, p) *
                                          sgn(y - x0) * e);
        };
        auto flux_part = [&](double y) {
            const double e = std::exp(-(p + 1) * std::abs(y - x0));
            return -0.5 * sgn(x - y) * kernel(x - y) * alpha * std::pow(beta, p) * e;
        };
        const double w = 40.0;
        return integrate_split(green_part, x0 - w, x0 + w, x0, x) +
               p * integrate_split(flux_part, x0 - w, x0 + w, x0, x);
    };
    auto i2_quad = [&](double x) {
        auto green_part = [&](double y) {
            const double e = std::exp(-(q + 1) * std::abs(y - x0));
            return 0.5 * kernel(x - y) * (-static_cast<double>(q) * beta * std::pow(alpha, q) *
                                          sgn(y - x0) * e);
        };
        auto flux_part = [&](double y) {
            const double e = std::exp(-(q + 1) * std::abs(y - x0));
            return -0.5 * sgn(x - y) * kernel(x - y) * beta * std::pow(alpha, q) * e;
        };
        const double w = 40.0;
        return integrate_split(green_part, x0 - w, x0 + w, x0, x) +
               q * integrate_split(flux_part, x0 - w, x0 + w, x0, x);
    };

    WeakResidualReport report;
    report.tolerance = tolerance;
    report.exclusion_halfwidth = 0.05;

    const int samples = 241;
    for (int i = 0; i < samples; ++i) {
        const double x = x0 - 6.0 + 12.0 * i / (samples - 1);
        if (std::abs(x - x0) < report.exclusion_halfwidth) continue;
        const double s = sgn(x - x0);
        const double u = alpha * kernel(x - x0);
        const double v = beta * kernel(x - x0);
        const double vp = std::pow(v, p);
        const double uq = std::pow(u, q);

        const double i1 = i1_quad(x);
        const double i2 = i2_quad(x);
        const double i1_closed = (-std::pow(beta, p) * u + vp * u) * s;
        const double i2_closed = (-std::pow(alpha, q) * v + uq * v) * s;
        report.sup_i1_mismatch = std::max(report.sup_i1_mismatch, std::abs(i1 - i1_closed));
        report.sup_i2_mismatch = std::max(report.sup_i2_mismatch, std::abs(i2 - i2_closed));

        // Traveling ansatz: u_t = c sgn(x-x0) u, u_x = -sgn(x-x0) u.
        const double res_u = c * s * u - vp * s * u + i1;
        const double res_v = c * s * v - uq * s * v + i2;
        report.sup_residual_u = std::max(report.sup_residual_u, std::abs(res_u));
        report.sup_residual_v = std::max(report.sup_residual_v, std::abs(res_v));
    }

    report.identity_pass =
        report.sup_i1_mismatch <= tolerance && report.sup_i2_mismatch <= tolerance;
    return report;
}

}  // namespace ccch
