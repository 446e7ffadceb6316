#pragma once

#include "ccch/norms.hpp"
#include "ccch/state.hpp"

#include <span>
#include <string>
#include <vector>

namespace ccch {

/// Lifespan constant calibrated once by bisection (CCCH parameters p=q=1,
/// a=b=2, s=3, seed set {1..8}) so that the factor-2 size bound holds up to
/// the estimated lifespan; see README for the calibration recipe.
inline constexpr double kCalibratedCs = 0.375;

struct TendencyPair {
    Field first;   // d/dt of u (velocity form) or m (momentum form)
    Field second;  // d/dt of v or n
};

/// Momentum form of the system: dm/dt = -v^p m_x - (a/p)(v^p)_x m and
/// dn/dt = -u^q n_x - (b/q)(u^q)_x n, every product alias-free.
TendencyPair rhs_momentum(const FieldState& state, int dealias_degree = 0);

/// Nonlocal velocity form: du/dt = -v^p u_x - I1(u,v) with
/// I1 = (1-dxx)^{-1}[a v^{p-1}v_x u + (p-a) v^{p-1}v_x u_xx]
///    + p (1-dxx)^{-1} d_x(v^{p-1}v_x u_x), and symmetrically for v.
TendencyPair rhs_velocity(const FieldState& state, int dealias_degree = 0);

/// Classical four-stage Runge-Kutta step of the chosen formulation.
FieldState step_rk4(const FieldState& state, double dt, const SolverParams& params);

struct BlowupIndicators {
    double sup_m = 0.0;
    double sup_n = 0.0;
    double slope_min_vp = 0.0;  // signed extremes of (v^p)_x
    double slope_max_vp = 0.0;
    double slope_min_uq = 0.0;  // signed extremes of (u^q)_x
    double slope_max_uq = 0.0;
    double slope_argmin_vp = 0.0;  // grid locations of the extremes
    double slope_argmax_vp = 0.0;
    double slope_argmin_uq = 0.0;
    double slope_argmax_uq = 0.0;
    double thm13_accum = 0.0;  // running integral of the blow-up criterion integrand
};

struct MonitorRow {
    double t = 0.0;
    double u_hs = 0.0;  // ||u||_{H^s} at params.monitor_s
    double v_hs = 0.0;
    BlowupIndicators indicators;
    double int_m2 = 0.0;
    double int_n2 = 0.0;
    double int_abs_m_pa = 0.0;  // ∫|m|^{p/a} (sup norm when a = 0)
    double int_abs_n_qb = 0.0;
    double rate_m_lhs = 0.0;  // d/dt ∫m² from the tendency
    double rate_m_rhs = 0.0;  // ((p-2a)/p) ∫ m² (v^p)_x
    double rate_n_lhs = 0.0;
    double rate_n_rhs = 0.0;
};

enum class RunVerdict { healthy, blowup, nonfinite };

std::string to_string(RunVerdict v);

struct Trajectory {
    std::vector<double> times;
    std::vector<FieldState> states;  // snapshots at the monitor cadence
};

struct DiagnosticTrace {
    std::vector<MonitorRow> rows;
    RunVerdict verdict = RunVerdict::healthy;
    double end_time = 0.0;
    int steps_taken = 0;
    int cfl_halvings = 0;
};

struct IntegrateResult {
    Trajectory trajectory;
    DiagnosticTrace trace;
};

/// Fixed-step march with CFL-triggered step halving; records indicators and
/// conserved quantities every monitor_every steps. Reports blow-up instead
/// of aborting: sup-norm ceiling or non-finite values end the run early.
IntegrateResult integrate(const FieldState& initial, const SolverParams& params);

/// Eq.-style lifespan floor T0 = (2^kappa - 1) / (2^(kappa+1) kappa C_s ||z0||^kappa)
/// with ||z0|| = ||u0||_{H^s} + ||v0||_{H^s}. Returns +infinity for zero data.
double lifespan_estimate(const FieldState& initial, double s, double c_s);

struct CharacteristicBundle {
    std::vector<double> seeds;
    std::vector<double> times;
    // paths[i][j]: characteristic of seed j at times[i]
    std::vector<std::vector<double>> phi;    // flow of v^p
    std::vector<std::vector<double>> psi;    // flow of u^q
    std::vector<std::vector<double>> phi_x;  // Jacobians (exponential formula)
    std::vector<std::vector<double>> psi_x;
    bool jacobians_positive = true;
};

/// RK4 on phi_t = v^p(t, phi), psi_t = u^q(t, psi) over the trajectory's
/// snapshot grid; v^p, u^q interpolated trigonometrically in space and
/// linearly in time. Jacobians accumulate exp of the slope integral.
CharacteristicBundle evolve_characteristics(const Trajectory& traj, std::span<const double> seeds);

struct SupportInterval {
    bool empty = true;
    double lo = 0.0;
    double hi = 0.0;
};

enum class SupportVerdict { pass, fail, not_applicable };

std::string to_string(SupportVerdict v);

struct SupportReport {
    std::vector<double> times;
    std::vector<SupportInterval> m_support;
    std::vector<SupportInterval> n_support;
    SupportVerdict verdict = SupportVerdict::not_applicable;
    double threshold = 0.0;
};

/// Tracks the smallest interval containing all points with |m| > threshold
/// and compares it against the characteristic image of the initial support
/// padded by two grid cells.
SupportReport support_diagnostic(const Trajectory& traj, double threshold = 1e-10);

/// Deterministic band-limited random data (uniform coefficients with 1/(1+k)^2
/// decay); the same bits on every platform for a given seed.
Field random_band_field(GridSpec grid, int k_band, double amplitude, unsigned long long seed);

}  // namespace ccch
