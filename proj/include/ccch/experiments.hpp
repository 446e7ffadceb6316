#pragma once

#include "ccch/dynamics.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ccch {

/// C2 polynomial smoothstep bump: exactly 1 on |x| < 1, exactly 0 on |x| >= 2.
double bump_plateau1(double x);

/// Wider companion: exactly 1 on |x| < 2, exactly 0 on |x| >= 4, so its
/// q-th power is 1 on the support of bump_plateau1.
double bump_plateau2(double x);

/// exp(-x^2), the profile used in the dyadic-limit checks.
double gaussian_profile(double x);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Smallest power-of-two box L = 2pi*2^j with L >= 4*support_halfwidth
/// (edge clearance >= L/4) and the smallest power-of-two n that resolves
/// the carrier lambda with at least points_per_wavelength points.
GridSpec oscillation_grid(double lambda, double support_halfwidth, int points_per_wavelength = 8);

struct HighFreqSpec {
    double omega = 0.0;
    double lambda = 64.0;
    double delta = 0.5;
    double s = 3.0;
    int p = 1;
    int q = 1;
    double t = 0.0;
};

/// High-frequency pair u_h = lambda^{-delta/(2p)-s} phi(x/lambda^{delta/p})
/// cos(lambda x - omega^p t) (and v_h with p <-> q), centered in the box.
/// Requires lambda >= 4, integer relative to the box, and resolved by >= 8
/// points per wavelength.
std::pair<Field, Field> build_high_freq(const HighFreqSpec& spec, const GridSpec& grid);

/// Low-frequency initial data u_l(0) = omega lambda^{-1/q} phi~(x/lambda^{delta/q}),
/// v_l(0) = omega lambda^{-1/p} psi~(x/lambda^{delta/p}).
std::pair<Field, Field> build_low_freq_data(double omega, double lambda, double delta, int q,
                                            int p, const GridSpec& grid);

struct Lemma51Row {
    double lambda = 0.0;
    double scaled_norm = 0.0;  // lambda^{-delta/2-s} ||psi(x/l^d) cos(lx-a)||_{H^s}
    double ratio = 0.0;        // against ||psi||_{L^2}/sqrt(2)
};

struct Lemma51Report {
    std::vector<Lemma51Row> rows;
    double limit = 0.0;  // ||psi||_{L^2}/sqrt(2)
    bool monotone = false;
    bool final_within_5pct = false;
};

Lemma51Report check_lemma51(const std::function<double(double)>& profile, double s, double delta,
                            std::span<const double> lambdas, bool use_sin = false,
                            double phase = 0.0);

struct NonuniformParams {
    double s = 3.0;
    double delta = 0.5;
    int p = 1;
    int q = 1;
    double a = 2.0;
    double b = 2.0;
    std::vector<double> lambdas = {64.0, 128.0, 256.0, 512.0, 1024.0};
    double t_probe = 1.0;
    double dt = 0.02;
    double cfl = 0.5;
    int threads = 0;  // 0: auto (capped by CCCH_THREADS)
};

void validate(const NonuniformParams& par);

struct NonuniformRow {
    double lambda = 0.0;
    int n = 0;
    double length = 0.0;
    double dist0 = 0.0;   // ||z_{1,l}(0) - z_{0,l}(0)||_{H^s}
    double dist_t = 0.0;  // same at t_probe
    double sup_hs0 = 0.0; // max over omega of ||z(0)||_{H^s} (ceiling diagnostic)
    bool excluded = false;
    std::string note;
};

struct NonuniformReport {
    NonuniformParams params;
    std::vector<NonuniformRow> rows;
    double fitted_slope0 = 0.0;
    double predicted_slope0 = 0.0;  // (delta-2)/(2 max{p,q})
    double phi_l2 = 0.0;
    double lower_bound = 0.0;  // 0.5 * (1/sqrt 2) ||phi||_{L^2} |sin t_probe|
    bool decreasing_pass = false;
    bool slope_pass = false;   // within +-20% of the prediction
    bool lower_pass = false;   // two largest lambdas above the bound
};

/// The two-frequency non-uniform-dependence sweep: assemble both data
/// families, integrate the full system, measure H^s distances at t = 0 and
/// t = t_probe. Per-lambda solves for the two omegas run concurrently.
NonuniformReport run_nonuniform(const NonuniformParams& params);

struct HoelderRegion {
    std::string name;   // A1..A4
    double alpha = 0.0;
};

/// Region classification of the data-to-solution Hoelder exponent; throws
/// std::invalid_argument outside every region (needs s > 5/2, 0 <= r < s).
HoelderRegion hoelder_region(double s, double r);

struct HoelderParams {
    double s = 3.0;
    double r = 2.0;
    int p = 1;
    int q = 1;
    double a = 2.0;
    double b = 2.0;
    std::vector<double> eps_list = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
    double t_final = 0.2;
    double dt = 1e-3;
    int n = 256;
    double length = kTwoPi;
    unsigned long long seed = 1;
    double base_amplitude = 0.25;
    int threads = 0;
};

struct HoelderRow {
    double eps = 0.0;
    double dist0 = 0.0;
    double dist_t = 0.0;
};

struct HoelderReport {
    HoelderParams params;
    HoelderRegion region;
    std::vector<HoelderRow> rows;
    double fitted_exponent = 0.0;
    bool pass = false;  // fitted >= alpha - 0.1
};

HoelderReport run_hoelder(const HoelderParams& params);

struct ConservationParams {
    PdeParams pde{2, 2, 1.0, 1.0};
    int n = 256;
    double length = kTwoPi;
    double t_final = 1.0;
    double dt = 1e-3;
    int monitor_every = 10;
    unsigned long long seed = 2;
    double amplitude = 0.4;
    int band = 6;
    double drift_tol = 1e-8;
    double rate_tol = 1e-8;
};

struct ConservationReport {
    DiagnosticTrace trace;
    double max_drift_m2 = 0.0;  // relative
    double max_drift_n2 = 0.0;
    double max_rate_mismatch = 0.0;
    bool pass = false;
};

ConservationReport run_conservation(const ConservationParams& params);

struct SizeBoundResult {
    double t0 = 0.0;
    double max_growth_u = 0.0;  // max_t ||u(t)||/||u(0)||
    double max_growth_v = 0.0;
    bool pass = false;  // both growths <= 2 up to t0, run healthy
};

/// Integrates to the estimated lifespan and checks the factor-2 size bound.
SizeBoundResult check_size_bound(const FieldState& initial, double s, double c_s, double dt = 1e-3);

struct CalibrationParams {
    double s = 3.0;
    PdeParams pde{1, 1, 2.0, 2.0};
    int n = 256;
    double length = kTwoPi;
    std::vector<unsigned long long> seeds = {1, 2, 3, 4, 5, 6, 7, 8};
    double amplitude = 0.5;
    int band = 6;
    double dt = 1e-3;
    double lo = 0.05;
    double hi = 2.0;
    int iterations = 12;
};

/// Bisects the smallest C_s for which every calibration seed satisfies the
/// factor-2 bound up to the estimated lifespan. The frozen result lives in
/// kCalibratedCs.
double calibrate_cs(const CalibrationParams& params);

struct ResidualDecayRow {
    double lambda = 0.0;
    double res_u = 0.0;  // H^theta residual of the approximate pair at t = 0
    double res_v = 0.0;
};

struct ResidualDecayReport {
    std::vector<ResidualDecayRow> rows;
    double fitted_decay = 0.0;  // positive rate rho in ||F|| ~ lambda^{-rho}
    double theta_s = 0.0;       // 1 + s - delta - theta
    bool pass = false;          // fitted_decay >= theta_s - 0.3
};

/// Plugs the two-frequency approximate solution into the discrete equations
/// at t = 0 and measures how fast the defect decays with lambda.
ResidualDecayReport residual_decay(double s, double theta, double delta, int p, int q, double a,
                                   double b, std::span<const double> lambdas);

/// Worker pool over independent jobs; honors the CCCH_THREADS cap. Results
/// must be written to pre-sized slots for deterministic assembly.
void parallel_jobs(int count, const std::function<void(int)>& job, int max_threads = 0);

}  // namespace ccch
