#pragma once

#include "ccch/grid.hpp"
#include "ccch/spectral.hpp"

namespace ccch {

/// Equation parameters: exponents p, q (positive integers) and the transport
/// coefficients a, b.
struct PdeParams {
    int p = 1;
    int q = 1;
    double a = 2.0;
    double b = 2.0;

    int kappa() const { return p > q ? p : q; }
};

void validate(const PdeParams& par);

/// The evolved pair (u, v) with its parameters; momenta m = (1-dxx)u and
/// n = (1-dxx)v are derived on demand.
struct FieldState {
    Field u;
    Field v;
    PdeParams params;
    double time = 0.0;

    FieldState() = default;
    FieldState(Field u_in, Field v_in, PdeParams par, double t = 0.0);

    const GridSpec& grid() const { return u.grid(); }
    Field m() const { return helmholtz(u); }
    Field n() const { return helmholtz(v); }
    bool finite() const { return u.finite() && v.finite(); }
};

enum class Formulation { velocity, momentum };

struct SolverParams {
    PdeParams pde;
    double dt = 1e-3;
    double cfl = 0.5;
    double t_final = 1.0;
    int dealias_degree = 0;  // 0 means derive max{p,q}+1 from pde
    int monitor_every = 10;
    Formulation formulation = Formulation::velocity;
    double monitor_s = 3.0;       // regularity index used for trace norms
    double blowup_ceiling = 1e8;  // sup-norm ceiling before declaring blow-up
    bool store_states = true;     // keep every monitored snapshot (else ends only)

    int effective_dealias_degree() const {
        const int floor_deg = pde.kappa() + 1;
        return dealias_degree > floor_deg ? dealias_degree : floor_deg;
    }
};

void validate(const SolverParams& par);

}  // namespace ccch
