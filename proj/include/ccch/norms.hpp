#pragma once

#include "ccch/grid.hpp"

namespace ccch {

/// ||f||_{H^s}^2 = L * sum_k (1+k^2)^s |c_k|^2 over signed modes, so s = 0
/// reproduces the trapezoid value of the integral of f^2. Exactly satisfies
/// sobolev_norm(u, s) == sobolev_norm(helmholtz(u), s-2).
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const Spectrum& spec, double s);

/// Sharp dyadic block index of a wavenumber: -1 for |k| <= 1, else the
/// unique j >= 1 with 2^(j-1) <= |k| < 2^j (the ball takes precedence).
int dyadic_block_index(double abs_k);

/// B^s_{2,r} with sharp Fourier blocks: ell^r over j of 2^{js} ||block_j f||_{L^2}.
/// Pass r = INFINITY for the sup variant.
double besov_norm(const Field& f, double s, double r);
double besov_norm(const Spectrum& spec, double s, double r);

/// Trapezoid quadrature of |f|^p, p-th root. p >= 1 (rationals allowed).
double lp_norm(const Field& f, double p);

/// Grid maximum of |f|.
double sup_norm(const Field& f);

}  // namespace ccch
