#pragma once

#include "ccch/grid.hpp"

#include <span>
#include <vector>

namespace ccch {

/// Fourier-multiplier derivative (ik)^order. Odd orders zero the unmatched
/// Nyquist bin so the result stays real-symmetric.
Field deriv(const Field& f, int order);
Spectrum deriv(Spectrum s, int order);

/// (1 - d^2/dx^2) as the diagonal multiplier (1 + k^2).
Field helmholtz(const Field& f);
Spectrum helmholtz(Spectrum s);

/// Inverse multiplier 1/(1 + k^2); exact inverse of helmholtz.
Field helmholtz_inv(const Field& f);
Spectrum helmholtz_inv(Spectrum s);

/// Pointwise product of the fields, evaluated alias-free on a zero-padded
/// grid of ceil((deg+1)/2)*n points (deg = number of factors) and truncated
/// back. The truncation zeroes the Nyquist bin.
Field dealiased_product(std::span<const Field> factors);
Field dealiased_product(std::initializer_list<const Field*> factors);

/// f^power via the padded-grid route (power >= 0; power 0 gives the constant 1).
Field dealiased_power(const Field& f, int power);

/// Friedrichs mollifier: multiplication by exp(-(eps*k)^2) on the Fourier
/// side. A contraction in every H^s norm; eps must lie in (0, 1].
Field mollify(const Field& f, double eps);

/// Pads a spectrum with zeros to a larger grid (same box length).
Spectrum pad_spectrum(const Spectrum& s, int n_pad);

/// Restricts a spectrum to a smaller grid, zeroing the target Nyquist bin.
Spectrum truncate_spectrum(const Spectrum& s, int n_out);

/// Padded grid size used to evaluate a degree-`deg` product alias-free.
int dealias_pad_size(int n, int deg);

/// Workspace for forming several alias-free products from one set of
/// upsampled factors (the hot path of a PDE right-hand side). All slots
/// share the padded grid of the degree given at construction.
class ProductWorkspace {
  public:
    ProductWorkspace(GridSpec grid, int degree);

    /// Upsamples (band-limited interpolation) onto the padded grid.
    std::vector<double> upsample(const Spectrum& s) const;

    /// Forward transform of padded pointwise data, truncated to the base grid.
    Spectrum project(std::span<const double> padded_values) const;

    const GridSpec& padded_grid() const { return padded_; }
    const GridSpec& base_grid() const { return base_; }

  private:
    GridSpec base_;
    GridSpec padded_;
};

}  // namespace ccch
