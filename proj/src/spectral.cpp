#include "ccch/spectral.hpp"

#include "ccch/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace ccch {

Spectrum deriv(Spectrum s, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (order == 0) return s;
    const int half = s.grid.n / 2;
    for (int j = 0; j <= half; ++j) {
        const std::complex<double> ik(0.0, s.grid.wavenumber(j));
        std::complex<double> mult(1.0, 0.0);
        for (int m = 0; m < order; ++m) mult *= ik;
        s.c[j] *= mult;
    }
    if (order % 2 == 1) s.c[half] = 0.0;
    return s;
}

Field deriv(const Field& f, int order) { return synthesize(deriv(analyze(f), order)); }

Spectrum helmholtz(Spectrum s) {
    for (int j = 0; j < s.grid.num_modes(); ++j) {
        const double k = s.grid.wavenumber(j);
        s.c[j] *= 1.0 + k * k;
    }
    return s;
}

Field helmholtz(const Field& f) { return synthesize(helmholtz(analyze(f))); }

Spectrum helmholtz_inv(Spectrum s) {
    for (int j = 0; j < s.grid.num_modes(); ++j) {
        const double k = s.grid.wavenumber(j);
        s.c[j] /= 1.0 + k * k;
    }
    return s;
}

Field helmholtz_inv(const Field& f) { return synthesize(helmholtz_inv(analyze(f))); }

Spectrum pad_spectrum(const Spectrum& s, int n_pad) {
    if (n_pad < s.grid.n) throw std::invalid_argument("pad size smaller than source grid");
    Spectrum out{GridSpec{n_pad, s.grid.length}, std::vector<std::complex<double>>(n_pad / 2 + 1, 0.0)};
    for (int j = 0; j <= s.grid.n / 2; ++j) out.c[j] = s.c[j];
    return out;
}

Spectrum truncate_spectrum(const Spectrum& s, int n_out) {
    if (n_out > s.grid.n) throw std::invalid_argument("truncation size larger than source grid");
    Spectrum out{GridSpec{n_out, s.grid.length}, std::vector<std::complex<double>>(n_out / 2 + 1, 0.0)};
    for (int j = 0; j < n_out / 2; ++j) out.c[j] = s.c[j];
    out.c[n_out / 2] = 0.0;
    return out;
}

int dealias_pad_size(int n, int deg) {
    if (deg < 1) throw std::invalid_argument("product degree must be >= 1");
    return ((deg + 2) / 2) * n;  // ceil((deg+1)/2) * n
}

ProductWorkspace::ProductWorkspace(GridSpec grid, int degree)
    : base_(grid), padded_{dealias_pad_size(grid.n, degree), grid.length} {}

std::vector<double> ProductWorkspace::upsample(const Spectrum& s) const {
    if (!(s.grid == base_)) throw std::invalid_argument("spectrum grid does not match workspace");
    return fft::inverse(padded_.n, pad_spectrum(s, padded_.n).c);
}

Spectrum ProductWorkspace::project(std::span<const double> padded_values) const {
    auto coeffs = fft::forward(padded_.n, padded_values);
    const double scale = 1.0 / padded_.n;
    for (auto& c : coeffs) c *= scale;
    return truncate_spectrum(Spectrum{padded_, std::move(coeffs)}, base_.n);
}

Field dealiased_product(std::span<const Field> factors) {
    if (factors.empty()) throw std::invalid_argument("dealiased_product needs at least one factor");
    const GridSpec grid = factors[0].grid();
    for (const Field& f : factors)
        if (!(f.grid() == grid)) throw std::invalid_argument("dealiased_product: mismatched grids");
    if (factors.size() == 1) return factors[0];

    ProductWorkspace ws(grid, static_cast<int>(factors.size()));
    std::vector<double> acc = ws.upsample(analyze(factors[0]));
    for (size_t i = 1; i < factors.size(); ++i) {
        const auto fi = ws.upsample(analyze(factors[i]));
        for (size_t j = 0; j < acc.size(); ++j) acc[j] *= fi[j];
    }
    return synthesize(ws.project(acc));
}

Field dealiased_product(std::initializer_list<const Field*> factors) {
    std::vector<Field> copy;
    copy.reserve(factors.size());
    for (const Field* f : factors) copy.push_back(*f);
    return dealiased_product(std::span<const Field>(copy));
}

Field dealiased_power(const Field& f, int power) {
    if (power < 0) throw std::invalid_argument("dealiased_power: negative power");
    if (power == 0) {
        Field one(f.grid());
        for (int j = 0; j < one.size(); ++j) one[j] = 1.0;
        return one;
    }
    std::vector<Field> factors(power, f);
    return dealiased_product(std::span<const Field>(factors));
}

Field mollify(const Field& f, double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("mollifier scale must lie in (0, 1]");
    Spectrum s = analyze(f);
    for (int j = 0; j < s.grid.num_modes(); ++j) {
        const double ek = eps * s.grid.wavenumber(j);
        s.c[j] *= std::exp(-ek * ek);
    }
    return synthesize(s);
}

}  // namespace ccch
