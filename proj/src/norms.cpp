#include "ccch/norms.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace ccch {

double sobolev_norm(const Spectrum& spec, double s) {
    double acc = 0.0;
    for (int j = 0; j < spec.grid.num_modes(); ++j) {
        const double k = spec.grid.wavenumber(j);
        acc += spec.weight(j) * std::pow(1.0 + k * k, s) * std::norm(spec.c[j]);
    }
    return std::sqrt(spec.grid.length * acc);
}

double sobolev_norm(const Field& f, double s) { return sobolev_norm(analyze(f), s); }

int dyadic_block_index(double abs_k) {
    if (abs_k <= 1.0) return -1;
    int j = static_cast<int>(std::floor(std::log2(abs_k))) + 1;
    // guard against log2 rounding at exact powers of two
    while (std::ldexp(1.0, j - 1) > abs_k) --j;
    while (abs_k >= std::ldexp(1.0, j)) ++j;
    return j;
}

double besov_norm(const Spectrum& spec, double s, double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("besov summation index must be >= 1");
    std::map<int, double> block_energy;  // j -> ||Delta_j f||_{L^2}^2
    for (int j = 0; j < spec.grid.num_modes(); ++j) {
        const double e = spec.weight(j) * std::norm(spec.c[j]);
        if (e == 0.0) continue;
        block_energy[dyadic_block_index(spec.grid.wavenumber(j))] += e;
    }
    const bool sup_variant = std::isinf(r);
    double acc = 0.0;
    for (const auto& [j, e2] : block_energy) {
        const double term = std::pow(2.0, j * s) * std::sqrt(spec.grid.length * e2);
        if (sup_variant)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, r);
    }
    return sup_variant ? acc : std::pow(acc, 1.0 / r);
}

double besov_norm(const Field& f, double s, double r) { return besov_norm(analyze(f), s, r); }

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
    double acc = 0.0;
    for (double v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid().dx(), 1.0 / p);
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ccch
