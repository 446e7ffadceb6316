#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ccch::fft {

/// Unnormalized real-to-complex transform, rfft layout (n/2 + 1 bins).
std::vector<std::complex<double>> forward(int n, std::span<const double> values);

/// Unnormalized complex-to-real transform (caller owns normalization).
std::vector<double> inverse(int n, std::span<const std::complex<double>> coeffs);

}  // namespace ccch::fft
