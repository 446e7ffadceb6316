#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ccch {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic collocation grid on [0, length), x_j = j*length/n.
/// n must be a power of two >= 8 so that dyadic refinement and the rfft
/// layout stay exact.
struct GridSpec {
    int n = 0;
    double length = kTwoPi;

    double dx() const { return length / n; }
    double point(int j) const { return length * j / n; }
    std::vector<double> points() const;

    /// Wavenumber of rfft bin j (j = 0..n/2): k_j = 2*pi*j/length.
    double wavenumber(int j) const { return kTwoPi * j / length; }
    int num_modes() const { return n / 2 + 1; }
    double k_max() const { return kPi * n / length; }

    bool operator==(const GridSpec&) const = default;
};

/// Throws std::invalid_argument unless n is a power of two >= 8 and length > 0.
GridSpec make_grid(int n, double length = kTwoPi);

/// Real-valued grid function attached to one GridSpec.
class Field {
  public:
    Field() = default;
    explicit Field(GridSpec grid) : grid_(grid), values_(grid.n, 0.0) {}
    Field(GridSpec grid, std::vector<double> values);

    static Field sample(GridSpec grid, const std::function<double(double)>& f);

    const GridSpec& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](int j) const { return values_[j]; }
    double& operator[](int j) { return values_[j]; }

    bool finite() const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double c);

  private:
    GridSpec grid_;
    std::vector<double> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double c, Field f);

/// y += c*x, grids must match.
void axpy(double c, const Field& x, Field& y);

/// Fourier coefficients in the rfft layout, normalized so that
/// f(x_m) = sum_{j=-n/2}^{n/2-1} c_|j| e^{i k_j x_m} with c_{-j} = conj(c_j);
/// i.e. coefficients(j) = (forward FFT)_j / n.
struct Spectrum {
    GridSpec grid;
    std::vector<std::complex<double>> c;  // size n/2 + 1

    /// Parseval weight of bin j: 1 for j = 0 and j = n/2, else 2.
    double weight(int j) const { return (j == 0 || j == grid.n / 2) ? 1.0 : 2.0; }
};

Spectrum analyze(const Field& f);
Field synthesize(const Spectrum& s);

/// Trigonometric interpolation: evaluate the band-limited interpolant at an
/// arbitrary point (periodic extension). The unmatched Nyquist bin is taken
/// as a pure cosine, consistent with real grid data.
double eval_series(const Spectrum& s, double x);

/// Trapezoid rule over the box; exact for band-limited data (equals L*c_0).
double integral(const Field& f);

/// Trapezoid rule for ∫ f g over the box (Parseval-exact when the product's
/// spectrum does not fold onto mode 0, which holds for Nyquist-free inputs).
double inner(const Field& f, const Field& g);

}  // namespace ccch
