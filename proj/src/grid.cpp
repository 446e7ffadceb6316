#include "ccch/grid.hpp"

#include "ccch/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace ccch {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = point(j);
    return x;
}

GridSpec make_grid(int n, double length) {
    if (!is_power_of_two(n) || n < 8)
        throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("grid length must be positive and finite");
    return GridSpec{n, length};
}

Field::Field(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n)
        throw std::invalid_argument("field values do not match grid size");
}

Field Field::sample(GridSpec grid, const std::function<double(double)>& f) {
    Field out(grid);
    for (int j = 0; j < grid.n; ++j) out[j] = f(grid.point(j));
    return out;
}

bool Field::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (int j = 0; j < size(); ++j) values_[j] += other.values_[j];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (int j = 0; j < size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

Field& Field::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double c, Field f) { return f *= c; }

void axpy(double c, const Field& x, Field& y) {
    require_same_grid(x.grid(), y.grid());
    for (int j = 0; j < x.size(); ++j) y[j] += c * x[j];
}

Spectrum analyze(const Field& f) {
    Spectrum s{f.grid(), fft::forward(f.grid().n, f.values())};
    const double scale = 1.0 / f.grid().n;
    for (auto& c : s.c) c *= scale;
    return s;
}

Field synthesize(const Spectrum& s) {
    // fftw c2r is unnormalized; coefficients already carry the 1/n.
    return Field(s.grid, fft::inverse(s.grid.n, s.c));
}

double eval_series(const Spectrum& s, double x) {
    const int half = s.grid.n / 2;
    double acc = s.c[0].real();
    for (int j = 1; j < half; ++j) {
        const double kx = s.grid.wavenumber(j) * x;
        acc += 2.0 * (s.c[j].real() * std::cos(kx) - s.c[j].imag() * std::sin(kx));
    }
    acc += s.c[half].real() * std::cos(s.grid.wavenumber(half) * x);
    return acc;
}

double integral(const Field& f) {
    double acc = 0.0;
    for (double v : f.values()) acc += v;
    return acc * f.grid().dx();
}

double inner(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid());
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) acc += f[j] * g[j];
    return acc * f.grid().dx();
}

}  // namespace ccch
