#include "ccch/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ccch::fft {

namespace {

// The FFTW planner is not thread-safe; plan execution is. Plans are cached
// per thread, each entry owning its aligned buffers, so sweep workers never
// share state. FFTW_ESTIMATE keeps planning cheap and run-to-run
// deterministic (required for byte-identical traces).
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    int n = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    explicit PlanPair(int size) : n(size) {
        real = fftw_alloc_real(n);
        cplx = fftw_alloc_complex(n / 2 + 1);
        if (!real || !cplx) throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
        if (!fwd || !inv) throw std::runtime_error("fftw planning failed");
    }

    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;

    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        fftw_free(cplx);
        fftw_free(real);
    }
};

PlanPair& plan_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

}  // namespace

std::vector<std::complex<double>> forward(int n, std::span<const double> values) {
    if (static_cast<int>(values.size()) != n) throw std::invalid_argument("fft::forward size mismatch");
    PlanPair& plan = plan_for(n);
    std::memcpy(plan.real, values.data(), sizeof(double) * n);
    fftw_execute(plan.fwd);
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::memcpy(out.data(), plan.cplx, sizeof(fftw_complex) * out.size());
    return out;
}

std::vector<double> inverse(int n, std::span<const std::complex<double>> coeffs) {
    if (static_cast<int>(coeffs.size()) != n / 2 + 1)
        throw std::invalid_argument("fft::inverse size mismatch");
    PlanPair& plan = plan_for(n);
    std::memcpy(plan.cplx, coeffs.data(), sizeof(fftw_complex) * coeffs.size());
    fftw_execute(plan.inv);
    return std::vector<double>(plan.real, plan.real + n);
}

}  // namespace ccch::fft
