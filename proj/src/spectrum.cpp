#include "pesl1/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pesl1 {

namespace {

// FFTW planning is not thread-safe; executing a finished plan is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

} // namespace

std::vector<double> magnitude_spectrum(const Signal& x)
{
    const std::size_t n = x.size();
    if (n < 16) throw std::invalid_argument("magnitude_spectrum: need at least 16 samples");
    const std::size_t bins = n / 2 + 1;

    std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
    if (!in || !out) throw std::bad_alloc();

    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("magnitude_spectrum: FFTW planning failed");

    std::copy(x.begin(), x.end(), in.get());
    fftw_execute(plan);

    std::vector<double> mag(bins);
    for (std::size_t k = 0; k < bins; ++k) mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);

    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
    return mag;
}

std::vector<double> smooth_spectrum(std::span<const double> mag, std::size_t window)
{
    if (window == 0 || window % 2 == 0)
        throw std::invalid_argument("smooth_spectrum: window must be a positive odd integer");
    const auto len = static_cast<std::ptrdiff_t>(mag.size());
    if (len == 0) return {};
    const auto half = static_cast<std::ptrdiff_t>(window / 2);

    auto at = [&](std::ptrdiff_t i) {
        // Mirror about the end samples until the index lands inside.
        while (i < 0 || i >= len) {
            if (len == 1) return mag[0];
            if (i < 0) i = -i;
            if (i >= len) i = 2 * (len - 1) - i;
        }
        return mag[static_cast<std::size_t>(i)];
    };

    std::vector<double> out(mag.size());
    for (std::ptrdiff_t k = 0; k < len; ++k) {
        double acc = 0.0;
        for (std::ptrdiff_t j = -half; j <= half; ++j) acc += at(k + j);
        out[static_cast<std::size_t>(k)] = acc / static_cast<double>(window);
    }
    return out;
}

std::size_t levels_for_bandwidth(double omega0)
{
    std::size_t levels = 0;
    while (levels < 64 && std::numbers::pi / std::ldexp(1.0, static_cast<int>(levels + 1)) > omega0) ++levels;
    return levels;
}

BandwidthEstimate estimate_bandwidth(std::span<const double> mag, std::size_t signal_length,
                                     const BandwidthOptions& opts)
{
    if (!(opts.alpha > 1.0)) throw std::invalid_argument("estimate_bandwidth: alpha must exceed 1");
    if (opts.max_levels < 1) throw std::invalid_argument("estimate_bandwidth: max_levels must be >= 1");
    if (mag.size() < 4) throw std::invalid_argument("estimate_bandwidth: spectrum too short");
    if (signal_length < 2 * (mag.size() - 1))
        throw std::invalid_argument("estimate_bandwidth: spectrum longer than the signal allows");

    const std::vector<double> smooth = smooth_spectrum(mag, opts.smooth_window);
    std::vector<double> top(smooth.begin() + static_cast<std::ptrdiff_t>(3 * smooth.size() / 4), smooth.end());
    const auto mid = top.begin() + static_cast<std::ptrdiff_t>(top.size() / 2);
    std::nth_element(top.begin(), mid, top.end());
    double floor = *mid;
    if (top.size() % 2 == 0) {
        const double below = *std::max_element(top.begin(), mid);
        floor = 0.5 * (floor + below);
    }

    const double limit = opts.alpha * floor;
    std::ptrdiff_t edge = -1;
    for (std::size_t k = smooth.size(); k-- > 0;) {
        if (smooth[k] > limit) {
            edge = static_cast<std::ptrdiff_t>(k);
            break;
        }
    }

    const double bin_width = 2.0 * std::numbers::pi / static_cast<double>(signal_length);
    BandwidthEstimate est;
    est.noise_floor = floor;
    if (edge < 0) {
        est.omega0 = bin_width;
        est.levels = opts.max_levels;
        est.degenerate = true;
        return est;
    }
    est.omega0 = bin_width * static_cast<double>(edge);
    const std::size_t levels = levels_for_bandwidth(est.omega0);
    if (levels == 0) {
        est.levels = 1;
        est.degenerate = true;
        return est;
    }
    est.levels = std::min(levels, opts.max_levels);
    return est;
}

} // namespace pesl1
