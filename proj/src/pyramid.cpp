#include "pesl1/pyramid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pesl1 {

std::vector<double> design_lowpass(double cutoff, std::size_t taps)
{
    if (taps == 0 || taps % 2 == 0) throw std::invalid_argument("design_lowpass: taps must be odd");
    if (!(cutoff > 0.0 && cutoff < std::numbers::pi))
        throw std::invalid_argument("design_lowpass: cutoff must lie in (0, pi)");

    std::vector<double> h(taps);
    const double centre = static_cast<double>(taps - 1) / 2.0;
    double dc = 0.0;
    for (std::size_t m = 0; m < taps; ++m) {
        const double offset = static_cast<double>(m) - centre;
        const double ideal = offset == 0.0 ? cutoff / std::numbers::pi
                                           : std::sin(cutoff * offset) / (std::numbers::pi * offset);
        const double window = taps == 1 ? 1.0
                                        : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) /
                                                                 static_cast<double>(taps - 1));
        h[m] = ideal * window;
        dc += h[m];
    }
    for (double& c : h) c /= dc;
    return h;
}

std::vector<double> filter_circular(std::span<const double> x, std::span<const double> h)
{
    const std::size_t n = x.size();
    const std::size_t taps = h.size();
    const std::size_t centre = (taps - 1) / 2;
    std::vector<double> y(n, 0.0);
    if (n == 0) return y;
    // x index (i - m + centre) mod n, kept nonnegative by adding a multiple of n.
    const std::size_t bias = ((taps / n) + 1) * n;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < taps; ++m) acc += h[m] * x[(i + centre + bias - m) % n];
        y[i] = acc;
    }
    return y;
}

std::vector<double> dyadic_cutoffs(std::size_t levels)
{
    std::vector<double> cutoffs(levels);
    double c = std::numbers::pi;
    for (auto& v : cutoffs) {
        c /= 2.0;
        v = c;
    }
    return cutoffs;
}

PyramidSet pyramid_analysis(const Signal& x, std::span<const double> cutoffs, std::size_t taps)
{
    if (cutoffs.empty()) throw std::invalid_argument("pyramid_analysis: need at least one cutoff");
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (!(cutoffs[k] > 0.0 && cutoffs[k] < std::numbers::pi))
            throw std::invalid_argument("pyramid_analysis: cutoffs must lie in (0, pi)");
        if (k > 0 && !(cutoffs[k] < cutoffs[k - 1]))
            throw std::invalid_argument("pyramid_analysis: cutoffs must be strictly decreasing");
    }

    PyramidSet out;
    out.cutoffs.assign(cutoffs.begin(), cutoffs.end());
    out.taps = taps;
    std::vector<double> input(x.begin(), x.end());
    for (double cutoff : cutoffs) {
        const std::vector<double> h = design_lowpass(cutoff, taps);
        PyramidStage stage;
        stage.lowpass = filter_circular(input, h);
        stage.highpass.resize(input.size());
        for (std::size_t n = 0; n < input.size(); ++n) stage.highpass[n] = input[n] - stage.lowpass[n];
        input = stage.lowpass;
        out.stages.push_back(std::move(stage));
    }
    return out;
}

Signal pyramid_synthesis(const PyramidSet& p, const std::vector<std::vector<double>>& highs)
{
    if (p.stages.empty()) throw std::invalid_argument("pyramid_synthesis: empty pyramid");
    if (highs.size() != p.stages.size())
        throw std::invalid_argument("pyramid_synthesis: expected " + std::to_string(p.stages.size()) +
                                    " high bands, got " + std::to_string(highs.size()));
    std::vector<double> acc = p.deepest_lowpass();
    for (std::size_t k = highs.size(); k-- > 0;) {
        if (highs[k].size() != acc.size())
            throw std::invalid_argument("pyramid_synthesis: high band length mismatch");
        for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += highs[k][n];
    }
    return Signal(std::move(acc));
}

} // namespace pesl1
