#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pesl1/signal.hpp"

namespace pesl1 {

/// Hamming-windowed sinc low-pass with `taps` (odd) coefficients and cutoff
/// in radians/sample, normalised to unit DC gain. Symmetric about its centre.
std::vector<double> design_lowpass(double cutoff, std::size_t taps);

/// Zero-phase circular filtering: y[n] = sum_m h[m] x[(n - m + c) mod N],
/// c = (taps - 1) / 2.
std::vector<double> filter_circular(std::span<const double> x, std::span<const double> h);

struct PyramidStage {
    std::vector<double> lowpass;  // x_lp
    std::vector<double> highpass; // x_hp = stage input - x_lp
};

struct PyramidSet {
    std::vector<PyramidStage> stages; // stage k filters the lowpass of stage k-1
    std::vector<double> cutoffs;
    std::size_t taps = 0;

    const std::vector<double>& deepest_lowpass() const { return stages.back().lowpass; }
};

/// Cutoffs pi/2, pi/4, ..., pi/2^levels.
std::vector<double> dyadic_cutoffs(std::size_t levels);

/// Cutoffs must be strictly decreasing inside (0, pi); taps must be odd.
PyramidSet pyramid_analysis(const Signal& x, std::span<const double> cutoffs, std::size_t taps = 129);

/// Deepest lowpass plus the given high bands, added from the deepest stage up.
Signal pyramid_synthesis(const PyramidSet& p, const std::vector<std::vector<double>>& highs);

} // namespace pesl1
