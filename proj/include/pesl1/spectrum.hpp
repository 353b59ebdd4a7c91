#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pesl1/signal.hpp"

namespace pesl1 {

/// |X[k]| for k = 0..N/2 of the length-N DFT; bin k sits at omega = 2 pi k / N.
/// Requires N >= 16.
std::vector<double> magnitude_spectrum(const Signal& x);

struct BandwidthOptions {
    double alpha = 3.0;            // how far above the noise floor counts as signal
    std::size_t smooth_window = 9; // odd, centred moving average
    std::size_t max_levels = 6;
};

struct BandwidthEstimate {
    double omega0 = 0.0;      // radians/sample
    double noise_floor = 0.0; // in the units of the magnitude spectrum
    std::size_t levels = 1;
    bool degenerate = false;  // no usable band edge: pure noise or a wideband signal
};

/// Centred moving average with reflected (mirror, edge not repeated) ends.
std::vector<double> smooth_spectrum(std::span<const double> mag, std::size_t window);

/// Locates the band edge of a magnitude spectrum.
///
/// The noise floor is the median of the smoothed magnitudes over the top
/// quarter of the bins. omega0 is the frequency of the last bin whose
/// smoothed magnitude exceeds alpha * floor, so every higher bin stays at or
/// below it. levels is the largest L <= max_levels with pi / 2^L > omega0.
/// When no bin rises above the floor, omega0 is the first nonzero bin,
/// levels = max_levels and the estimate is flagged degenerate; when even
/// L = 1 violates the rule, levels = 1 and the estimate is flagged too.
BandwidthEstimate estimate_bandwidth(std::span<const double> mag, std::size_t signal_length,
                                     const BandwidthOptions& opts = {});

/// Largest L with pi / 2^L > omega0, or 0 if none.
std::size_t levels_for_bandwidth(double omega0);

} // namespace pesl1
