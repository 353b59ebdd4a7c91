#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pesl1/signal.hpp"
#include "pesl1/spectrum.hpp"

namespace pesl1 {

enum class Method { PesL1Wavelet, PesL1Pyramid, Universal, ThreeSigma };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();

struct DenoiseConfig {
    Method method = Method::PesL1Wavelet;
    std::string bank = "daub4";        // shipped bank name or tap-file path
    std::optional<std::size_t> levels; // unset: chosen from the spectrum
    double gamma = 1.0;                // universal-threshold multiplier
    std::size_t pyramid_taps = 129;
    bool strict_paper = false;         // hyperplane normal always K + 1
    BandwidthOptions bandwidth;
};

/// Throws std::invalid_argument on an unusable configuration.
void validate(const DenoiseConfig& cfg);

/// Robust noise scale of a detail band: median(|w|) / 0.6745. Needs >= 8 samples.
double estimate_sigma(std::span<const double> finest_detail);

using SigmaEstimator = std::function<double(std::span<const double>)>;

/// gamma * sigma * sqrt(2 ln(N) / N), sigma in signal units.
double universal_threshold(double sigma, std::size_t n, double gamma);

/// What happened to one detail / high band.
struct BandReport {
    std::size_t length = 0;
    double d_max = 0.0;      // l1 norm of the band before thresholding
    double d = 0.0;          // ball size after thresholding
    double theta = 0.0;      // threshold actually applied
    bool fast_path = false;  // PES only
    bool skipped = false;    // identically zero band, passed through
};

struct DenoiseResult {
    Signal output;
    std::size_t levels = 0;
    std::vector<BandReport> bands; // finest first
};

/// Number of decomposition levels cfg asks for on x.
std::size_t resolve_levels(const Signal& x, const DenoiseConfig& cfg);

DenoiseResult pes_l1_wavelet(const Signal& x, const DenoiseConfig& cfg);
DenoiseResult pes_l1_pyramid(const Signal& x, const DenoiseConfig& cfg);
DenoiseResult baseline_universal(const Signal& x, const DenoiseConfig& cfg,
                                 const SigmaEstimator& sigma = estimate_sigma);
DenoiseResult baseline_three_sigma(const Signal& x, const DenoiseConfig& cfg,
                                   const SigmaEstimator& sigma = estimate_sigma);

/// Dispatches on cfg.method. The PES methods never call `sigma`.
DenoiseResult denoise_detailed(const Signal& x, const DenoiseConfig& cfg,
                               const SigmaEstimator& sigma = estimate_sigma);
Signal denoise(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma = estimate_sigma);

} // namespace pesl1
