#include "pesl1/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pesl1/dwt.hpp"
#include "pesl1/filter_bank.hpp"
#include "pesl1/projections.hpp"
#include "pesl1/pyramid.hpp"

namespace pesl1 {

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::PesL1Wavelet: return "pes-l1-wavelet";
    case Method::PesL1Pyramid: return "pes-l1-pyramid";
    case Method::Universal: return "universal";
    case Method::ThreeSigma: return "three-sigma";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : all_methods()) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods()
{
    static const std::vector<Method> all = {Method::PesL1Pyramid, Method::PesL1Wavelet,
                                            Method::Universal, Method::ThreeSigma};
    return all;
}

void validate(const DenoiseConfig& cfg)
{
    if (cfg.levels && *cfg.levels < 1) throw std::invalid_argument("levels must be at least 1");
    if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw std::invalid_argument("gamma must be finite and nonnegative");
    if (cfg.pyramid_taps == 0 || cfg.pyramid_taps % 2 == 0)
        throw std::invalid_argument("pyramid taps must be a positive odd integer");
    if (!(cfg.bandwidth.alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
    if (cfg.bandwidth.smooth_window == 0 || cfg.bandwidth.smooth_window % 2 == 0)
        throw std::invalid_argument("smoothing window must be a positive odd integer");
    if (cfg.bandwidth.max_levels < 1) throw std::invalid_argument("max levels must be at least 1");
}

double estimate_sigma(std::span<const double> finest_detail)
{
    if (finest_detail.size() < 8) throw std::invalid_argument("estimate_sigma: band needs at least 8 samples");
    std::vector<double> mag(finest_detail.size());
    std::transform(finest_detail.begin(), finest_detail.end(), mag.begin(),
                   [](double v) { return std::abs(v); });
    const std::size_t n = mag.size();
    const auto mid = mag.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(mag.begin(), mid, mag.end());
    double median = *mid;
    if (n % 2 == 0) median = 0.5 * (median + *std::max_element(mag.begin(), mid));
    return median / 0.6745;
}

double universal_threshold(double sigma, std::size_t n, double gamma)
{
    if (n < 2) throw std::invalid_argument("universal_threshold: need at least two samples");
    const double nd = static_cast<double>(n);
    return gamma * sigma * std::sqrt(2.0 * std::log(nd) / nd);
}

std::size_t resolve_levels(const Signal& x, const DenoiseConfig& cfg)
{
    validate(cfg);
    const bool wavelet = cfg.method != Method::PesL1Pyramid;
    if (cfg.levels) return *cfg.levels;
    std::size_t levels = estimate_bandwidth(magnitude_spectrum(x), x.size(), cfg.bandwidth).levels;
    if (wavelet) levels = std::min(levels, max_dwt_levels(x.size()));
    return levels;
}

namespace {

bool all_zero(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double s) { return s == 0.0; });
}

HyperplaneNorm norm_for(const DenoiseConfig& cfg)
{
    return cfg.strict_paper ? HyperplaneNorm::KPlusOne : HyperplaneNorm::NonzeroCount;
}

// Runs the epigraph projection on one band, in place.
BandReport project_band(std::vector<double>& band, HyperplaneNorm norm)
{
    BandReport r;
    r.length = band.size();
    r.d_max = l1_ball_max_size(band);
    if (all_zero(band)) {
        r.skipped = true;
        return r;
    }
    EpigraphProjection p = project_epigraph_l1(band, norm);
    r.d = p.d;
    r.theta = p.theta;
    r.fast_path = p.fast_path;
    band = std::move(p.w_p);
    return r;
}

BandReport threshold_band(std::vector<double>& band, double theta)
{
    BandReport r;
    r.length = band.size();
    r.d_max = l1_ball_max_size(band);
    r.theta = theta;
    band = soft_threshold(band, theta);
    r.d = l1_ball_max_size(band);
    return r;
}

double coefficient_sigma(const SubbandSet& bands, const SigmaEstimator& sigma)
{
    const double s = sigma(bands.details.front());
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::runtime_error("noise estimator returned an invalid value");
    return s;
}

DenoiseResult threshold_all(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma,
                            double (*threshold)(double coeff_sigma, std::size_t n, const DenoiseConfig&))
{
    const FilterBank bank = resolve_filter_bank(cfg.bank);
    const std::size_t levels = resolve_levels(x, cfg);
    SubbandSet bands = dwt_analysis(x, bank, levels);
    const double theta = threshold(coefficient_sigma(bands, sigma), x.size(), cfg);

    DenoiseResult out{x, levels, {}};
    for (auto& band : bands.details) out.bands.push_back(threshold_band(band, theta));
    out.output = dwt_synthesis(bands, bank);
    return out;
}

} // namespace

DenoiseResult pes_l1_wavelet(const Signal& x, const DenoiseConfig& cfg)
{
    const FilterBank bank = resolve_filter_bank(cfg.bank);
    const std::size_t levels = resolve_levels(x, cfg);
    SubbandSet bands = dwt_analysis(x, bank, levels);

    DenoiseResult out{x, levels, {}};
    for (auto& band : bands.details) out.bands.push_back(project_band(band, norm_for(cfg)));
    out.output = dwt_synthesis(bands, bank);
    return out;
}

DenoiseResult pes_l1_pyramid(const Signal& x, const DenoiseConfig& cfg)
{
    const std::size_t levels = resolve_levels(x, cfg);
    const PyramidSet pyramid = pyramid_analysis(x, dyadic_cutoffs(levels), cfg.pyramid_taps);

    DenoiseResult out{x, levels, {}};
    std::vector<std::vector<double>> highs;
    highs.reserve(pyramid.stages.size());
    for (const auto& stage : pyramid.stages) {
        highs.push_back(stage.highpass);
        out.bands.push_back(project_band(highs.back(), norm_for(cfg)));
    }
    out.output = pyramid_synthesis(pyramid, highs);
    return out;
}

DenoiseResult baseline_universal(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma)
{
    // Coefficients carry noise of std sigma / sqrt(N); the rule wants sigma itself.
    return threshold_all(x, cfg, sigma, [](double coeff_sigma, std::size_t n, const DenoiseConfig& c) {
        return universal_threshold(coeff_sigma * std::sqrt(static_cast<double>(n)), n, c.gamma);
    });
}

DenoiseResult baseline_three_sigma(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma)
{
    return threshold_all(x, cfg, sigma, [](double coeff_sigma, std::size_t, const DenoiseConfig&) {
        return 3.0 * coeff_sigma;
    });
}

DenoiseResult denoise_detailed(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma)
{
    switch (cfg.method) {
    case Method::PesL1Wavelet: return pes_l1_wavelet(x, cfg);
    case Method::PesL1Pyramid: return pes_l1_pyramid(x, cfg);
    case Method::Universal: return baseline_universal(x, cfg, sigma);
    case Method::ThreeSigma: return baseline_three_sigma(x, cfg, sigma);
    }
    throw std::invalid_argument("unknown denoising method");
}

Signal denoise(const Signal& x, const DenoiseConfig& cfg, const SigmaEstimator& sigma)
{
    return denoise_detailed(x, cfg, sigma).output;
}

} // namespace pesl1
