#include "pesl1/signals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "text_io.hpp"

namespace pesl1 {

Signal::Signal(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.empty()) throw std::invalid_argument("signal must have at least one sample");
    for (double v : samples_) {
        if (!std::isfinite(v)) throw std::invalid_argument("signal samples must be finite");
    }
}

namespace {

constexpr std::array<double, 11> kBumpPositions = {.1, .13, .15, .23, .25, .40, .44, .65, .76, .78, .81};

std::vector<double> blocks(std::size_t n)
{
    constexpr std::array<double, 11> heights = {4, -5, 3, -4, 5, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2};
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t j = 0; j < heights.size(); ++j) {
            if (t >= kBumpPositions[j]) v[i] += heights[j];
        }
    }
    return v;
}

std::vector<double> bumps(std::size_t n)
{
    constexpr std::array<double, 11> heights = {4, 5, 3, 4, 5, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2};
    constexpr std::array<double, 11> widths = {.005, .005, .006, .01, .01, .03, .01, .01, .005, .008, .005};
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t j = 0; j < heights.size(); ++j) {
            v[i] += heights[j] / std::pow(1.0 + std::abs((t - kBumpPositions[j]) / widths[j]), 4);
        }
    }
    return v;
}

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

std::vector<double> heavy_sine(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        v[i] = 4.0 * std::sin(4.0 * std::numbers::pi * t) - sign(t - 0.3) - sign(0.72 - t);
    }
    return v;
}

std::vector<double> doppler(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        v[i] = std::sqrt(t * (1.0 - t)) * std::sin(2.0 * std::numbers::pi * 1.05 / (t + 0.05));
    }
    return v;
}

// Peak-shaped cusp at t = 0.37.
std::vector<double> cusp(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        v[i] = 1.0 - std::sqrt(std::abs(t - 0.37));
    }
    return v;
}

// WaveLab's piece-regular construction, translated to 0-based indexing.
std::vector<double> piece_regular(std::size_t n)
{
    const std::size_t n2 = n / 2, n3 = n / 3, n5 = n / 5, n7 = n / 7, n12 = n / 12, n20 = n / 20;

    std::vector<double> bump = bumps(n);
    for (double& b : bump) b *= -15.0;

    std::vector<double> ramp(n12);
    for (std::size_t i = 0; i < n12; ++i)
        ramp[i] = -std::exp(4.0 * static_cast<double>(i + 1) / static_cast<double>(n12));

    std::vector<double> rise(n7);
    for (std::size_t i = 0; i < n7; ++i)
        rise[i] = std::exp(4.0 * static_cast<double>(i + 1) / static_cast<double>(n7)) - std::exp(4.0);

    std::vector<double> gauss(n3);
    constexpr double width = 6.0 / 40.0;
    for (std::size_t i = 0; i < n3; ++i) {
        const double t = static_cast<double>(i + 1) / static_cast<double>(n3) - 0.5;
        gauss[i] = -70.0 * std::exp(-(t * t) / (2.0 * width * width));
    }

    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n7; ++i) s[i] = gauss[i];
    for (std::size_t i = n7; i < n5; ++i) s[i] = 0.5 * gauss[i];
    for (std::size_t i = n5; i < n3; ++i) s[i] = gauss[i];
    for (std::size_t i = n3; i < n2; ++i) s[i] = bump[i];
    for (std::size_t i = 0; i < n12; ++i) {
        s[n2 + i] = ramp[i];
        s[n2 + 2 * n12 - 1 - i] = ramp[i];
    }
    const std::size_t plateau = n2 + 2 * n12 + n20;
    const std::size_t k = n2 + 2 * n12 + 3 * n20;
    for (std::size_t i = plateau; i < k; ++i) s[i] = -25.0;
    for (std::size_t i = 0; i < n7; ++i) s[k + i] = rise[i];
    const std::size_t tail = n - 5 * n5;
    for (std::size_t j = 0; j < tail; ++j) s[5 * n5 + j] = s[tail - 1 - j];

    double bias = 0.0;
    for (double x : s) bias += x;
    bias /= static_cast<double>(n);
    for (double& x : s) x = bias - x;
    return s;
}

} // namespace

std::string_view to_string(TestSignal s) noexcept
{
    switch (s) {
    case TestSignal::Blocks: return "blocks";
    case TestSignal::Bumps: return "bumps";
    case TestSignal::HeavySine: return "heavy-sine";
    case TestSignal::Doppler: return "doppler";
    case TestSignal::PieceRegular: return "piece-regular";
    case TestSignal::Cusp: return "cusp";
    }
    return "unknown";
}

TestSignal parse_test_signal(std::string_view name)
{
    for (TestSignal s : all_test_signals()) {
        if (to_string(s) == name) return s;
    }
    throw std::invalid_argument("unknown test signal '" + std::string(name) + "'");
}

const std::vector<TestSignal>& all_test_signals()
{
    static const std::vector<TestSignal> all = {TestSignal::Blocks, TestSignal::HeavySine,
                                                TestSignal::Doppler, TestSignal::Bumps,
                                                TestSignal::PieceRegular, TestSignal::Cusp};
    return all;
}

Signal generate_test_signal(TestSignal name, std::size_t n)
{
    if (n < 16) throw std::invalid_argument("test signals need at least 16 samples");
    switch (name) {
    case TestSignal::Blocks: return Signal(blocks(n));
    case TestSignal::Bumps: return Signal(bumps(n));
    case TestSignal::HeavySine: return Signal(heavy_sine(n));
    case TestSignal::Doppler: return Signal(doppler(n));
    case TestSignal::PieceRegular: return Signal(piece_regular(n));
    case TestSignal::Cusp: return Signal(cusp(n));
    }
    throw std::invalid_argument("unknown test signal");
}

double peak_amplitude(const Signal& v) noexcept
{
    const double top = *std::max_element(v.begin(), v.end());
    if (top > 0.0) return top;
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double noise_sigma(const Signal& v, const NoiseSpec& spec)
{
    if (!(spec.amplitude_fraction > 0.0 && spec.amplitude_fraction <= 1.0))
        throw std::invalid_argument("noise amplitude fraction must lie in (0, 1]");
    const double sigma = spec.amplitude_fraction * peak_amplitude(v);
    if (!(sigma > 0.0)) throw std::invalid_argument("cannot calibrate noise on an all-zero signal");
    return sigma;
}

double GaussianSource::uniform_pm1()
{
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

double GaussianSource::operator()()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
        u = uniform_pm1();
        v = uniform_pm1();
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Signal add_gaussian_noise(const Signal& v, const NoiseSpec& spec)
{
    const double sigma = noise_sigma(v, spec);
    GaussianSource gauss(spec.seed);
    std::vector<double> x(v.vector());
    for (double& s : x) s += sigma * gauss();
    return Signal(std::move(x));
}

double snr_db(const Signal& reference, const Signal& estimate)
{
    if (reference.size() != estimate.size())
        throw std::invalid_argument("snr_db: length mismatch");
    double ref = 0.0, err = 0.0;
    for (std::size_t n = 0; n < reference.size(); ++n) {
        ref += reference[n] * reference[n];
        const double e = reference[n] - estimate[n];
        err += e * e;
    }
    if (ref == 0.0) throw std::invalid_argument("snr_db: reference signal is all zeros");
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ref / err);
}

std::string to_csv(const Signal& s)
{
    std::string out;
    out.reserve(s.size() * 20);
    for (double v : s) {
        out += detail::shortest(v);
        out += '\n';
    }
    return out;
}

Signal parse_signal_csv(std::string_view text)
{
    std::vector<double> samples;
    for (auto line : detail::split_lines(text)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        samples.push_back(detail::parse_double(line));
    }
    return Signal(std::move(samples));
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s)
{
    detail::write_file(path, to_csv(s));
}

Signal read_signal_csv(const std::filesystem::path& path)
{
    try {
        return parse_signal_csv(detail::read_file(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

} // namespace pesl1
