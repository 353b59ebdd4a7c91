#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pesl1/signal.hpp"

namespace pesl1 {

// Donoho-Johnstone style test signals. Bumps and Doppler stand in for the
// unnamed "Signal 1"/"Signal 2" rows of the benchmark table.
enum class TestSignal { Blocks, Bumps, HeavySine, Doppler, PieceRegular, Cusp };

std::string_view to_string(TestSignal s) noexcept;
TestSignal parse_test_signal(std::string_view name);
const std::vector<TestSignal>& all_test_signals();

/// Closed-form construction sampled at t = i/n, i = 0..n-1. Requires n >= 16.
Signal generate_test_signal(TestSignal name, std::size_t n);

struct NoiseSpec {
    double amplitude_fraction = 0.1; // noise std as a fraction of the peak amplitude
    std::uint64_t seed = 0;
};

/// Peak amplitude used to calibrate noise: max v[n] when positive, else max |v[n]|.
double peak_amplitude(const Signal& v) noexcept;

/// Standard deviation of the noise add_gaussian_noise would inject.
double noise_sigma(const Signal& v, const NoiseSpec& spec);

/// Standard normal deviates from Marsaglia's polar method driven by
/// mt19937_64. Uniforms are built from the top 53 bits of each draw, so the
/// stream depends only on the seed.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
    double operator()();

private:
    double uniform_pm1();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// x[n] = v[n] + sigma * xi[n] with xi i.i.d. N(0, 1) drawn from spec.seed.
Signal add_gaussian_noise(const Signal& v, const NoiseSpec& spec);

/// 20 log10(|reference| / |reference - estimate|); +infinity on an exact match.
double snr_db(const Signal& reference, const Signal& estimate);

// Single-column CSV: one sample per line, shortest round-trip decimal form.
std::string to_csv(const Signal& s);
Signal parse_signal_csv(std::string_view text);
void write_signal_csv(const std::filesystem::path& path, const Signal& s);
Signal read_signal_csv(const std::filesystem::path& path);

} // namespace pesl1
