#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pesl1 {

/// Two-channel filter bank.
///
/// Analysis correlates: lo[k] = sum_j analysis_lowpass[j] * x[2k + j].
/// Synthesis scatters each coefficient through the reversed synthesis
/// filter, so an orthogonal bank is the one whose synthesis taps are the
/// time-reversed analysis taps.
struct FilterBank {
    std::string name;
    std::vector<double> analysis_lowpass;
    std::vector<double> analysis_highpass;
    std::vector<double> synthesis_lowpass;
    std::vector<double> synthesis_highpass;

    std::size_t max_length() const noexcept;
    bool is_orthogonal(double tol = 1e-12) const noexcept;

    static FilterBank haar();
    static FilterBank daubechies4();
    /// Near-symmetric orthogonal 10-tap pair (Farras/Abdelnour).
    static FilterBank farras();
};

/// Names accepted by filter_bank_by_name: "haar", "daub4", "farras".
const std::vector<std::string>& shipped_bank_names();
FilterBank filter_bank_by_name(std::string_view name);

/// Tap file: one coefficient per line, four blank-line separated sections in
/// the order analysis-low, analysis-high, synthesis-low, synthesis-high.
/// Lines starting with '#' are ignored.
FilterBank parse_filter_bank(std::string_view text, std::string name);
FilterBank load_filter_bank(const std::filesystem::path& path);

/// A shipped bank name, or else a path to a tap file.
FilterBank resolve_filter_bank(std::string_view name_or_path);

} // namespace pesl1
