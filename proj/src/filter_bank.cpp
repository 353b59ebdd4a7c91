#include "pesl1/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_io.hpp"

namespace pesl1 {

namespace {

// g[n] = (-1)^n h[L-1-n]
std::vector<double> alternating_flip(const std::vector<double>& h)
{
    const std::size_t len = h.size();
    std::vector<double> g(len);
    for (std::size_t n = 0; n < len; ++n) g[n] = (n % 2 == 0 ? 1.0 : -1.0) * h[len - 1 - n];
    return g;
}

std::vector<double> reversed(std::vector<double> h)
{
    std::reverse(h.begin(), h.end());
    return h;
}

FilterBank orthogonal_bank(std::string name, std::vector<double> lowpass)
{
    std::vector<double> highpass = alternating_flip(lowpass);
    FilterBank bank{std::move(name), lowpass, highpass, reversed(lowpass), reversed(highpass)};
    return bank;
}

} // namespace

std::size_t FilterBank::max_length() const noexcept
{
    return std::max({analysis_lowpass.size(), analysis_highpass.size(), synthesis_lowpass.size(),
                     synthesis_highpass.size()});
}

bool FilterBank::is_orthogonal(double tol) const noexcept
{
    auto same = [tol](const std::vector<double>& a, const std::vector<double>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > tol) return false;
        return true;
    };
    return same(synthesis_lowpass, reversed(analysis_lowpass)) &&
           same(synthesis_highpass, reversed(analysis_highpass));
}

FilterBank FilterBank::haar()
{
    const double r = 1.0 / std::sqrt(2.0);
    return orthogonal_bank("haar", {r, r});
}

FilterBank FilterBank::daubechies4()
{
    const double s3 = std::sqrt(3.0);
    const double k = 1.0 / (4.0 * std::sqrt(2.0));
    return orthogonal_bank("daub4", {(1 + s3) * k, (3 + s3) * k, (3 - s3) * k, (1 - s3) * k});
}

FilterBank FilterBank::farras()
{
    constexpr double a = 0.08838834764832;
    constexpr double b = 0.69587998903400;
    constexpr double c = 0.01122679215254;
    FilterBank bank;
    bank.name = "farras";
    bank.analysis_lowpass = {0, -a, a, b, b, a, -a, c, c, 0};
    bank.analysis_highpass = {0, -c, c, a, a, -b, b, -a, -a, 0};
    bank.synthesis_lowpass = reversed(bank.analysis_lowpass);
    bank.synthesis_highpass = reversed(bank.analysis_highpass);
    return bank;
}

const std::vector<std::string>& shipped_bank_names()
{
    static const std::vector<std::string> names = {"haar", "daub4", "farras"};
    return names;
}

FilterBank filter_bank_by_name(std::string_view name)
{
    if (name == "haar") return FilterBank::haar();
    if (name == "daub4") return FilterBank::daubechies4();
    if (name == "farras") return FilterBank::farras();
    throw std::invalid_argument("unknown filter bank '" + std::string(name) + "'");
}

FilterBank parse_filter_bank(std::string_view text, std::string name)
{
    std::vector<std::vector<double>> sections(1);
    for (auto raw : detail::split_lines(text)) {
        const auto line = detail::trim(raw);
        if (!line.empty() && line.front() == '#') continue;
        if (line.empty()) {
            if (!sections.back().empty()) sections.emplace_back();
            continue;
        }
        sections.back().push_back(detail::parse_double(line));
    }
    if (sections.back().empty()) sections.pop_back();
    if (sections.size() != 4)
        throw std::invalid_argument("tap file must contain exactly four sections, found " +
                                    std::to_string(sections.size()));
    return FilterBank{std::move(name), sections[0], sections[1], sections[2], sections[3]};
}

FilterBank load_filter_bank(const std::filesystem::path& path)
{
    try {
        return parse_filter_bank(detail::read_file(path), path.stem().string());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

FilterBank resolve_filter_bank(std::string_view name_or_path)
{
    const auto& names = shipped_bank_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end())
        return filter_bank_by_name(name_or_path);
    const std::filesystem::path path{std::string(name_or_path)};
    if (std::filesystem::exists(path)) return load_filter_bank(path);
    throw std::invalid_argument("unknown filter bank '" + std::string(name_or_path) +
                                "' (not a shipped name or an existing tap file)");
}

} // namespace pesl1
