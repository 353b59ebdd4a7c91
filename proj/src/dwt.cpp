#include "pesl1/dwt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pesl1 {

namespace {

void check_bank(const FilterBank& bank)
{
    if (bank.analysis_lowpass.empty() || bank.analysis_highpass.empty() ||
        bank.synthesis_lowpass.empty() || bank.synthesis_highpass.empty())
        throw std::invalid_argument("filter bank '" + bank.name + "' has an empty filter");
}

// One analysis step on a periodic sequence of even length.
void analyze(const std::vector<double>& x, const FilterBank& bank, std::vector<double>& lo,
             std::vector<double>& hi)
{
    const std::size_t m = x.size();
    const std::size_t half = m / 2;
    lo.assign(half, 0.0);
    hi.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0;
        for (std::size_t j = 0; j < bank.analysis_lowpass.size(); ++j)
            a += bank.analysis_lowpass[j] * x[(2 * k + j) % m];
        double d = 0.0;
        for (std::size_t j = 0; j < bank.analysis_highpass.size(); ++j)
            d += bank.analysis_highpass[j] * x[(2 * k + j) % m];
        lo[k] = a;
        hi[k] = d;
    }
}

void scatter(const std::vector<double>& coeffs, const std::vector<double>& taps,
             std::vector<double>& y)
{
    const std::size_t m = y.size();
    const std::size_t len = taps.size();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double c = coeffs[k];
        for (std::size_t j = 0; j < len; ++j) y[(2 * k + len - 1 - j) % m] += c * taps[j];
    }
}

std::vector<double> synthesize(const std::vector<double>& lo, const std::vector<double>& hi,
                               const FilterBank& bank)
{
    std::vector<double> y(2 * lo.size(), 0.0);
    scatter(lo, bank.synthesis_lowpass, y);
    scatter(hi, bank.synthesis_highpass, y);
    return y;
}

} // namespace

std::size_t max_dwt_levels(std::size_t n) noexcept
{
    std::size_t levels = 0;
    while (n > 1 && n % 2 == 0) {
        n /= 2;
        ++levels;
    }
    return levels;
}

SubbandSet dwt_analysis(const Signal& x, const FilterBank& bank, std::size_t levels)
{
    check_bank(bank);
    const std::size_t n = x.size();
    if (levels < 1) throw std::invalid_argument("dwt_analysis: need at least one level");
    if (levels > max_dwt_levels(n))
        throw std::invalid_argument("dwt_analysis: " + std::to_string(levels) +
                                    " levels do not fit a signal of length " + std::to_string(n));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> approx(x.begin(), x.end());
    for (double& v : approx) v *= scale;

    SubbandSet out;
    out.original_length = n;
    out.details.reserve(levels);
    std::vector<double> lo, hi;
    for (std::size_t level = 0; level < levels; ++level) {
        analyze(approx, bank, lo, hi);
        out.details.push_back(std::move(hi));
        approx = std::move(lo);
    }
    out.lowband = std::move(approx);
    return out;
}

Signal dwt_synthesis(const SubbandSet& bands, const FilterBank& bank)
{
    check_bank(bank);
    const std::size_t n = bands.original_length;
    const std::size_t levels = bands.levels();
    if (levels < 1 || levels > max_dwt_levels(n))
        throw std::invalid_argument("dwt_synthesis: band count does not match the original length");
    for (std::size_t k = 0; k < levels; ++k) {
        if (bands.details[k].size() != (n >> (k + 1)))
            throw std::invalid_argument("dwt_synthesis: detail band " + std::to_string(k + 1) +
                                        " has the wrong length");
    }
    if (bands.lowband.size() != (n >> levels))
        throw std::invalid_argument("dwt_synthesis: lowband has the wrong length");

    std::vector<double> approx = bands.lowband;
    for (std::size_t k = levels; k-- > 0;) approx = synthesize(approx, bands.details[k], bank);

    const double scale = std::sqrt(static_cast<double>(n));
    for (double& v : approx) v *= scale;
    return Signal(std::move(approx));
}

} // namespace pesl1
