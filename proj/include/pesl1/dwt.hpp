#pragma once

#include <cstddef>
#include <vector>

#include "pesl1/filter_bank.hpp"
#include "pesl1/signal.hpp"

namespace pesl1 {

/// Output of an L-level dyadic analysis with periodic extension.
///
/// Coefficients live in the 1/sqrt(N) scaled coordinates: analysis divides
/// the input by sqrt(N) and synthesis multiplies it back, so an orthogonal
/// bank gives sum of squared coefficients = |x|^2 / N.
struct SubbandSet {
    std::vector<double> lowband;              // x_L, length N / 2^L
    std::vector<std::vector<double>> details; // w_1 (finest, N/2) ... w_L (coarsest)
    std::size_t original_length = 0;

    std::size_t levels() const noexcept { return details.size(); }
};

/// Largest L such that the DWT accepts (n, L): n must be divisible by 2^L.
std::size_t max_dwt_levels(std::size_t n) noexcept;

/// Throws std::invalid_argument unless levels >= 1 and 2^levels divides x.size().
SubbandSet dwt_analysis(const Signal& x, const FilterBank& bank, std::size_t levels);

Signal dwt_synthesis(const SubbandSet& bands, const FilterBank& bank);

} // namespace pesl1
