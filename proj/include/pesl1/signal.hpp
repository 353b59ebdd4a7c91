#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pesl1 {

/// A finite, non-empty, real-valued discrete-time sequence.
///
/// Construction rejects empty input and non-finite samples, so every
/// Signal in circulation satisfies those invariants.
class Signal {
public:
    explicit Signal(std::vector<double> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t n) const noexcept { return samples_[n]; }

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& vector() const noexcept { return samples_; }

    auto begin() const noexcept { return samples_.begin(); }
    auto end() const noexcept { return samples_.end(); }

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    std::vector<double> samples_;
};

} // namespace pesl1
