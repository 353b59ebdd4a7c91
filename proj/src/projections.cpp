#include "pesl1/projections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pesl1 {

namespace {

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Magnitudes sorted in decreasing order. Sums are always taken over this
// list so results do not depend on the order of w.
std::vector<double> sorted_magnitudes(std::span<const double> w)
{
    std::vector<double> mu(w.size());
    std::transform(w.begin(), w.end(), mu.begin(), [](double x) { return std::abs(x); });
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return mu;
}

// Sum of a decreasing list, accumulated smallest first.
double sum_ascending(const std::vector<double>& mu)
{
    double s = 0.0;
    for (auto it = mu.rbegin(); it != mu.rend(); ++it) s += *it;
    return s;
}

} // namespace

std::vector<double> soft_threshold(std::span<const double> w, double theta)
{
    if (!(theta >= 0.0)) throw std::invalid_argument("soft_threshold: theta must be nonnegative");
    std::vector<double> out(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        const double mag = std::abs(w[n]) - theta;
        out[n] = mag > 0.0 ? sign(w[n]) * mag : 0.0;
    }
    return out;
}

double l1_ball_max_size(std::span<const double> w)
{
    return sum_ascending(sorted_magnitudes(w));
}

BallProjection project_l1_ball(std::span<const double> w, double d)
{
    if (!(d >= 0.0)) throw std::invalid_argument("project_l1_ball: ball size must be nonnegative");

    const std::vector<double> mu = sorted_magnitudes(w);
    if (sum_ascending(mu) <= d) {
        return BallProjection{std::vector<double>(w.begin(), w.end()), 0.0, d, w.size()};
    }
    if (d == 0.0) {
        return BallProjection{std::vector<double>(w.size(), 0.0), mu.front(), 0.0, 0};
    }

    std::size_t rho = 0;
    double rho_sum = 0.0;
    double running = 0.0;
    for (std::size_t j = 1; j <= mu.size(); ++j) {
        running += mu[j - 1];
        if (mu[j - 1] - (running - d) / static_cast<double>(j) > 0.0) {
            rho = j;
            rho_sum = running;
        }
    }
    const double theta = std::max(0.0, (rho_sum - d) / static_cast<double>(rho));
    return BallProjection{soft_threshold(w, theta), theta, d, rho};
}

EpigraphProjection project_epigraph_l1(std::span<const double> w, HyperplaneNorm norm)
{
    const std::vector<double> mu = sorted_magnitudes(w);
    const auto nonzero = static_cast<std::size_t>(
        std::count_if(mu.begin(), mu.end(), [](double m) { return m > 0.0; }));
    if (nonzero == 0)
        throw std::invalid_argument("project_epigraph_l1: the boundary hyperplane of an all-zero vector is undefined");

    const double normal_sq = norm == HyperplaneNorm::KPlusOne ? static_cast<double>(w.size()) + 1.0
                                                            : static_cast<double>(nonzero) + 1.0;
    const double shift = sum_ascending(mu) / normal_sq;

    EpigraphProjection out;
    out.w_p.resize(w.size());
    bool consistent = true;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const double s = sign(w[n]);
        out.w_p[n] = w[n] - shift * s;
        if (s != 0.0 && sign(out.w_p[n]) != s && std::abs(out.w_p[n]) > 1e-12) consistent = false;
    }

    // sign(w[n]) * w_p[n] = |w[n]| - shift on the nonzero entries.
    double d = 0.0;
    for (std::size_t j = nonzero; j-- > 0;) d += mu[j] - shift;
    out.d = d;

    if (consistent) {
        out.z_p = shift;
        out.theta = shift;
        out.fast_path = true;
        return out;
    }

    BallProjection ball = project_l1_ball(w, d);
    out.w_p = std::move(ball.w_p);
    out.z_p = l1_ball_max_size(out.w_p);
    out.theta = ball.theta;
    out.fast_path = false;
    return out;
}

LiftedPoint exact_epigraph_projection(std::span<const double> w)
{
    const std::vector<double> mu = sorted_magnitudes(w);
    if (mu.empty() || mu.front() == 0.0) return LiftedPoint{std::vector<double>(w.size(), 0.0), 0.0};

    // f(t) = sum_n max(|w[n]| - t, 0) - t is continuous and strictly decreasing.
    auto excess = [&mu](double t) {
        double s = 0.0;
        for (auto it = mu.rbegin(); it != mu.rend(); ++it) s += std::max(*it - t, 0.0);
        return s - t;
    };
    double lo = 0.0, hi = mu.front();
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return LiftedPoint{soft_threshold(w, t), t};
}

double epigraph_projection_gap(std::span<const double> w, HyperplaneNorm norm)
{
    const EpigraphProjection two_step = project_epigraph_l1(w, norm);
    const LiftedPoint exact = exact_epigraph_projection(w);
    double sq = (two_step.z_p - exact.z) * (two_step.z_p - exact.z);
    for (std::size_t n = 0; n < w.size(); ++n) {
        const double e = two_step.w_p[n] - exact.w[n];
        sq += e * e;
    }
    return std::sqrt(sq);
}

} // namespace pesl1
