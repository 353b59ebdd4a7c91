#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pesl1 {

/// sign(w[n]) * max(|w[n]| - theta, 0), elementwise. theta must be >= 0.
std::vector<double> soft_threshold(std::span<const double> w, double theta);

/// Largest useful l1-ball size for w, i.e. sum_n sign(w[n]) w[n] = |w|_1.
double l1_ball_max_size(std::span<const double> w);

struct BallProjection {
    std::vector<double> w_p;
    double theta = 0.0;  // soft threshold that realises the projection
    double d = 0.0;      // ball size
    std::size_t rho = 0; // number of magnitudes that survive the threshold
};

/// Euclidean projection of w onto {u : |u|_1 <= d}.
///
/// Sorts the magnitudes in decreasing order mu_1 >= ... >= mu_K, takes
/// rho as the largest j with mu_j > (sum_{r<=j} mu_r - d) / j and returns
/// soft_threshold(w, theta) with theta = (sum_{r<=rho} mu_r - d) / rho.
/// Points already inside the ball come back unchanged with theta = 0 and
/// rho = K. O(K log K).
BallProjection project_l1_ball(std::span<const double> w, double d);

/// Squared length of the boundary hyperplane normal (sign(w), -1).
enum class HyperplaneNorm {
    NonzeroCount, // (#nonzero entries of w) + 1: exact orthogonal projection
    KPlusOne,     // K + 1 regardless of zero entries
};

struct EpigraphProjection {
    std::vector<double> w_p;
    double z_p = 0.0;        // epigraph height of the returned point
    double d = 0.0;          // ball size read off the boundary hyperplane
    double theta = 0.0;      // equivalent soft threshold
    bool fast_path = false;  // true when the hyperplane projection kept every sign
};

/// Projection of (w, 0) onto the epigraph {(u, z) : |u|_1 <= z}.
///
/// Step 1 projects the lifted point onto the boundary hyperplane
/// sum_n sign(w[n]) u[n] - z = 0, which yields the ball size
/// d = sum_n sign(w[n]) u[n]. If no nonzero entry changed sign the
/// hyperplane point is returned as is; otherwise w is projected onto the
/// l1 ball of size d and z_p is reported as the l1 norm of the result.
/// Throws std::invalid_argument for an all-zero w.
EpigraphProjection project_epigraph_l1(std::span<const double> w,
                                       HyperplaneNorm norm = HyperplaneNorm::NonzeroCount);

// Diagnostics

struct LiftedPoint {
    std::vector<double> w;
    double z = 0.0;
};

/// Exact Euclidean projection of (w, 0) onto the epigraph of the l1 norm.
/// The optimum is (soft_threshold(w, t), t) with t the unique root of
/// |soft_threshold(w, t)|_1 = t, found by bisection.
LiftedPoint exact_epigraph_projection(std::span<const double> w);

/// Euclidean distance in R^{K+1} between the two-step projection and the
/// exact one. Zero (up to rounding) whenever the fast path applies.
double epigraph_projection_gap(std::span<const double> w,
                               HyperplaneNorm norm = HyperplaneNorm::NonzeroCount);

} // namespace pesl1
