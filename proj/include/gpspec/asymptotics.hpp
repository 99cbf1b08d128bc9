#pragma once

// Asymptotic predictions for the mode-n zero and remainder-fitting utilities
// that measure how fast computed zeros approach them.

#include <vector>

#include "gpspec/charfunc.hpp"
#include "gpspec/kernel.hpp"

namespace gpspec {

// The leading correction constant comes in two candidate normalizations, the
// stated one (c_r) and half of it; which one the data favors is a question
// the verification harness answers empirically.
enum class ConstantVariant { as_stated, half };
enum class PredictionBranch { r_less_1, r_equal_1 };

struct Prediction {
    int n = 0;
    PredictionBranch branch = PredictionBranch::r_less_1;
    ConstantVariant variant = ConstantVariant::as_stated;
    Complex leading{};      // i n
    Complex correction{};   // A e^{-i(r+1)pi/2} n^{1-r}, or -log(n)/(2 beta) at r = 1
    Complex predicted_z{};  // leading + correction
};

Prediction predict(const KernelParams& p, int n,
                   ConstantVariant variant = ConstantVariant::as_stated);

struct FitReport {
    ConstantVariant variant = ConstantVariant::as_stated;
    std::vector<int> n;                // ascending
    std::vector<double> deviation;     // |z_n - predicted_z(n)|

    // log|deviation| ~ intercept + slope * log n, fitted over the largest-n
    // half of the points. degenerate = true when deviations vanish or too few
    // points remain to fit.
    bool degenerate = false;
    double slope = 0.0;
    double intercept = 0.0;

    // Leading-constant measurement over the last decade [n_max/10, n_max]:
    // A_n = (z_n - i n) / (e^{-i(r+1)pi/2} n^(1-r)) for order < 1, and
    // A_n = Re z_n / (-log n / (2 beta)) at order 1.
    Complex constant{};            // mean A_n
    double constant_spread = 0.0;  // (max|A_n| - min|A_n|) / mean|A_n|
    double constant_ratio = 0.0;   // |mean A_n| / c_r (order < 1; else 0)
    ConstantVariant nearer = ConstantVariant::as_stated;  // closer of {c_r, c_r/2}

    // order = 1 drift diagnostics for q_n = Re z_n + log(n)/(2 beta):
    double r1_max_abs_q = 0.0;
    double r1_first_drift = 0.0;   // max - min of q_n over the first decade
    double r1_last_drift = 0.0;    // same over the last decade
};

// Requires at least 8 points spanning a decade (n_max >= 10 n_min).
FitReport fit_remainder(const std::vector<SpectrumPoint>& points,
                        const KernelParams& p, ConstantVariant variant);

} // namespace gpspec
