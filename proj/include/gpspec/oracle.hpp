#pragma once

// Independent cross-checks for the main evaluators. Nothing here shares code
// with eval_K or the contraction solver: the series is summed naively and
// zeros are found by the argument principle on rectangles, so agreement
// between the two sides is meaningful evidence.

#include <complex>
#include <cstdint>

#include "gpspec/charfunc.hpp"
#include "gpspec/kernel.hpp"

namespace gpspec {

// Plain left-to-right partial sum of the series with `terms` explicit terms
// plus an integral tail estimate (estimate, not certified bound).
Complex brute_K(const KernelParams& p, Complex z, std::int64_t terms);

struct Rectangle {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;

    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
};

struct WindingOptions {
    int initial_samples_per_side = 8;
    int max_depth = 48;                 // per-segment bisection depth cap
    double min_boundary_scale = 1e-9;   // |D_n| floor, scaled by 1 + |z/n|^2
    std::int64_t series_terms = 4096;   // minimum brute-force terms per evaluation
};

// Number of zeros of D_n inside the rectangle, by summing phase increments of
// D_n around the boundary; segments are bisected until each increment is
// below pi/2. The rectangle must not contain or graze a pole -k^beta.
int count_zeros(const ModeProblem& prob, const Rectangle& rect,
                const WindingOptions& opt = {});

// Bisect a rectangle known to contain exactly one zero until its longest side
// drops below tol; returns the center. Splits are jittered away from the
// midpoint when a cut line lands on top of the zero.
Complex locate_zero(const ModeProblem& prob, const Rectangle& rect, double tol,
                    const WindingOptions& opt = {});

} // namespace gpspec
