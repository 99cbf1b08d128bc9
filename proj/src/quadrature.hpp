#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gpspec::detail {

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;   // summed per-segment error estimates
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 over [breakpoints.front(), breakpoints.back()],
// seeded with one segment per consecutive breakpoint pair. The segment with
// the worst error estimate is split until the total drops below abs_tol.
// Fully deterministic: ties in the worst-segment choice resolve to the
// earliest segment, and the final sum runs left to right.
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     const std::vector<double>& breakpoints, double abs_tol,
                     int max_segments = 2000);

} // namespace gpspec::detail
