#pragma once

// Numerical verification experiments: each one turns an analytic estimate
// into a measured grid statistic and a pass/fail verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpspec/asymptotics.hpp"
#include "gpspec/charfunc.hpp"
#include "gpspec/kernel.hpp"
#include "gpspec/oracle.hpp"

namespace gpspec {

struct GridPoint {
    double ray = 0.0;   // arg z
    double rho = 0.0;   // |z|
    double q = 0.0;     // normalized quantity measured at this point
};

struct RayStat {
    double ray = 0.0;
    double reference = 0.0;  // q at the smallest rho on this ray
    double max_q = 0.0;
    double ratio = 0.0;      // max_q / max(reference, tiny)
};

struct VerifyOptions {
    SectorSpec sector{};         // delta and the radial range of the grid
    double cap = 10.0;           // allowed growth of q along each ray
    int points_per_decade = 4;   // radial grid resolution
    double kernel_tol = 1e-12;
};

struct BoundCheckReport {
    std::string experiment_id;
    double alpha = 0.0, beta = 0.0;
    double delta = kDefaultDelta;
    double cap = 10.0;
    std::vector<double> rays;      // grid description
    std::vector<double> moduli;
    std::vector<GridPoint> rows;   // per-point details, sorted by (ray, rho)
    std::vector<RayStat> per_ray;
    double statistic = 0.0;   // max q over the grid
    double reference = 0.0;   // reference of the worst ray
    double ratio = 0.0;       // worst per-ray ratio
    bool passed = false;

    // sector-comparability extras
    std::uint64_t seed = 0;
    int samples = 0;
    int violations = 0;
};

// q = rho |K(z) - h(z)|: stays bounded along rays iff the series-integral
// gap is O(1/|z|).
BoundCheckReport check_series_vs_integral(const KernelParams& p,
                                          const VerifyOptions& opt = {});

// q = rho |K(z) - asymptotic_K(z)|: the gap behind the leading term is
// O(1/|z|) on both order branches.
BoundCheckReport check_K_asymptotic(const KernelParams& p,
                                    const VerifyOptions& opt = {});

// q = rho^r |z K'(z)| for order < 1, q = rho/log(rho) |z K'(z)| at order 1:
// the derivative decays one power faster.
BoundCheckReport check_zKprime(const KernelParams& p,
                               const VerifyOptions& opt = {});

// Random (z, x) samples of the two-sided comparability of |z + x^beta|^2 with
// |z|^2 + x^(2 beta) on the sector: (1 - cos delta)(...) <= |z + x^b|^2 <= 2(...).
// statistic = worst margin (negative means a violation).
BoundCheckReport check_sector_comparability(double delta, int samples,
                                            std::uint64_t seed = 12345);

struct SpotCheck {
    int n = 0;
    Rectangle rect{};
    int count = 0;
    bool ok = false;
};

struct TheoremReport {
    double alpha = 0.0, beta = 0.0;
    int n_min = 0, n_max = 0;
    int solved = 0;
    std::vector<RangeFailure> failures;

    FitReport fit_as_stated;
    FitReport fit_half;
    double slope_cap = 0.0;
    bool slope_pass = false;

    // Leading-constant stabilization: decades [lo, hi] are tried upward until
    // the last-decade spread of |A_n| drops under 10%.
    int const_decade_lo = 0, const_decade_hi = 0;
    double const_spread = 0.0;
    double const_ratio = 0.0;
    ConstantVariant nearer = ConstantVariant::as_stated;
    bool const_pass = false;

    // order = 1 verdict data
    bool order_one = false;
    double r1_max_abs_q = 0.0;
    double r1_first_drift = 0.0, r1_last_drift = 0.0;

    std::vector<SpotCheck> spots;
    bool spots_pass = false;

    bool passed = false;
};

// Solve the range, fit both constant variants, walk decades until the leading
// constant stabilizes, and certify a few zeros against the winding oracle.
TheoremReport check_theorem(const KernelParams& p, int n_min, int n_max,
                            int threads = 0, double kernel_tol = 1e-12);

} // namespace gpspec
