#pragma once

// Characteristic function of mode n and the contraction-map solver for the
// zero near i n:
//
//   D_n(z) = z^2/n^2 + 1 - K(z)
//
// Writing z = i n + tau n, a zero with |tau| < 1/2 is exactly a fixed point
// of g_n(tau) = K(i n + tau n) / (tau + 2 i).

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpspec/kernel.hpp"

namespace gpspec {

struct ModeProblem {
    int n = 1;
    KernelParams params;
    double tol_fp = 1e-12;        // fixed-point step tolerance (on tau)
    double tol_residual = 1e-10;  // accepted |D_n(z)| at the reported zero
    double kernel_tol = 1e-12;    // truncation bound requested from eval_K
    int max_iter = 200;
};

enum class SolveMethod {
    fixed_point,      // g_n iteration from tau = 0 converged and was accepted
    sqrt_seed,        // re-arranged iteration z <- n sqrt(K(z) - 1), then Newton
    prediction_seed,  // Newton from the asymptotic prediction
    external_seed,    // Newton from a caller-supplied starting point
};

struct SolveDiagnostics {
    SolveMethod method = SolveMethod::fixed_point;
    bool escaped = false;          // iteration left |tau| < 1/2 at some step
    int fp_iterations = 0;
    int newton_iterations = 0;
    double fp_residual = -1.0;     // certified |D_n| before refinement (-1: none)
    double newton_residual = -1.0;
    std::vector<double> fp_steps;  // |tau_{k+1} - tau_k| per fixed-point step
};

struct SpectrumPoint {
    int n = 0;
    Complex z{};            // the zero in the upper half plane
    Complex tau{};          // (z - i n)/n
    double residual = 0.0;  // certified upper bound on |D_n(z)|
    int iterations = 0;     // total iterations across all stages
    bool refined = false;   // Newton polish contributed the final value
    Complex prediction{};   // i n + c_r e^{-i(r+1)pi/2} n^(1-r), or the log form at r = 1
    double deviation = 0.0; // |z - prediction|
    SolveDiagnostics diag;
};

// D_n(z) with the kernel evaluated tight enough that its truncation error is
// at most min(kernel_tol, tol_residual/10).
Complex char_fn(const ModeProblem& prob, Complex z);

// One application of g_n. Throws RegionViolation unless |tau| < 1/2.
Complex g_map(const ModeProblem& prob, Complex tau);

// Find the zero of D_n near i n. Primary path: g_n fixed point from tau = 0,
// then a Newton polish; the polished value wins if its residual is smaller.
// If the iteration escapes |tau| < 1/2 or stalls (both happen for genuinely
// preasymptotic parameter sets, where the zero itself sits outside the disc),
// falls back to the sqrt re-arrangement and then to prediction-seeded Newton.
SpectrumPoint solve_mode(const ModeProblem& prob);

// Newton's method on D_n from the given start; same acceptance rules.
SpectrumPoint solve_mode_seeded(const ModeProblem& prob, Complex z0);

struct RangeFailure {
    int n = 0;
    std::string reason;
};

struct RangeResult {
    std::vector<SpectrumPoint> points;    // ascending n
    std::vector<RangeFailure> failures;   // modes that raised, with the message
};

// Optional last-resort seed for modes where every built-in stage failed.
using SeedFn = std::function<std::optional<Complex>(const ModeProblem&)>;

// Solve all modes n_min..n_max with the tolerances of the prototype problem
// (its n is ignored). threads = 0 picks hardware concurrency.
RangeResult solve_range(const ModeProblem& proto, int n_min, int n_max,
                        int threads = 0, const SeedFn& fallback = {});

} // namespace gpspec
