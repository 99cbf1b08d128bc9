#pragma once

// Kernel-side evaluators for the memory family a_k = k^-alpha, b_k = k^beta:
//
//   K(z)  = sum_{k>=1} k^-alpha / (z + k^beta)
//   K'(z) = -sum_{k>=1} k^-alpha / (z + k^beta)^2
//   h(z)  = int_1^inf x^-alpha / (z + x^beta) dx
//
// plus the closed-form large-|z| asymptotics of K on sectors that stay away
// from the negative real axis, where the poles accumulate.

#include <complex>
#include <cstdint>

#include "gpspec/errors.hpp"

namespace gpspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Default sector opening: admissible arguments satisfy |arg z| <= pi - delta.
inline constexpr double kDefaultDelta = kPi / 6.0;

struct KernelParams {
    double alpha = 0.0;
    double beta = 0.0;

    // Validates alpha > 0, beta >= 1, 0 < alpha + beta - 1 <= beta
    // (equivalently order() in (0,1]).
    static KernelParams make(double alpha, double beta);

    // r = (alpha + beta - 1)/beta, the decay order of K along rays.
    double order() const { return (alpha + beta - 1.0) / beta; }

    // c_r = pi / (beta sin(pi r)); the coefficient of z^-r in the large-|z|
    // expansion of K. Only finite for order() < 1.
    double leading_constant() const;
};

// Closed sector |arg z| <= pi - delta intersected with rho_min <= |z| <= rho_max.
// The sector test alone (contains) ignores the radial bounds.
struct SectorSpec {
    double delta = kDefaultDelta;
    double rho_min = 10.0;
    double rho_max = 1.0e4;

    bool contains(Complex z) const;
};

struct KernelEval {
    Complex value{0.0, 0.0};
    double error_bound = 0.0;      // certified truncation bound
    std::int64_t terms_used = 0;   // explicit head terms (or integrand evaluations)
};

struct EvalOptions {
    std::int64_t min_head_terms = 0;        // force at least this many explicit terms
    std::int64_t max_terms = 100'000'000;   // give up (ToleranceUnreachable) past this
};

// Distance below which z counts as sitting on a pole: 10 eps max(1, |z|).
double pole_exclusion_distance(Complex z);

// Series evaluators. The head of the series is summed term by term out to
// N ~ |z|^(1/beta); the remainder is rolled up exactly into Hurwitz zeta
// values, each computed by Euler-Maclaurin with a certified remainder, so
// error_bound is a true bound, not an estimate.
KernelEval eval_K(const KernelParams& p, Complex z, double tol = 1e-12,
                  const EvalOptions& opt = {});
KernelEval eval_K_prime(const KernelParams& p, Complex z, double tol = 1e-12,
                        const EvalOptions& opt = {});

// Integral surrogate of the series, valid on the sector |arg z| <= pi - delta.
// Adaptive Gauss-Kronrod after x = e^s, plus an expanded tail; error_bound
// combines the quadrature error estimate with a certified tail bound.
KernelEval eval_h(const KernelParams& p, Complex z, double tol = 1e-12,
                  double delta = kDefaultDelta);

// Leading asymptotic term of K on the sector: c_r z^-r for order < 1,
// log(1 + z)/(beta z) at order exactly 1 (principal branch).
Complex asymptotic_K(const KernelParams& p, Complex z, double delta = kDefaultDelta);

// int_0^inf dt / (t^r (1 + t)) = pi / sin(pi r), 0 < r < 1: closed form and
// an independent quadrature evaluation used to cross-check the constant.
double euler_integral(double r);
double euler_integral_quad(double r, double rel_tol = 1e-8);

} // namespace gpspec
