#include <cmath>
#include <complex>

#include "doctest.h"

#include "gpspec/charfunc.hpp"

using namespace gpspec;

namespace {

ModeProblem problem(double alpha, double beta, int n) {
    ModeProblem prob;
    prob.params = KernelParams::make(alpha, beta);
    prob.n = n;
    return prob;
}

} // namespace

TEST_CASE("characteristic function values") {
    const ModeProblem prob = problem(0.5, 1.0, 10);

    const Complex d = char_fn(prob, Complex(-1.0, 10.0));
    CHECK(std::abs(d - Complex(-0.66739320189312820506,
                               0.38979905195560307875)) <= 1e-11);

    // D_n(i n) = -K(i n): the z^2/n^2 + 1 part cancels exactly
    const Complex din = char_fn(prob, Complex(0.0, 10.0));
    const KernelEval k = eval_K(prob.params, Complex(0.0, 10.0), 1e-13);
    CHECK(std::abs(din + k.value) <= 1e-12);
}

TEST_CASE("contraction map") {
    const ModeProblem prob = problem(0.5, 1.0, 100);

    // g(0) = K(i n)/(2 i)
    const Complex g0 = g_map(prob, Complex(0.0, 0.0));
    const KernelEval k = eval_K(prob.params, Complex(0.0, 100.0),
                                std::min(prob.kernel_tol,
                                         0.1 * prob.tol_residual));
    CHECK(std::abs(g0 - k.value / Complex(0.0, 2.0)) <= 1e-15);

    const Complex g1 = g_map(prob, Complex(0.01, -0.01));
    CHECK(std::abs(g1 - Complex(-0.10364131057620696961,
                                -0.11319018640280185568)) <= 1e-12);

    CHECK_THROWS_AS(g_map(prob, Complex(0.6, 0.0)), RegionViolation);
    CHECK_THROWS_AS(g_map(prob, Complex(0.0, -0.5)), RegionViolation);
}

TEST_CASE("solve_mode hits the independently computed zeros") {
    struct Case {
        double alpha, beta;
        int n;
        Complex z;
    };
    const Case cases[] = {
        {0.5, 1.0, 100, Complex(-13.097625492082867, 89.370355952571979)},
        {1.0, 1.0, 100, Complex(-2.6440035350112756, 99.300615872042951)},
        {0.5, 1.0, 10, Complex(-4.7527702077154684, 7.9831773510208106)},
        {0.2, 1.0, 100, Complex(-102.49346838332414, 51.386550825406699)},
    };
    for (const Case& c : cases) {
        CAPTURE(c.alpha);
        CAPTURE(c.n);
        const ModeProblem prob = problem(c.alpha, c.beta, c.n);
        const SpectrumPoint pt = solve_mode(prob);
        CHECK(std::abs(pt.z - c.z) <= 1e-8);
        CHECK(pt.residual <= prob.tol_residual);
        CHECK(pt.z.imag() > 0.0);
        CHECK(pt.z.real() < 0.0);

        // certified residual really bounds |D_n|
        CHECK(std::abs(char_fn(prob, pt.z)) <= pt.residual);

        // the reflected point is a zero too
        CHECK(std::abs(char_fn(prob, std::conj(pt.z))) <= pt.residual);
    }
}

TEST_CASE("fixed point iteration contracts where it is accepted") {
    const ModeProblem prob = problem(0.5, 1.0, 100);
    const SpectrumPoint pt = solve_mode(prob);
    REQUIRE(pt.diag.method == SolveMethod::fixed_point);
    REQUIRE(pt.diag.fp_steps.size() >= 3);
    for (std::size_t i = 1; i < pt.diag.fp_steps.size(); ++i) {
        const double prev = pt.diag.fp_steps[i - 1];
        const double cur = pt.diag.fp_steps[i];
        if (cur < 1e-14 || prev < 1e-14) break;  // roundoff floor
        CHECK(cur <= 0.5 * prev);
    }
}

TEST_CASE("seeded solve") {
    const ModeProblem prob = problem(0.5, 1.0, 100);
    const SpectrumPoint pt = solve_mode_seeded(prob, Complex(-12.0, 90.0));
    CHECK(std::abs(pt.z - Complex(-13.097625492082867, 89.370355952571979)) <=
          1e-8);
    CHECK(pt.diag.method == SolveMethod::external_seed);

    // a real seed keeps Newton on the real axis, so it can never reach the
    // upper-half-plane zero and must report failure rather than return junk
    CHECK_THROWS_AS(solve_mode_seeded(prob, Complex(5.0, 0.0)), NoConvergence);
}

TEST_CASE("solve_range") {
    ModeProblem proto;
    proto.params = KernelParams::make(0.5, 1.0);

    const RangeResult rr = solve_range(proto, 50, 60, 2);
    CHECK(rr.failures.empty());
    REQUIRE(rr.points.size() == 11);
    for (std::size_t i = 0; i < rr.points.size(); ++i) {
        CHECK(rr.points[i].n == 50 + int(i));
        CHECK(rr.points[i].residual <= proto.tol_residual);
    }

    CHECK_THROWS_AS(solve_range(proto, 60, 50), DomainError);
    CHECK_THROWS_AS(solve_range(proto, 0, 50), DomainError);
}

TEST_CASE("problem validation") {
    ModeProblem bad = problem(0.5, 1.0, 0);
    CHECK_THROWS_AS(solve_mode(bad), DomainError);

    ModeProblem neg = problem(0.5, 1.0, 10);
    neg.tol_residual = -1.0;
    CHECK_THROWS_AS(solve_mode(neg), DomainError);
}
