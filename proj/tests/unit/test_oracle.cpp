#include <cmath>
#include <complex>

#include "doctest.h"

#include "gpspec/oracle.hpp"

using namespace gpspec;

namespace {

ModeProblem problem(double alpha, double beta, int n) {
    ModeProblem prob;
    prob.params = KernelParams::make(alpha, beta);
    prob.n = n;
    return prob;
}

// the (0.5, 1) mode-100 zero, frozen from an independent high precision run
const Complex kZero100(-13.097625492082867, 89.370355952571979);

} // namespace

TEST_CASE("brute force sum approaches the closed forms") {
    const KernelParams p11 = KernelParams::make(1.0, 1.0);
    CHECK(std::abs(brute_K(p11, Complex(1.0, 0.0), 1000000) - 1.0) <= 1e-6);
    CHECK(std::abs(brute_K(p11, Complex(0.0, 0.0), 1000000) -
                   kPi * kPi / 6.0) <= 1e-5);
}

TEST_CASE("brute force agrees with the certified evaluator") {
    const KernelParams sets[] = {
        KernelParams::make(0.5, 1.0),
        KernelParams::make(0.2, 1.0),
        KernelParams::make(0.75, 2.0),
    };
    const Complex pts[] = {Complex(3.0, 4.0), Complex(0.0, 50.0),
                           Complex(-2.0, 7.5), Complex(12.0, -1.0)};
    for (const KernelParams& p : sets) {
        for (const Complex z : pts) {
            const Complex a = brute_K(p, z, 200000);
            const KernelEval b = eval_K(p, z, 1e-13);
            CAPTURE(p.alpha);
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CHECK(std::abs(a - b.value) <= 1e-8);
        }
    }
}

TEST_CASE("winding count around a known zero") {
    const ModeProblem prob = problem(0.5, 1.0, 100);

    Rectangle hit{-20.0, -5.0, 85.0, 95.0};
    CHECK(count_zeros(prob, hit) == 1);

    // same rectangle reflected into the lower half plane holds the conjugate
    Rectangle mirror{-20.0, -5.0, -95.0, -85.0};
    CHECK(count_zeros(prob, mirror) == 1);

    Rectangle miss{10.0, 11.0, 0.5, 1.0};
    CHECK(count_zeros(prob, miss) == 0);

    // more boundary samples cannot change the answer
    WindingOptions dense;
    dense.initial_samples_per_side = 16;
    CHECK(count_zeros(prob, hit, dense) == 1);
}

TEST_CASE("winding counts add over a partition") {
    const ModeProblem prob = problem(0.5, 1.0, 100);
    const Rectangle whole{-20.0, -5.0, 85.0, 95.0};
    int total = 0;
    for (const double re : {-20.0, -12.0}) {
        for (const double im : {85.0, 90.0}) {
            Rectangle part{re, re + 8.0, im, im + 5.0};
            part.re_max = std::min(part.re_max, whole.re_max);
            total += count_zeros(prob, part);
        }
    }
    CHECK(total == count_zeros(prob, whole));
}

TEST_CASE("rectangles touching the pole axis are refused") {
    const ModeProblem prob = problem(0.5, 1.0, 10);
    const Rectangle over_poles{-2.5, -0.5, -1.0, 1.0};
    CHECK_THROWS_AS(count_zeros(prob, over_poles), DomainError);

    const Rectangle degenerate{3.0, 3.0, 1.0, 2.0};
    CHECK_THROWS_AS(count_zeros(prob, degenerate), DomainError);
}

TEST_CASE("bisection localizes the zero") {
    const ModeProblem prob = problem(0.5, 1.0, 10);
    const SpectrumPoint pt = solve_mode(prob);

    const Rectangle box{-10.0, -0.5, 4.0, 12.0};
    const Complex located = locate_zero(prob, box, 1e-3);
    CHECK(std::abs(located - pt.z) <= 2e-3);

    // refusal when the precondition fails
    const Rectangle empty{3.0, 4.0, 1.0, 2.0};
    CHECK_THROWS_AS(locate_zero(prob, empty, 1e-3), DomainError);
}

TEST_CASE("winding count validates options") {
    const ModeProblem prob = problem(0.5, 1.0, 100);
    const Rectangle hit{-20.0, -5.0, 85.0, 95.0};
    WindingOptions bad;
    bad.initial_samples_per_side = 0;
    CHECK_THROWS_AS(count_zeros(prob, hit, bad), DomainError);
}

TEST_CASE("oracle locate agrees with the solver at mode 100") {
    const ModeProblem prob = problem(0.5, 1.0, 100);
    const Rectangle box{-20.0, -5.0, 85.0, 95.0};
    const Complex located = locate_zero(prob, box, 1e-2);
    CHECK(std::abs(located - kZero100) <= 2e-2);
}
