#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"

#include "gpspec/kernel.hpp"

using namespace gpspec;

namespace {

void check_close(Complex got, Complex want, double tol) {
    CAPTURE(got.real());
    CAPTURE(got.imag());
    CAPTURE(want.real());
    CAPTURE(want.imag());
    CHECK(std::abs(got - want) <= tol);
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(KernelParams::make(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(KernelParams::make(-0.5, 1.0), DomainError);
    CHECK_THROWS_AS(KernelParams::make(0.5, 0.5), DomainError);
    CHECK_THROWS_AS(KernelParams::make(1.2, 1.0), DomainError);
    CHECK_THROWS_AS(KernelParams::make(2.0, 1.5), DomainError);

    const KernelParams p = KernelParams::make(0.2, 1.0);
    CHECK(p.order() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(KernelParams::make(1.0, 1.0).order() == doctest::Approx(1.0));
    CHECK(KernelParams::make(0.75, 2.0).order() == doctest::Approx(0.875));
}

TEST_CASE("leading constant") {
    // c_r = pi / (beta sin(pi r))
    const KernelParams p = KernelParams::make(0.5, 1.0);
    CHECK(p.leading_constant() == doctest::Approx(kPi).epsilon(1e-15));

    const KernelParams q = KernelParams::make(0.75, 2.0);
    CHECK(q.leading_constant() ==
          doctest::Approx(kPi / (2.0 * std::sin(0.875 * kPi))).epsilon(1e-14));

    CHECK_THROWS_AS(KernelParams::make(1.0, 1.0).leading_constant(),
                    DomainError);
}

TEST_CASE("sector membership") {
    SectorSpec s;
    CHECK(s.contains(Complex(1.0, 0.0)));
    CHECK(s.contains(std::polar(5.0, 5.0 * kPi / 6.0)));       // on the edge
    CHECK(!s.contains(std::polar(5.0, 5.0 * kPi / 6.0 + 0.01)));
    CHECK(!s.contains(Complex(-3.0, 0.0)));
    CHECK(s.contains(Complex(0.0, 7.0)));

    SectorSpec bad;
    bad.delta = -1.0;
    CHECK_THROWS_AS(bad.contains(Complex(1.0, 0.0)), DomainError);
}

TEST_CASE("series closed forms") {
    const KernelParams p11 = KernelParams::make(1.0, 1.0);

    // sum 1/(k (k+1)) telescopes to 1
    const KernelEval at1 = eval_K(p11, Complex(1.0, 0.0), 1e-13);
    check_close(at1.value, Complex(1.0, 0.0), 1e-12);
    CHECK(at1.error_bound <= 1e-13);
    CHECK(std::abs(at1.value - 1.0) <= at1.error_bound + 1e-15);

    // K(0) = zeta(2)
    const KernelEval at0 = eval_K(p11, Complex(0.0, 0.0), 1e-13);
    check_close(at0.value, Complex(kPi * kPi / 6.0, 0.0), 1e-12);

    // sum 1/(k (k+10)) = H_10 / 10
    const KernelEval at10 = eval_K(p11, Complex(10.0, 0.0), 1e-13);
    check_close(at10.value, Complex(0.2928968253968253968, 0.0), 1e-12);

    // K'(1) = -(2 - pi^2/6)
    const KernelEval kp = eval_K_prime(p11, Complex(1.0, 0.0), 1e-13);
    check_close(kp.value, Complex(-0.35506593315177356353, 0.0), 1e-12);

    // K(0) = zeta(alpha + beta) for the slowly decaying set too
    const KernelParams p21 = KernelParams::make(0.2, 1.0);
    const KernelEval z12 = eval_K(p21, Complex(0.0, 0.0), 1e-12);
    check_close(z12.value, Complex(5.5915824411777507765, 0.0), 5e-12);
}

TEST_CASE("series against independent high precision values") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    const KernelEval k10i = eval_K(p, Complex(0.0, 10.0), 1e-13);
    check_close(k10i.value,
                Complex(0.70040175604183120531, -0.55647155210560084138),
                5e-13);

    const KernelEval kp10i = eval_K_prime(p, Complex(0.0, 10.0), 1e-13);
    check_close(kp10i.value,
                Complex(0.020528196522751773624, 0.034707958650666535516),
                5e-13);

    const KernelParams p21 = KernelParams::make(0.2, 1.0);
    const KernelEval k34 = eval_K(p21, Complex(3.0, 4.0), 1e-12);
    check_close(k34.value,
                Complex(3.7180028156261665520, -0.60156275783353593067),
                5e-12);

    const KernelParams p752 = KernelParams::make(0.75, 2.0);
    const KernelEval k52 = eval_K(p752, Complex(5.0, -2.0), 1e-13);
    check_close(k52.value,
                Complex(0.29701550523969012046, 0.071343574702807729016),
                5e-13);
}

TEST_CASE("integral surrogate closed forms") {
    const KernelParams p11 = KernelParams::make(1.0, 1.0);

    const KernelEval h1 = eval_h(p11, Complex(1.0, 0.0), 1e-12);
    check_close(h1.value, Complex(std::log(2.0), 0.0), 1e-10);
    CHECK(std::abs(h1.value - std::log(2.0)) <= h1.error_bound + 1e-15);

    const KernelEval h10 = eval_h(p11, Complex(10.0, 0.0), 1e-12);
    check_close(h10.value, Complex(0.23978952727983705441, 0.0), 1e-10);

    const KernelParams p = KernelParams::make(0.5, 1.0);
    const KernelEval h100i = eval_h(p, Complex(0.0, 100.0), 1e-12);
    check_close(h100i.value,
                Complex(0.22207748309821269798, -0.20214454688569762847),
                1e-10);
}

TEST_CASE("euler integral") {
    CHECK(euler_integral(0.5) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(euler_integral(0.25) ==
          doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(euler_integral(0.0), DomainError);
    CHECK_THROWS_AS(euler_integral(1.0), DomainError);

    for (const double r : {0.25, 0.5, 0.75}) {
        const double q = euler_integral_quad(r);
        CHECK(std::abs(q - euler_integral(r)) <= 1e-7 * euler_integral(r));
    }
    CHECK_THROWS_AS(euler_integral_quad(0.5, 0.5), DomainError);
}

TEST_CASE("pole handling") {
    const KernelParams p = KernelParams::make(0.5, 1.0);

    CHECK_THROWS_AS(eval_K(p, Complex(-1.0, 0.0), 1e-10), PoleProximity);
    CHECK_THROWS_AS(eval_K(p, Complex(-1.0, 1e-16), 1e-10), PoleProximity);
    CHECK_THROWS_AS(eval_K_prime(p, Complex(-4.0, 0.0), 1e-10), PoleProximity);

    // |K| blows up on approach to z = -1
    const double k1 = std::abs(eval_K(p, Complex(-1.0, 0.1), 1e-10).value);
    const double k2 = std::abs(eval_K(p, Complex(-1.0, 0.01), 1e-10).value);
    const double k3 = std::abs(eval_K(p, Complex(-1.0, 0.001), 1e-10).value);
    CHECK(k2 > k1);
    CHECK(k3 > k2);

    CHECK(pole_exclusion_distance(Complex(0.0, 0.0)) ==
          doctest::Approx(10.0 * 2.220446049250313e-16));
    CHECK(pole_exclusion_distance(Complex(1e6, 0.0)) ==
          doctest::Approx(10.0 * 2.220446049250313e-16 * 1e6));
}

TEST_CASE("sector violations and budget") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    CHECK_THROWS_AS(eval_h(p, Complex(-5.0, 0.0), 1e-10), SectorViolation);
    CHECK_THROWS_AS(asymptotic_K(p, Complex(-5.0, 0.0)), SectorViolation);
    CHECK_THROWS_AS(asymptotic_K(p, Complex(0.0, 0.0)), DomainError);

    EvalOptions tiny;
    tiny.max_terms = 8;
    CHECK_THROWS_AS(eval_K(p, Complex(1e6, 0.0), 1e-12, tiny),
                    ToleranceUnreachable);
}

TEST_CASE("more head terms never loosen the certified bound") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    const Complex z(3.0, 4.0);
    const KernelEval base = eval_K(p, z, 1e-12);
    EvalOptions more;
    more.min_head_terms = 4096;
    const KernelEval big = eval_K(p, z, 1e-12, more);
    CHECK(big.terms_used >= 4096);
    CHECK(big.error_bound <= base.error_bound);
    // values agree up to the certified bounds plus summation roundoff,
    // which scales with the longer head length
    const double roundoff = 4096 * 4.0 * std::numeric_limits<double>::epsilon();
    check_close(big.value, base.value,
                base.error_bound + big.error_bound + roundoff);
}

TEST_CASE("conjugate symmetry is exact") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    const KernelParams q = KernelParams::make(0.75, 2.0);
    const Complex pts[] = {Complex(3.0, 4.0), Complex(0.7, -2.3),
                           std::polar(1e3, 2.5), Complex(17.0, 0.25)};
    for (const Complex z : pts) {
        CHECK(eval_K(p, std::conj(z), 1e-12).value ==
              std::conj(eval_K(p, z, 1e-12).value));
        CHECK(eval_K_prime(q, std::conj(z), 1e-12).value ==
              std::conj(eval_K_prime(q, z, 1e-12).value));
        CHECK(eval_h(p, std::conj(z), 1e-12).value ==
              std::conj(eval_h(p, z, 1e-12).value));
    }
}
