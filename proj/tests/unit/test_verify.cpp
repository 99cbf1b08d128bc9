#include <cmath>

#include "doctest.h"

#include "gpspec/verify.hpp"

using namespace gpspec;

TEST_CASE("asymptotic gap anchor at order one") {
    // K(1) = 1 exactly and the leading term is log(2)/1 there, so the gap at
    // z = 1 is 1 - log 2
    const KernelParams p = KernelParams::make(1.0, 1.0);
    const KernelEval k = eval_K(p, Complex(1.0, 0.0), 1e-13);
    const Complex asy = asymptotic_K(p, Complex(1.0, 0.0));
    CHECK(std::abs(std::abs(k.value - asy) - (1.0 - std::log(2.0))) <= 1e-10);
}

TEST_CASE("bounded-ratio checks pass on a quick set") {
    const KernelParams p = KernelParams::make(0.5, 2.0);  // order 0.75
    VerifyOptions opt;

    const BoundCheckReport a = check_series_vs_integral(p, opt);
    CHECK(a.passed);
    CHECK(a.ratio < a.cap);
    CHECK(a.rows.size() == a.rays.size() * a.moduli.size());

    const BoundCheckReport b = check_zKprime(p, opt);
    CHECK(b.passed);

    const BoundCheckReport c = check_K_asymptotic(KernelParams::make(1.0, 1.0),
                                                  opt);
    CHECK(c.passed);
}

TEST_CASE("grid checks refuse a collapsed sector") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    VerifyOptions opt;
    opt.sector.delta = 1e-6;  // rays would graze the pole axis
    CHECK_THROWS_AS(check_series_vs_integral(p, opt), SectorViolation);
    CHECK_THROWS_AS(check_K_asymptotic(p, opt), SectorViolation);
    CHECK_THROWS_AS(check_zKprime(p, opt), SectorViolation);
}

TEST_CASE("sector comparability sampling") {
    const BoundCheckReport rep = check_sector_comparability(kPi / 6.0, 2000, 42);
    CHECK(rep.violations == 0);
    CHECK(rep.passed);
    CHECK(rep.statistic > 0.0);
    CHECK(rep.samples == 2000);

    // same seed, same draw
    const BoundCheckReport again = check_sector_comparability(kPi / 6.0, 2000,
                                                              42);
    CHECK(rep.statistic == again.statistic);

    CHECK_THROWS_AS(check_sector_comparability(0.0, 100, 1), DomainError);
    CHECK_THROWS_AS(check_sector_comparability(kPi / 6.0, 0, 1), DomainError);
}

TEST_CASE("theorem check on a short range") {
    const KernelParams p = KernelParams::make(0.5, 1.0);
    const TheoremReport rep = check_theorem(p, 20, 200, 0);
    CHECK(rep.solved == 181);
    CHECK(rep.failures.empty());
    CHECK(rep.slope_pass);
    CHECK(rep.const_pass);
    CHECK(rep.spots_pass);
    CHECK(rep.passed);
    CHECK(rep.nearer == ConstantVariant::half);

    CHECK_THROWS_AS(check_theorem(p, 50, 200), InsufficientData);
}
