#pragma once

// Euler-Maclaurin evaluation of the normalized Hurwitz zeta a^s zeta(s, a),
// used by the certified tail of the kernel series. For f(t) = t^-s,
//
//   sum_{k>=0} f(x+k) = int_x^inf f + f(x)/2
//                       + sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1} + R,
//
// and since f is completely monotone the remainder R is bounded by the first
// omitted term, which makes the returned bound a true bound.

#include <cmath>

namespace gpspec::detail {

struct ZetaTilde {
    double value = 0.0;
    double bound = 0.0;   // certified absolute error of value
};

// a^s zeta(s, a); requires s > 1 and a >= ~10 for the bound to be tight.
inline ZetaTilde zeta_tilde(double s, double a) {
    // B_{2j}/(2j)! for j = 1..5, then B_12/12! for the remainder bound
    constexpr double kBern[5] = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
        1.0 / 47900160.0,
    };
    constexpr double kBernNext = -691.0 / 1307674368000.0;
    constexpr int kHead = 7;

    double head = 1.0;  // (a/(a+0))^s
    for (int j = 1; j < kHead; ++j) head += std::pow(a / (a + j), s);

    const double x = a + kHead;
    const double ax = std::pow(a / x, s);
    double em = x / (s - 1.0) + 0.5;
    double poch = s;          // (s)_{2j-1}
    double xfac = 1.0 / x;    // x^{1-2j}
    for (int j = 0; j < 5; ++j) {
        em += kBern[j] * poch * xfac;
        poch *= (s + 2 * j + 1.0) * (s + 2 * j + 2.0);
        xfac /= x * x;
    }
    return {head + ax * em, std::abs(kBernNext) * poch * xfac * ax};
}

} // namespace gpspec::detail
