#include "quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gpspec/errors.hpp"

namespace gpspec::detail {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
};

struct Segment {
    double a = 0.0, b = 0.0;
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
};

Segment rule(const std::function<std::complex<double>(double)>& f, double a,
             double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::complex<double> fc = f(mid);
    std::complex<double> kron = kWgk[7] * fc;
    std::complex<double> gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const std::complex<double> lo = f(mid - dx);
        const std::complex<double> hi = f(mid + dx);
        kron += kWgk[i] * (lo + hi);
        if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = half * kron;
    s.err = std::abs(half) * std::abs(kron - gauss);
    return s;
}

} // namespace

QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     const std::vector<double>& breakpoints, double abs_tol,
                     int max_segments) {
    if (breakpoints.size() < 2 ||
        !std::is_sorted(breakpoints.begin(), breakpoints.end()))
        throw DomainError("integrate: breakpoints must be ascending, >= 2");
    const double tol = std::max(abs_tol, 1e-300);

    std::vector<Segment> segs;
    int evals = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i + 1]) continue;
        segs.push_back(rule(f, breakpoints[i], breakpoints[i + 1]));
        evals += 15;
    }
    if (segs.empty()) return {{0.0, 0.0}, 0.0, 0};

    double total_err = 0.0;
    for (const auto& s : segs) total_err += s.err;

    while (total_err > tol) {
        if (int(segs.size()) >= max_segments)
            throw QuadratureFailure("integrate: segment budget exhausted");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const Segment old = segs[worst];
        const double mid = 0.5 * (old.a + old.b);
        if (mid <= old.a || mid >= old.b)
            throw QuadratureFailure("integrate: interval too small to split");
        segs[worst] = rule(f, old.a, mid);
        segs.push_back(rule(f, mid, old.b));
        evals += 30;
        total_err += segs[worst].err + segs.back().err - old.err;
    }

    std::sort(segs.begin(), segs.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a; });
    QuadResult out;
    for (const auto& s : segs) out.value += s.value;
    out.error = total_err;
    out.evaluations = evals;
    return out;
}

} // namespace gpspec::detail
