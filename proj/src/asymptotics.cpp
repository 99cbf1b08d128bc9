#include "gpspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace gpspec {

namespace {

void ensure_params(const KernelParams& p) {
    KernelParams::make(p.alpha, p.beta);
}

Complex direction_phase(double r) {
    // e^{-i(r+1)pi/2}
    return std::exp(Complex(0.0, -0.5 * kPi * (r + 1.0)));
}

} // namespace

Prediction predict(const KernelParams& p, int n, ConstantVariant variant) {
    ensure_params(p);
    if (n < 1) throw DomainError("predict: requires n >= 1");
    Prediction pr;
    pr.n = n;
    pr.variant = variant;
    pr.leading = Complex(0.0, double(n));
    const double r = p.order();
    if (r < 1.0) {
        pr.branch = PredictionBranch::r_less_1;
        double A = p.leading_constant();
        if (variant == ConstantVariant::half) A *= 0.5;
        pr.correction = A * direction_phase(r) * std::pow(double(n), 1.0 - r);
    } else {
        pr.branch = PredictionBranch::r_equal_1;
        pr.correction = Complex(-std::log(double(n)) / (2.0 * p.beta), 0.0);
    }
    pr.predicted_z = pr.leading + pr.correction;
    return pr;
}

FitReport fit_remainder(const std::vector<SpectrumPoint>& points,
                        const KernelParams& p, ConstantVariant variant) {
    ensure_params(p);
    if (points.size() < 8)
        throw InsufficientData("fit_remainder: needs at least 8 points");

    std::vector<const SpectrumPoint*> pts;
    pts.reserve(points.size());
    for (const auto& pt : points) pts.push_back(&pt);
    std::sort(pts.begin(), pts.end(),
              [](const SpectrumPoint* a, const SpectrumPoint* b) { return a->n < b->n; });
    const int n_lo = pts.front()->n;
    const int n_hi = pts.back()->n;
    if (n_hi < 10 * n_lo)
        throw InsufficientData("fit_remainder: points must span a decade in n");

    FitReport rep;
    rep.variant = variant;
    for (const SpectrumPoint* pt : pts) {
        rep.n.push_back(pt->n);
        rep.deviation.push_back(
            std::abs(pt->z - predict(p, pt->n, variant).predicted_z));
    }

    // slope over the largest-n half
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (std::size_t i = pts.size() / 2; i < pts.size(); ++i) {
            if (!(rep.deviation[i] > 0.0)) continue;
            const double x = std::log(double(rep.n[i]));
            const double y = std::log(rep.deviation[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        const double det = m * sxx - sx * sx;
        if (m < 2 || !(std::abs(det) > 0.0)) {
            rep.degenerate = true;
        } else {
            rep.slope = (m * sxy - sx * sy) / det;
            rep.intercept = (sy - rep.slope * sx) / m;
        }
    }

    // leading constant over the last decade of n
    const double r = p.order();
    const double decade_lo = double(n_hi) / 10.0;
    Complex sumA{0.0, 0.0};
    double minA = 0.0, maxA = 0.0, sumAbsA = 0.0;
    int countA = 0;
    for (const SpectrumPoint* pt : pts) {
        if (double(pt->n) < decade_lo) continue;
        const double n = double(pt->n);
        Complex A;
        if (r < 1.0) {
            A = (pt->z - Complex(0.0, n)) /
                (direction_phase(r) * std::pow(n, 1.0 - r));
        } else {
            A = Complex(pt->z.real() / (-std::log(n) / (2.0 * p.beta)), 0.0);
        }
        const double a = std::abs(A);
        if (countA == 0) {
            minA = maxA = a;
        } else {
            minA = std::min(minA, a);
            maxA = std::max(maxA, a);
        }
        sumA += A;
        sumAbsA += a;
        ++countA;
    }
    if (countA > 0) {
        rep.constant = sumA / double(countA);
        const double meanAbs = sumAbsA / double(countA);
        rep.constant_spread = meanAbs > 0.0 ? (maxA - minA) / meanAbs : 0.0;
        if (r < 1.0) {
            rep.constant_ratio = std::abs(rep.constant) / p.leading_constant();
            rep.nearer = std::abs(rep.constant_ratio - 0.5) <=
                                 std::abs(rep.constant_ratio - 1.0)
                             ? ConstantVariant::half
                             : ConstantVariant::as_stated;
        }
    }

    // order-1 drift of q_n = Re z_n + log(n)/(2 beta)
    if (!(r < 1.0)) {
        const double first_hi = 10.0 * double(n_lo);
        double f_min = 0, f_max = 0, l_min = 0, l_max = 0;
        bool f_any = false, l_any = false;
        for (const SpectrumPoint* pt : pts) {
            const double q =
                pt->z.real() + std::log(double(pt->n)) / (2.0 * p.beta);
            rep.r1_max_abs_q = std::max(rep.r1_max_abs_q, std::abs(q));
            if (double(pt->n) <= first_hi) {
                if (!f_any) { f_min = f_max = q; f_any = true; }
                f_min = std::min(f_min, q);
                f_max = std::max(f_max, q);
            }
            if (double(pt->n) >= decade_lo) {
                if (!l_any) { l_min = l_max = q; l_any = true; }
                l_min = std::min(l_min, q);
                l_max = std::max(l_max, q);
            }
        }
        if (f_any) rep.r1_first_drift = f_max - f_min;
        if (l_any) rep.r1_last_drift = l_max - l_min;
    }
    return rep;
}

} // namespace gpspec
