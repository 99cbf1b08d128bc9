#include "gpspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gpspec {

namespace {

void ensure_params(const KernelParams& p) {
    KernelParams::make(p.alpha, p.beta);
}

void ensure_problem(const ModeProblem& prob) {
    ensure_params(prob.params);
    if (prob.n < 1) throw DomainError("ModeProblem: requires n >= 1");
}

// deliberately separate from the library's pole guard: the oracle must not
// share code paths with eval_K
void oracle_pole_guard(const KernelParams& p, Complex z) {
    const double excl =
        10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) > excl || -z.real() < 1.0 - excl) return;
    const long k0 =
        long(std::floor(std::pow(std::max(-z.real(), 1.0), 1.0 / p.beta)));
    for (long k = std::max(1L, k0 - 1); k <= k0 + 1; ++k) {
        if (std::abs(z + std::pow(double(k), p.beta)) <= excl)
            throw PoleProximity("brute_K: z sits on a kernel pole");
    }
}

struct WalkContext {
    const ModeProblem& prob;
    const WindingOptions& opt;
    double nn = 0.0;
    std::int64_t terms = 0;
};

Complex brute_D(const WalkContext& ctx, Complex z) {
    return z * z / ctx.nn + 1.0 -
           brute_K(ctx.prob.params, z, ctx.terms);
}

Complex boundary_value(const WalkContext& ctx, Complex z) {
    const Complex d = brute_D(ctx, z);
    const double floor = ctx.opt.min_boundary_scale * (1.0 + std::norm(z) / ctx.nn);
    if (!(std::abs(d) > floor))
        throw BoundaryTooClose("count_zeros: |D_n| below threshold at boundary point (" +
                               std::to_string(z.real()) + ", " +
                               std::to_string(z.imag()) + ")");
    return d;
}

double phase_walk(const WalkContext& ctx, Complex za, Complex zb, Complex fa,
                  Complex fb, int depth) {
    const double dphi = std::arg(fb / fa);
    if (std::abs(dphi) <= 0.5 * kPi) return dphi;
    if (depth >= ctx.opt.max_depth)
        throw NonIntegerWinding("count_zeros: phase increment failed to settle");
    const Complex zm = 0.5 * (za + zb);
    const Complex fm = boundary_value(ctx, zm);
    return phase_walk(ctx, za, zm, fa, fm, depth + 1) +
           phase_walk(ctx, zm, zb, fm, fb, depth + 1);
}

} // namespace

Complex brute_K(const KernelParams& p, Complex z, std::int64_t terms) {
    ensure_params(p);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("brute_K: z must be finite");
    if (terms < 1) throw DomainError("brute_K: requires terms >= 1");
    oracle_pole_guard(p, z);

    Complex sum{0.0, 0.0};
    for (std::int64_t k = 1; k <= terms; ++k) {
        const double dk = double(k);
        sum += std::pow(dk, -p.alpha) / (z + std::pow(dk, p.beta));
    }

    // tail estimate: integral of the continued summand expanded in powers of
    // z x^-beta, plus the two Euler-Maclaurin endpoint corrections. Only an
    // estimate (no certified bound), and only applied where the expansion
    // converges.
    const double N = double(terms);
    const double Nb = std::pow(N, p.beta);
    if (std::abs(z) < 0.5 * Nb) {
        const Complex u = -z / Nb;
        Complex integral{0.0, 0.0};
        Complex uj{1.0, 0.0};
        for (int j = 0; j < 64; ++j) {
            const Complex term = uj / (p.alpha + p.beta * (j + 1) - 1.0);
            integral += term;
            uj *= u;
            if (std::abs(uj) <= 1e-18 * std::max(std::abs(integral), 1.0)) break;
        }
        integral *= std::pow(N, 1.0 - p.alpha) / Nb;

        const double fN_a = std::pow(N, -p.alpha);
        const Complex den = z + Nb;
        const Complex fN = fN_a / den;
        const Complex fpN = -p.alpha * fN / N - p.beta * fN_a *
                            std::pow(N, p.beta - 1.0) / (den * den);
        sum += integral - 0.5 * fN - fpN / 12.0;
    }
    return sum;
}

int count_zeros(const ModeProblem& prob, const Rectangle& rect,
                const WindingOptions& opt) {
    ensure_problem(prob);
    if (!std::isfinite(rect.re_min) || !std::isfinite(rect.re_max) ||
        !std::isfinite(rect.im_min) || !std::isfinite(rect.im_max) ||
        !(rect.re_min < rect.re_max) || !(rect.im_min < rect.im_max))
        throw DomainError("count_zeros: malformed rectangle");
    if (opt.initial_samples_per_side < 1 || opt.max_depth < 1 ||
        !(opt.min_boundary_scale > 0.0) || opt.series_terms < 1)
        throw DomainError("count_zeros: bad winding options");

    // reject rectangles containing a pole -k^beta: the winding number would
    // count it with weight -1 and the zero count would be meaningless
    if (rect.im_min < 0.0 && rect.im_max > 0.0 && rect.re_min < -1.0) {
        const double lo = std::max(1.0, -rect.re_max);
        const double hi = -rect.re_min;
        const long k_lo = long(std::ceil(std::pow(lo, 1.0 / prob.params.beta) - 1e-9));
        const long k_hi = long(std::floor(std::pow(hi, 1.0 / prob.params.beta) + 1e-9));
        for (long k = std::max(1L, k_lo); k <= k_hi; ++k) {
            const double pole = -std::pow(double(k), prob.params.beta);
            if (pole > rect.re_min && pole < rect.re_max)
                throw DomainError("count_zeros: rectangle contains the pole -" +
                                  std::to_string(k) + "^beta");
        }
    }

    WalkContext ctx{prob, opt, double(prob.n) * double(prob.n), 0};
    {
        const double corner = std::max({std::abs(Complex(rect.re_min, rect.im_min)),
                                        std::abs(Complex(rect.re_max, rect.im_min)),
                                        std::abs(Complex(rect.re_min, rect.im_max)),
                                        std::abs(Complex(rect.re_max, rect.im_max))});
        const double need = std::pow(8.0 * std::max(corner, 1.0), 1.0 / prob.params.beta);
        ctx.terms = std::max<std::int64_t>(opt.series_terms,
                                           std::int64_t(std::ceil(need)));
        ctx.terms = std::min<std::int64_t>(ctx.terms, std::int64_t(1) << 23);
    }

    const Complex corners[4] = {
        {rect.re_min, rect.im_min},
        {rect.re_max, rect.im_min},
        {rect.re_max, rect.im_max},
        {rect.re_min, rect.im_max},
    };
    std::vector<Complex> nodes;
    const int per_side = opt.initial_samples_per_side;
    nodes.reserve(std::size_t(4) * per_side + 1);
    for (int side = 0; side < 4; ++side) {
        const Complex a = corners[side];
        const Complex b = corners[(side + 1) % 4];
        for (int j = 0; j < per_side; ++j)
            nodes.push_back(a + (b - a) * (double(j) / per_side));
    }
    nodes.push_back(corners[0]);

    std::vector<Complex> values;
    values.reserve(nodes.size());
    for (const Complex& zb : nodes) values.push_back(boundary_value(ctx, zb));

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        total += phase_walk(ctx, nodes[i], nodes[i + 1], values[i], values[i + 1], 0);

    const double winding = total / (2.0 * kPi);
    const double rounded = std::round(winding);
    if (!(std::abs(winding - rounded) <= 0.2))
        throw NonIntegerWinding("count_zeros: winding " + std::to_string(winding) +
                                " not within 0.2 of an integer");
    return int(rounded);
}

Complex locate_zero(const ModeProblem& prob, const Rectangle& rect0, double tol,
                    const WindingOptions& opt) {
    if (!(tol > 0.0)) throw DomainError("locate_zero: requires tol > 0");
    if (count_zeros(prob, rect0, opt) != 1)
        throw DomainError("locate_zero: rectangle must contain exactly one zero");

    Rectangle rect = rect0;
    bool split_re = rect.width() >= rect.height();
    constexpr double kFractions[5] = {0.5, 0.45, 0.55, 0.40, 0.60};

    while (std::max(rect.width(), rect.height()) >= tol) {
        bool kept = false;
        for (const double frac : kFractions) {
            Rectangle lo = rect, hi = rect;
            if (split_re) {
                const double cut = rect.re_min + frac * rect.width();
                lo.re_max = cut;
                hi.re_min = cut;
            } else {
                const double cut = rect.im_min + frac * rect.height();
                lo.im_max = cut;
                hi.im_min = cut;
            }
            // a cut landing on (or grazing) the zero shows up as
            // BoundaryTooClose or an unsettled phase; jitter and retry
            try {
                if (count_zeros(prob, lo, opt) == 1) {
                    rect = lo;
                    kept = true;
                } else if (count_zeros(prob, hi, opt) == 1) {
                    rect = hi;
                    kept = true;
                }
            } catch (const BoundaryTooClose&) {
                continue;
            } catch (const NonIntegerWinding&) {
                continue;
            }
            if (kept) break;
        }
        if (!kept)
            throw LostZero("locate_zero: bisection lost the zero near (" +
                           std::to_string(0.5 * (rect.re_min + rect.re_max)) + ", " +
                           std::to_string(0.5 * (rect.im_min + rect.im_max)) + ")");
        split_re = !split_re;
    }
    return {0.5 * (rect.re_min + rect.re_max), 0.5 * (rect.im_min + rect.im_max)};
}

} // namespace gpspec
