#include "gpspec/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hurwitz.hpp"
#include "quadrature.hpp"

namespace gpspec {

namespace {

void ensure_params(const KernelParams& p) {
    // re-runs the factory checks so aggregate-initialized params are caught
    KernelParams::make(p.alpha, p.beta);
}

void ensure_finite(Complex z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": z must be finite");
}

// Per-thread cache of k^-alpha and k^beta for the head sums. One parameter
// set at a time; switching parameters drops the arrays.
struct CoeffCache {
    double alpha = 0.0, beta = 0.0;
    bool valid = false;
    std::vector<double> a, b;
};
thread_local CoeffCache tl_coeffs;
constexpr std::size_t kCoeffCap = std::size_t(1) << 21;

const CoeffCache& coeffs_for(const KernelParams& p, std::int64_t n) {
    CoeffCache& c = tl_coeffs;
    if (!c.valid || c.alpha != p.alpha || c.beta != p.beta) {
        c.a.clear();
        c.b.clear();
        c.alpha = p.alpha;
        c.beta = p.beta;
        c.valid = true;
    }
    const std::size_t want = std::min<std::size_t>(std::size_t(n), kCoeffCap);
    if (c.a.size() < want) {
        const std::size_t old = c.a.size();
        c.a.resize(want);
        c.b.resize(want);
        for (std::size_t i = old; i < want; ++i) {
            const double k = double(i + 1);
            c.a[i] = std::pow(k, -p.alpha);
            c.b[i] = std::pow(k, p.beta);
        }
    }
    return c;
}

void require_pole_clearance(const KernelParams& p, Complex z, const char* who) {
    const double excl = pole_exclusion_distance(z);
    if (std::abs(z.imag()) > excl) return;
    const double x = -z.real();
    if (x < 1.0 - excl) return;
    const long k0 = long(std::floor(std::pow(std::max(x, 1.0), 1.0 / p.beta)));
    for (long k = std::max(1L, k0 - 1); k <= k0 + 1; ++k) {
        const double bk = std::pow(double(k), p.beta);
        if (std::abs(z + bk) <= excl)
            throw PoleProximity(std::string(who) + ": z within exclusion distance of pole -" +
                                std::to_string(k) + "^beta");
    }
}

// Explicit head of the series, N terms. Written against real/imaginary parts
// so that conjugating z flips only the sign of the imaginary accumulator;
// this is what makes eval_K(conj z) == conj(eval_K(z)) exact.
Complex head_sum_K(const KernelParams& p, Complex z, std::int64_t N) {
    const CoeffCache& c = coeffs_for(p, N);
    const double x = z.real(), y = z.imag();
    const double yy = y * y;
    double sre = 0.0, sim = 0.0;
    const std::size_t cached = std::min<std::size_t>(std::size_t(N), c.a.size());
    for (std::size_t i = 0; i < cached; ++i) {
        const double dx = x + c.b[i];
        const double inv = c.a[i] / (dx * dx + yy);
        sre += dx * inv;
        sim -= y * inv;
    }
    for (std::int64_t k = std::int64_t(cached) + 1; k <= N; ++k) {
        const double dk = double(k);
        const double dx = x + std::pow(dk, p.beta);
        const double inv = std::pow(dk, -p.alpha) / (dx * dx + yy);
        sre += dx * inv;
        sim -= y * inv;
    }
    return {sre, sim};
}

// Head of -sum a_k/(z+b_k)^2 (the derivative), same symmetry discipline.
Complex head_sum_Kprime(const KernelParams& p, Complex z, std::int64_t N) {
    const CoeffCache& c = coeffs_for(p, N);
    const double x = z.real(), y = z.imag();
    const double yy = y * y;
    double sre = 0.0, sim = 0.0;
    const std::size_t cached = std::min<std::size_t>(std::size_t(N), c.a.size());
    for (std::size_t i = 0; i < cached; ++i) {
        const double dx = x + c.b[i];
        const double nrm = dx * dx + yy;
        const double inv = c.a[i] / (nrm * nrm);
        sre += (dx * dx - yy) * inv;
        sim -= 2.0 * dx * y * inv;
    }
    for (std::int64_t k = std::int64_t(cached) + 1; k <= N; ++k) {
        const double dk = double(k);
        const double dx = x + std::pow(dk, p.beta);
        const double nrm = dx * dx + yy;
        const double inv = std::pow(dk, -p.alpha) / (nrm * nrm);
        sre += (dx * dx - yy) * inv;
        sim -= 2.0 * dx * y * inv;
    }
    return {-sre, -sim};
}

std::int64_t head_length(const KernelParams& p, double az, std::int64_t min_head) {
    // Enough explicit terms that |z|/(N+1)^beta <= 1/f. The factor drops to
    // 1.5 when f = 10 would push the head past the coefficient cache.
    double f = 10.0;
    if (std::pow(f * std::max(az, 1.0), 1.0 / p.beta) > double(kCoeffCap)) f = 1.5;
    const double nf = std::ceil(std::pow(f * std::max(az, 1.0), 1.0 / p.beta));
    if (!(nf < 9.0e18))
        throw ToleranceUnreachable("eval: |z| too large for any head length");
    std::int64_t N = 32;
    if (nf > double(N)) N = std::int64_t(nf);
    return std::max(N, min_head);
}

struct TailSum {
    Complex value{0.0, 0.0};
    double bound = 0.0;
};

// Remainder sum_{k>N} k^-alpha (z+k^beta)^-w rolled into Hurwitz zetas:
// expanding the denominator geometrically in z k^-beta gives
//   sum_m c_m (-z)^m zeta(s0 + beta m, N+1),  c_m = 1 (K) or m+1 (K'),
// with s0 = alpha + beta (K) or alpha + 2 beta (K'). Factoring a = N+1 out
// of each zeta keeps every factor O(1).
TailSum series_tail(const KernelParams& p, Complex z, std::int64_t N, bool prime) {
    const double a = double(N) + 1.0;
    const double s0 = p.alpha + (prime ? 2.0 : 1.0) * p.beta;
    const Complex w = -z / std::pow(a, p.beta);
    const double q = std::abs(w);
    if (q > 0.9)
        throw ToleranceUnreachable("series tail: head too short for |z|");
    const double base = std::pow(a, -s0);
    const detail::ZetaTilde zt0 = detail::zeta_tilde(s0, a);

    Complex tot{0.0, 0.0};
    Complex wm{1.0, 0.0};
    double qm = 1.0;
    double em_bound = 0.0;
    for (int m = 0; m < 400; ++m) {
        const detail::ZetaTilde zt = detail::zeta_tilde(s0 + p.beta * m, a);
        const double coef = prime ? double(m + 1) : 1.0;
        tot += coef * wm * zt.value;
        em_bound += coef * qm * zt.bound;
        wm *= w;
        qm *= q;
        const double geo =
            prime ? zt0.value * qm * ((m + 2) * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q))
                  : zt0.value * qm / (1.0 - q);
        if (geo <= 1e-22 * std::max(std::abs(tot), 1.0)) {
            TailSum out;
            out.value = base * tot;
            if (prime) out.value = -out.value;
            out.bound = base * (em_bound + geo);
            return out;
        }
    }
    throw ToleranceUnreachable("series tail: geometric expansion stalled");
}

KernelEval eval_series(const KernelParams& p, Complex z, double tol,
                       const EvalOptions& opt, bool prime, const char* who) {
    ensure_params(p);
    ensure_finite(z, who);
    if (!(tol > 0.0)) throw DomainError(std::string(who) + ": tol must be positive");
    if (opt.min_head_terms < 0 || opt.max_terms < 1)
        throw DomainError(std::string(who) + ": bad evaluation options");
    require_pole_clearance(p, z, who);

    std::int64_t N = head_length(p, std::abs(z), opt.min_head_terms);
    for (;;) {
        if (N > opt.max_terms)
            throw ToleranceUnreachable(std::string(who) +
                                       ": term budget exhausted before reaching tol");
        const TailSum tail = series_tail(p, z, N, prime);
        if (tail.bound <= tol) {
            const Complex head =
                prime ? head_sum_Kprime(p, z, N) : head_sum_K(p, z, N);
            return {head + tail.value, tail.bound, N};
        }
        if (N > std::numeric_limits<std::int64_t>::max() / 2) N = opt.max_terms + 1;
        else N *= 2;
    }
}

} // namespace

KernelParams KernelParams::make(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("KernelParams: alpha and beta must be finite");
    if (!(alpha > 0.0)) throw DomainError("KernelParams: requires alpha > 0");
    if (!(beta >= 1.0)) throw DomainError("KernelParams: requires beta >= 1");
    const double r = (alpha + beta - 1.0) / beta;
    if (!(r > 0.0) || !(r <= 1.0))
        throw DomainError("KernelParams: requires 0 < alpha + beta - 1 <= beta");
    return {alpha, beta};
}

double KernelParams::leading_constant() const {
    const double r = order();
    if (!(r < 1.0))
        throw DomainError("leading_constant: undefined at order 1 (sin(pi r) = 0)");
    return kPi / (beta * std::sin(kPi * r));
}

bool SectorSpec::contains(Complex z) const {
    if (!(delta > 0.0) || !(delta < kPi))
        throw DomainError("SectorSpec: delta must lie in (0, pi)");
    // closed sector, with a one-ulp-scale slack so the boundary rays
    // +-(pi - delta) used by the verification grids stay admissible
    return std::abs(std::arg(z)) <= kPi - delta + 1e-9;
}

double pole_exclusion_distance(Complex z) {
    return 10.0 * std::numeric_limits<double>::epsilon() *
           std::max(1.0, std::abs(z));
}

KernelEval eval_K(const KernelParams& p, Complex z, double tol,
                  const EvalOptions& opt) {
    return eval_series(p, z, tol, opt, false, "eval_K");
}

KernelEval eval_K_prime(const KernelParams& p, Complex z, double tol,
                        const EvalOptions& opt) {
    return eval_series(p, z, tol, opt, true, "eval_K_prime");
}

KernelEval eval_h(const KernelParams& p, Complex z, double tol, double delta) {
    ensure_params(p);
    ensure_finite(z, "eval_h");
    if (!(tol > 0.0)) throw DomainError("eval_h: tol must be positive");
    SectorSpec sector;
    sector.delta = delta;
    if (!sector.contains(z))
        throw SectorViolation("eval_h: arg z outside |arg z| <= pi - delta");

    const double az = std::abs(z);
    // substitute x = e^s: integral of e^{(1-alpha)s} / (z + e^{beta s});
    // past X1 = max(10, 2|z|) the tail expands geometrically in z x^-beta
    const double X1 = std::max(10.0, 2.0 * az);
    const double S1 = std::log(X1) / p.beta;
    double s_mid = az > 2.0 ? std::log(az) / p.beta : 0.5 * S1;
    s_mid = std::min(std::max(s_mid, 0.05 * S1), 0.95 * S1);

    const double ea = 1.0 - p.alpha;
    const auto integrand = [&](double s) -> Complex {
        return std::exp(ea * s) / (z + std::exp(p.beta * s));
    };
    const detail::QuadResult quad =
        detail::integrate(integrand, {0.0, s_mid, S1}, 0.5 * tol);

    // tail: sum_j (-z)^j X1^{(1-alpha-beta(j+1))/beta} / (alpha + beta(j+1) - 1),
    // factored so the growth stays in u = -z/X1 with |u| <= 1/2
    const double abm1 = p.alpha + p.beta - 1.0;
    const Complex u = -z / X1;
    const double qu = std::abs(u);
    const double tail_base = std::pow(X1, abm1 / p.beta) ;
    Complex tail{0.0, 0.0};
    Complex uj{1.0, 0.0};
    double tail_bound = 0.0;
    {
        double qj = 1.0;
        bool done = false;
        for (int j = 0; j < 200; ++j) {
            tail += uj / (abm1 + p.beta * j);
            uj *= u;
            qj *= qu;
            const double rem = qj / (abm1 * (1.0 - qu));
            if (rem <= std::max(1e-18 * std::abs(tail), 0.25 * tol * tail_base)) {
                tail_bound = rem / tail_base;
                done = true;
                break;
            }
        }
        if (!done) throw ToleranceUnreachable("eval_h: tail expansion stalled");
    }
    KernelEval out;
    out.value = quad.value + tail / tail_base;
    out.error_bound = quad.error + tail_bound;
    out.terms_used = quad.evaluations;
    return out;
}

Complex asymptotic_K(const KernelParams& p, Complex z, double delta) {
    ensure_params(p);
    ensure_finite(z, "asymptotic_K");
    if (std::abs(z) == 0.0) throw DomainError("asymptotic_K: z must be nonzero");
    SectorSpec sector;
    sector.delta = delta;
    if (!sector.contains(z))
        throw SectorViolation("asymptotic_K: arg z outside |arg z| <= pi - delta");
    const double r = p.order();
    if (r < 1.0) return p.leading_constant() * std::exp(-r * std::log(z));
    return std::log(1.0 + z) / (p.beta * z);
}

double euler_integral(double r) {
    if (!(r > 0.0) || !(r < 1.0))
        throw DomainError("euler_integral: requires 0 < r < 1");
    return kPi / std::sin(kPi * r);
}

double euler_integral_quad(double r, double rel_tol) {
    if (!(r > 0.0) || !(r < 1.0))
        throw DomainError("euler_integral_quad: requires 0 < r < 1");
    if (!(rel_tol > 0.0) || rel_tol > 0.1)
        throw DomainError("euler_integral_quad: rel_tol must lie in (0, 0.1]");
    // int_0^inf t^-r/(1+t) dt splits at t = 1; substituting t = s^{1/(1-r)}
    // on [0,1] and t = 1/s^{1/r} on [1,inf) leaves two smooth integrals
    const auto piece = [](double expo) {
        return [expo](double s) -> Complex {
            return Complex(1.0 / (1.0 + std::pow(s, expo)), 0.0);
        };
    };
    const std::vector<double> bp = {0.0, 0.5, 1.0};
    const double c1 = 1.0 / (1.0 - r), c2 = 1.0 / r;
    const detail::QuadResult coarse1 = detail::integrate(piece(c1), bp, 1e-3);
    const detail::QuadResult coarse2 = detail::integrate(piece(c2), bp, 1e-3);
    const double coarse = c1 * coarse1.value.real() + c2 * coarse2.value.real();
    const double budget = 0.4 * rel_tol * std::abs(coarse);
    const detail::QuadResult fine1 = detail::integrate(piece(c1), bp, budget / c1);
    const detail::QuadResult fine2 = detail::integrate(piece(c2), bp, budget / c2);
    return c1 * fine1.value.real() + c2 * fine2.value.real();
}

} // namespace gpspec
