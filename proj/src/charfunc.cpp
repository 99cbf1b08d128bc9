#include "gpspec/charfunc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "gpspec/asymptotics.hpp"

namespace gpspec {

namespace {

void ensure_problem(const ModeProblem& prob) {
    KernelParams::make(prob.params.alpha, prob.params.beta);
    if (prob.n < 1) throw DomainError("ModeProblem: requires n >= 1");
    if (!(prob.tol_fp > 0.0) || !(prob.tol_residual > 0.0) || !(prob.kernel_tol > 0.0))
        throw DomainError("ModeProblem: requires positive tolerances");
    if (prob.max_iter < 1) throw DomainError("ModeProblem: requires max_iter >= 1");
}

double char_kernel_tol(const ModeProblem& prob) {
    return std::min(prob.kernel_tol, 0.1 * prob.tol_residual);
}

struct CertifiedD {
    Complex value{0.0, 0.0};
    double kernel_bound = 0.0;
};

CertifiedD char_fn_certified(const ModeProblem& prob, Complex z) {
    const KernelEval K = eval_K(prob.params, z, char_kernel_tol(prob));
    const double nn = double(prob.n) * double(prob.n);
    return {z * z / nn + 1.0 - K.value, K.error_bound};
}

struct Candidate {
    Complex z{0.0, 0.0};
    double resid = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool usable = false;
};

// residual here and below is always the certified |D_n| + kernel bound
Candidate newton_polish(const ModeProblem& prob, Complex z0, int max_steps) {
    const double nn = double(prob.n) * double(prob.n);
    const double ktol = char_kernel_tol(prob);
    Candidate best;
    Complex z = z0;
    for (int it = 0;; ++it) {
        KernelEval K, Kp;
        try {
            K = eval_K(prob.params, z, ktol);
            Kp = eval_K_prime(prob.params, z, ktol);
        } catch (const Error&) {
            break;
        }
        const Complex D = z * z / nn + 1.0 - K.value;
        const double resid = std::abs(D) + K.error_bound;
        if (resid < best.resid) {
            best.z = z;
            best.resid = resid;
            best.iterations = it;
            best.usable = true;
        }
        if (resid <= 0.01 * prob.tol_residual || it >= max_steps) break;
        const Complex Dp = 2.0 * z / nn - Kp.value;
        const double adp = std::abs(Dp);
        if (!(adp > 0.0) || !std::isfinite(adp)) break;
        const Complex zn = z - D / Dp;
        if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag()) || zn == z) break;
        z = zn;
    }
    // the conjugate of a zero is a zero with the same certified residual;
    // report the upper-half representative
    if (best.usable && best.z.imag() < 0.0) best.z = std::conj(best.z);
    return best;
}

bool accepted(const ModeProblem& prob, const Candidate& c) {
    return c.usable && c.resid <= prob.tol_residual && c.z.imag() > 0.0;
}

struct FixedPointRun {
    Complex tau{0.0, 0.0};
    bool converged = false;
    bool escaped = false;
    int iterations = 0;
    std::vector<double> steps;
};

FixedPointRun run_fixed_point(const ModeProblem& prob) {
    FixedPointRun out;
    const double n = double(prob.n);
    Complex tau{0.0, 0.0};
    for (int it = 0; it < prob.max_iter; ++it) {
        const Complex z = Complex(0.0, n) + tau * n;
        KernelEval K;
        try {
            K = eval_K(prob.params, z, prob.kernel_tol);
        } catch (const Error&) {
            out.escaped = true;
            break;
        }
        const Complex next = K.value / (tau + Complex(0.0, 2.0));
        out.iterations = it + 1;
        const double step = std::abs(next - tau);
        out.steps.push_back(step);
        if (std::abs(next) >= 0.5) {
            out.tau = next;
            out.escaped = true;
            return out;
        }
        tau = next;
        if (step <= prob.tol_fp) {
            out.converged = true;
            break;
        }
    }
    out.tau = tau;
    return out;
}

// Re-arrangement z <- n sqrt(K(z) - 1) on the branch with Im >= 0. Unlike the
// g_n map this contracts even when the zero sits outside |tau| < 1/2, which
// is exactly the preasymptotic regime where the fixed point escapes.
struct SqrtRun {
    Complex z{0.0, 0.0};
    int iterations = 0;
    bool usable = false;
};

SqrtRun run_sqrt_map(const ModeProblem& prob) {
    const double n = double(prob.n);
    SqrtRun out;
    Complex z{0.0, n};
    for (int it = 0; it < 120; ++it) {
        KernelEval K;
        try {
            K = eval_K(prob.params, z, prob.kernel_tol);
        } catch (const Error&) {
            return out;
        }
        Complex s = std::sqrt(K.value - 1.0);
        if (s.imag() < 0.0) s = -s;
        const Complex zn = n * s;
        out.iterations = it + 1;
        if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag())) return out;
        const double dz = std::abs(zn - z);
        z = zn;
        if (!(z.imag() > 0.0) || std::abs(z) > 1e6 * n) return out;
        if (dz <= 1e-12 * std::max(1.0, std::abs(z))) break;
    }
    out.z = z;
    out.usable = true;
    return out;
}

SpectrumPoint assemble(const ModeProblem& prob, const Candidate& c,
                       SolveDiagnostics diag, int iterations, bool refined) {
    SpectrumPoint pt;
    pt.n = prob.n;
    pt.z = c.z;
    pt.tau = (c.z - Complex(0.0, double(prob.n))) / double(prob.n);
    pt.residual = c.resid;
    pt.iterations = iterations;
    pt.refined = refined;
    const Prediction pr = predict(prob.params, prob.n, ConstantVariant::as_stated);
    pt.prediction = pr.predicted_z;
    pt.deviation = std::abs(c.z - pr.predicted_z);
    pt.diag = std::move(diag);
    return pt;
}

} // namespace

Complex char_fn(const ModeProblem& prob, Complex z) {
    ensure_problem(prob);
    return char_fn_certified(prob, z).value;
}

Complex g_map(const ModeProblem& prob, Complex tau) {
    ensure_problem(prob);
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) ||
        std::abs(tau) >= 0.5)
        throw RegionViolation("g_map: requires |tau| < 1/2");
    const double n = double(prob.n);
    const Complex z = Complex(0.0, n) + tau * n;
    const KernelEval K = eval_K(prob.params, z, prob.kernel_tol);
    return K.value / (tau + Complex(0.0, 2.0));
}

SpectrumPoint solve_mode(const ModeProblem& prob) {
    ensure_problem(prob);
    SolveDiagnostics diag;

    FixedPointRun fp = run_fixed_point(prob);
    diag.escaped = fp.escaped;
    diag.fp_iterations = fp.iterations;
    diag.fp_steps = std::move(fp.steps);
    int iterations = fp.iterations;

    if (fp.converged) {
        const Complex z_fp = Complex(0.0, double(prob.n)) + fp.tau * double(prob.n);
        CertifiedD d;
        bool fp_ok = true;
        try {
            d = char_fn_certified(prob, z_fp);
        } catch (const Error&) {
            fp_ok = false;
        }
        if (fp_ok) {
            const double fp_resid = std::abs(d.value) + d.kernel_bound;
            diag.fp_residual = fp_resid;
            Candidate pol = newton_polish(prob, z_fp, 60);
            diag.newton_iterations = pol.iterations;
            diag.newton_residual = pol.usable ? pol.resid : -1.0;
            iterations += pol.iterations;
            Candidate chosen;
            bool refined;
            if (pol.usable && pol.resid < fp_resid) {
                chosen = pol;
                refined = pol.iterations > 0;
            } else {
                chosen = {z_fp, fp_resid, 0, true};
                refined = false;
            }
            if (accepted(prob, chosen)) {
                diag.method = SolveMethod::fixed_point;
                return assemble(prob, chosen, std::move(diag), iterations, refined);
            }
        }
    }

    const SqrtRun sq = run_sqrt_map(prob);
    if (sq.usable) {
        iterations += sq.iterations;
        Candidate pol = newton_polish(prob, sq.z, 60);
        if (accepted(prob, pol)) {
            diag.method = SolveMethod::sqrt_seed;
            diag.newton_iterations = pol.iterations;
            diag.newton_residual = pol.resid;
            return assemble(prob, pol, std::move(diag), iterations + pol.iterations,
                            true);
        }
    }

    for (const ConstantVariant v : {ConstantVariant::half, ConstantVariant::as_stated}) {
        const Prediction pr = predict(prob.params, prob.n, v);
        Candidate pol = newton_polish(prob, pr.predicted_z, 80);
        if (accepted(prob, pol)) {
            diag.method = SolveMethod::prediction_seed;
            diag.newton_iterations = pol.iterations;
            diag.newton_residual = pol.resid;
            return assemble(prob, pol, std::move(diag), iterations + pol.iterations,
                            true);
        }
    }

    const std::string what = "solve_mode: n = " + std::to_string(prob.n) +
                             " (alpha = " + std::to_string(prob.params.alpha) +
                             ", beta = " + std::to_string(prob.params.beta) + ")";
    if (diag.escaped)
        throw EscapedRegion(what + ": iteration left |tau| < 1/2 and fallbacks failed");
    throw NoConvergence(what + ": iteration budgets exhausted");
}

SpectrumPoint solve_mode_seeded(const ModeProblem& prob, Complex z0) {
    ensure_problem(prob);
    if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()))
        throw DomainError("solve_mode_seeded: seed must be finite");
    Candidate pol = newton_polish(prob, z0, 80);
    if (!accepted(prob, pol))
        throw NoConvergence("solve_mode_seeded: Newton from the given seed failed for n = " +
                            std::to_string(prob.n));
    SolveDiagnostics diag;
    diag.method = SolveMethod::external_seed;
    diag.newton_iterations = pol.iterations;
    diag.newton_residual = pol.resid;
    return assemble(prob, pol, std::move(diag), pol.iterations, true);
}

RangeResult solve_range(const ModeProblem& proto, int n_min, int n_max,
                        int threads, const SeedFn& fallback) {
    {
        ModeProblem check = proto;
        check.n = 1;
        ensure_problem(check);
    }
    if (n_min < 1 || n_max < n_min)
        throw DomainError("solve_range: requires 1 <= n_min <= n_max");

    const int count = n_max - n_min + 1;
    std::vector<std::optional<SpectrumPoint>> slots(count);
    std::vector<std::optional<RangeFailure>> fails(count);

    int t = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    t = std::clamp(t, 1, std::min(count, 32));

    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const int i = cursor.fetch_add(1);
            if (i >= count) return;
            ModeProblem prob = proto;
            prob.n = n_min + i;
            try {
                slots[i] = solve_mode(prob);
            } catch (const Error& e) {
                bool rescued = false;
                if (fallback) {
                    try {
                        if (const std::optional<Complex> seed = fallback(prob)) {
                            slots[i] = solve_mode_seeded(prob, *seed);
                            rescued = true;
                        }
                    } catch (const Error&) {
                    }
                }
                if (!rescued) fails[i] = RangeFailure{prob.n, e.what()};
            } catch (const std::exception& e) {
                fails[i] = RangeFailure{prob.n, e.what()};
            }
        }
    };

    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(t);
        for (int i = 0; i < t; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    RangeResult out;
    for (int i = 0; i < count; ++i) {
        if (slots[i]) out.points.push_back(std::move(*slots[i]));
        else if (fails[i]) out.failures.push_back(std::move(*fails[i]));
    }
    return out;
}

} // namespace gpspec
