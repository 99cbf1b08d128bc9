#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpspec/asymptotics.hpp"
#include "gpspec/charfunc.hpp"
#include "gpspec/errors.hpp"
#include "gpspec/kernel.hpp"
#include "gpspec/oracle.hpp"
#include "gpspec/verify.hpp"

namespace py = pybind11;
using namespace gpspec;

PYBIND11_MODULE(_gpspec, m) {
    m.doc() = "spectrum of the mode equations for heat flow with memory";

    static py::exception<Error> exc_base(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", exc_base.ptr());
    py::register_exception<PoleProximity>(m, "PoleProximity", exc_base.ptr());
    py::register_exception<ToleranceUnreachable>(m, "ToleranceUnreachable",
                                                 exc_base.ptr());
    py::register_exception<SectorViolation>(m, "SectorViolation",
                                            exc_base.ptr());
    py::register_exception<QuadratureFailure>(m, "QuadratureFailure",
                                              exc_base.ptr());
    py::register_exception<RegionViolation>(m, "RegionViolation",
                                            exc_base.ptr());
    py::register_exception<EscapedRegion>(m, "EscapedRegion", exc_base.ptr());
    py::register_exception<NoConvergence>(m, "NoConvergence", exc_base.ptr());
    py::register_exception<BoundaryTooClose>(m, "BoundaryTooClose",
                                             exc_base.ptr());
    py::register_exception<NonIntegerWinding>(m, "NonIntegerWinding",
                                              exc_base.ptr());
    py::register_exception<LostZero>(m, "LostZero", exc_base.ptr());
    py::register_exception<InsufficientData>(m, "InsufficientData",
                                             exc_base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", exc_base.ptr());

    py::class_<KernelParams>(m, "KernelParams")
        .def(py::init(&KernelParams::make), py::arg("alpha"), py::arg("beta"))
        .def_readonly("alpha", &KernelParams::alpha)
        .def_readonly("beta", &KernelParams::beta)
        .def("order", &KernelParams::order)
        .def("leading_constant", &KernelParams::leading_constant)
        .def("__repr__", [](const KernelParams& p) {
            return "KernelParams(alpha=" + std::to_string(p.alpha) +
                   ", beta=" + std::to_string(p.beta) + ")";
        });

    py::class_<SectorSpec>(m, "SectorSpec")
        .def(py::init<>())
        .def(py::init([](double delta, double rho_min, double rho_max) {
                 return SectorSpec{delta, rho_min, rho_max};
             }),
             py::arg("delta") = kDefaultDelta, py::arg("rho_min") = 10.0,
             py::arg("rho_max") = 1.0e4)
        .def_readwrite("delta", &SectorSpec::delta)
        .def_readwrite("rho_min", &SectorSpec::rho_min)
        .def_readwrite("rho_max", &SectorSpec::rho_max)
        .def("contains", &SectorSpec::contains, py::arg("z"));

    py::class_<KernelEval>(m, "KernelEval")
        .def_readonly("value", &KernelEval::value)
        .def_readonly("error_bound", &KernelEval::error_bound)
        .def_readonly("terms_used", &KernelEval::terms_used);

    py::class_<EvalOptions>(m, "EvalOptions")
        .def(py::init<>())
        .def_readwrite("min_head_terms", &EvalOptions::min_head_terms)
        .def_readwrite("max_terms", &EvalOptions::max_terms);

    m.def("pole_exclusion_distance", &pole_exclusion_distance, py::arg("z"));
    m.def("eval_K", &eval_K, py::arg("params"), py::arg("z"),
          py::arg("tol") = 1e-12, py::arg("options") = EvalOptions{});
    m.def("eval_K_prime", &eval_K_prime, py::arg("params"), py::arg("z"),
          py::arg("tol") = 1e-12, py::arg("options") = EvalOptions{});
    m.def("eval_h", &eval_h, py::arg("params"), py::arg("z"),
          py::arg("tol") = 1e-12, py::arg("delta") = kDefaultDelta);
    m.def("asymptotic_K", &asymptotic_K, py::arg("params"), py::arg("z"),
          py::arg("delta") = kDefaultDelta);
    m.def("euler_integral", &euler_integral, py::arg("r"));
    m.def("euler_integral_quad", &euler_integral_quad, py::arg("r"),
          py::arg("rel_tol") = 1e-8);

    py::class_<ModeProblem>(m, "ModeProblem")
        .def(py::init<>())
        .def(py::init([](int n, const KernelParams& p) {
                 ModeProblem prob;
                 prob.n = n;
                 prob.params = p;
                 return prob;
             }),
             py::arg("n"), py::arg("params"))
        .def_readwrite("n", &ModeProblem::n)
        .def_readwrite("params", &ModeProblem::params)
        .def_readwrite("tol_fp", &ModeProblem::tol_fp)
        .def_readwrite("tol_residual", &ModeProblem::tol_residual)
        .def_readwrite("kernel_tol", &ModeProblem::kernel_tol)
        .def_readwrite("max_iter", &ModeProblem::max_iter);

    py::enum_<SolveMethod>(m, "SolveMethod")
        .value("fixed_point", SolveMethod::fixed_point)
        .value("sqrt_seed", SolveMethod::sqrt_seed)
        .value("prediction_seed", SolveMethod::prediction_seed)
        .value("external_seed", SolveMethod::external_seed);

    py::enum_<ConstantVariant>(m, "ConstantVariant")
        .value("as_stated", ConstantVariant::as_stated)
        .value("half", ConstantVariant::half);

    py::enum_<PredictionBranch>(m, "PredictionBranch")
        .value("r_less_1", PredictionBranch::r_less_1)
        .value("r_equal_1", PredictionBranch::r_equal_1);

    py::class_<SolveDiagnostics>(m, "SolveDiagnostics")
        .def_readonly("method", &SolveDiagnostics::method)
        .def_readonly("escaped", &SolveDiagnostics::escaped)
        .def_readonly("fp_iterations", &SolveDiagnostics::fp_iterations)
        .def_readonly("newton_iterations", &SolveDiagnostics::newton_iterations)
        .def_readonly("fp_residual", &SolveDiagnostics::fp_residual)
        .def_readonly("newton_residual", &SolveDiagnostics::newton_residual)
        .def_readonly("fp_steps", &SolveDiagnostics::fp_steps);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("n", &Prediction::n)
        .def_readonly("branch", &Prediction::branch)
        .def_readonly("variant", &Prediction::variant)
        .def_readonly("leading", &Prediction::leading)
        .def_readonly("correction", &Prediction::correction)
        .def_readonly("predicted_z", &Prediction::predicted_z);

    py::class_<SpectrumPoint>(m, "SpectrumPoint")
        .def_readonly("n", &SpectrumPoint::n)
        .def_readonly("z", &SpectrumPoint::z)
        .def_readonly("tau", &SpectrumPoint::tau)
        .def_readonly("residual", &SpectrumPoint::residual)
        .def_readonly("iterations", &SpectrumPoint::iterations)
        .def_readonly("refined", &SpectrumPoint::refined)
        .def_readonly("prediction", &SpectrumPoint::prediction)
        .def_readonly("deviation", &SpectrumPoint::deviation)
        .def_readonly("diag", &SpectrumPoint::diag);

    py::class_<RangeFailure>(m, "RangeFailure")
        .def_readonly("n", &RangeFailure::n)
        .def_readonly("reason", &RangeFailure::reason);

    py::class_<RangeResult>(m, "RangeResult")
        .def_readonly("points", &RangeResult::points)
        .def_readonly("failures", &RangeResult::failures);

    m.def("char_fn", &char_fn, py::arg("problem"), py::arg("z"));
    m.def("g_map", &g_map, py::arg("problem"), py::arg("tau"));
    m.def("solve_mode", &solve_mode, py::arg("problem"),
          py::call_guard<py::gil_scoped_release>());
    m.def("solve_mode_seeded", &solve_mode_seeded, py::arg("problem"),
          py::arg("z0"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "solve_range",
        [](const ModeProblem& proto, int n_min, int n_max, int threads) {
            return solve_range(proto, n_min, n_max, threads);
        },
        py::arg("proto"), py::arg("n_min"), py::arg("n_max"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    m.def("predict", &predict, py::arg("params"), py::arg("n"),
          py::arg("variant") = ConstantVariant::as_stated);

    py::class_<FitReport>(m, "FitReport")
        .def_readonly("variant", &FitReport::variant)
        .def_readonly("n", &FitReport::n)
        .def_readonly("deviation", &FitReport::deviation)
        .def_readonly("degenerate", &FitReport::degenerate)
        .def_readonly("slope", &FitReport::slope)
        .def_readonly("intercept", &FitReport::intercept)
        .def_readonly("constant", &FitReport::constant)
        .def_readonly("constant_spread", &FitReport::constant_spread)
        .def_readonly("constant_ratio", &FitReport::constant_ratio)
        .def_readonly("nearer", &FitReport::nearer)
        .def_readonly("r1_max_abs_q", &FitReport::r1_max_abs_q)
        .def_readonly("r1_first_drift", &FitReport::r1_first_drift)
        .def_readonly("r1_last_drift", &FitReport::r1_last_drift);

    m.def("fit_remainder", &fit_remainder, py::arg("points"), py::arg("params"),
          py::arg("variant"));

    py::class_<Rectangle>(m, "Rectangle")
        .def(py::init<>())
        .def(py::init([](double re_min, double re_max, double im_min,
                         double im_max) {
                 return Rectangle{re_min, re_max, im_min, im_max};
             }),
             py::arg("re_min"), py::arg("re_max"), py::arg("im_min"),
             py::arg("im_max"))
        .def_readwrite("re_min", &Rectangle::re_min)
        .def_readwrite("re_max", &Rectangle::re_max)
        .def_readwrite("im_min", &Rectangle::im_min)
        .def_readwrite("im_max", &Rectangle::im_max)
        .def("width", &Rectangle::width)
        .def("height", &Rectangle::height);

    py::class_<WindingOptions>(m, "WindingOptions")
        .def(py::init<>())
        .def_readwrite("initial_samples_per_side",
                       &WindingOptions::initial_samples_per_side)
        .def_readwrite("max_depth", &WindingOptions::max_depth)
        .def_readwrite("min_boundary_scale", &WindingOptions::min_boundary_scale)
        .def_readwrite("series_terms", &WindingOptions::series_terms);

    m.def("brute_K", &brute_K, py::arg("params"), py::arg("z"),
          py::arg("terms"));
    m.def("count_zeros", &count_zeros, py::arg("problem"), py::arg("rect"),
          py::arg("options") = WindingOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("locate_zero", &locate_zero, py::arg("problem"), py::arg("rect"),
          py::arg("tol"), py::arg("options") = WindingOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<GridPoint>(m, "GridPoint")
        .def_readonly("ray", &GridPoint::ray)
        .def_readonly("rho", &GridPoint::rho)
        .def_readonly("q", &GridPoint::q);

    py::class_<RayStat>(m, "RayStat")
        .def_readonly("ray", &RayStat::ray)
        .def_readonly("reference", &RayStat::reference)
        .def_readonly("max_q", &RayStat::max_q)
        .def_readonly("ratio", &RayStat::ratio);

    py::class_<VerifyOptions>(m, "VerifyOptions")
        .def(py::init<>())
        .def_readwrite("sector", &VerifyOptions::sector)
        .def_readwrite("cap", &VerifyOptions::cap)
        .def_readwrite("points_per_decade", &VerifyOptions::points_per_decade)
        .def_readwrite("kernel_tol", &VerifyOptions::kernel_tol);

    py::class_<BoundCheckReport>(m, "BoundCheckReport")
        .def_readonly("experiment_id", &BoundCheckReport::experiment_id)
        .def_readonly("alpha", &BoundCheckReport::alpha)
        .def_readonly("beta", &BoundCheckReport::beta)
        .def_readonly("delta", &BoundCheckReport::delta)
        .def_readonly("cap", &BoundCheckReport::cap)
        .def_readonly("rays", &BoundCheckReport::rays)
        .def_readonly("moduli", &BoundCheckReport::moduli)
        .def_readonly("rows", &BoundCheckReport::rows)
        .def_readonly("per_ray", &BoundCheckReport::per_ray)
        .def_readonly("statistic", &BoundCheckReport::statistic)
        .def_readonly("reference", &BoundCheckReport::reference)
        .def_readonly("ratio", &BoundCheckReport::ratio)
        .def_readonly("passed", &BoundCheckReport::passed)
        .def_readonly("seed", &BoundCheckReport::seed)
        .def_readonly("samples", &BoundCheckReport::samples)
        .def_readonly("violations", &BoundCheckReport::violations);

    m.def("check_series_vs_integral", &check_series_vs_integral,
          py::arg("params"), py::arg("options") = VerifyOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("check_K_asymptotic", &check_K_asymptotic, py::arg("params"),
          py::arg("options") = VerifyOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("check_zKprime", &check_zKprime, py::arg("params"),
          py::arg("options") = VerifyOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("check_sector_comparability", &check_sector_comparability,
          py::arg("delta"), py::arg("samples"), py::arg("seed") = 12345,
          py::call_guard<py::gil_scoped_release>());

    py::class_<SpotCheck>(m, "SpotCheck")
        .def_readonly("n", &SpotCheck::n)
        .def_readonly("rect", &SpotCheck::rect)
        .def_readonly("count", &SpotCheck::count)
        .def_readonly("ok", &SpotCheck::ok);

    py::class_<TheoremReport>(m, "TheoremReport")
        .def_readonly("alpha", &TheoremReport::alpha)
        .def_readonly("beta", &TheoremReport::beta)
        .def_readonly("n_min", &TheoremReport::n_min)
        .def_readonly("n_max", &TheoremReport::n_max)
        .def_readonly("solved", &TheoremReport::solved)
        .def_readonly("failures", &TheoremReport::failures)
        .def_readonly("fit_as_stated", &TheoremReport::fit_as_stated)
        .def_readonly("fit_half", &TheoremReport::fit_half)
        .def_readonly("slope_cap", &TheoremReport::slope_cap)
        .def_readonly("slope_pass", &TheoremReport::slope_pass)
        .def_readonly("const_decade_lo", &TheoremReport::const_decade_lo)
        .def_readonly("const_decade_hi", &TheoremReport::const_decade_hi)
        .def_readonly("const_spread", &TheoremReport::const_spread)
        .def_readonly("const_ratio", &TheoremReport::const_ratio)
        .def_readonly("nearer", &TheoremReport::nearer)
        .def_readonly("const_pass", &TheoremReport::const_pass)
        .def_readonly("order_one", &TheoremReport::order_one)
        .def_readonly("r1_max_abs_q", &TheoremReport::r1_max_abs_q)
        .def_readonly("r1_first_drift", &TheoremReport::r1_first_drift)
        .def_readonly("r1_last_drift", &TheoremReport::r1_last_drift)
        .def_readonly("spots", &TheoremReport::spots)
        .def_readonly("spots_pass", &TheoremReport::spots_pass)
        .def_readonly("passed", &TheoremReport::passed);

    m.def("check_theorem", &check_theorem, py::arg("params"), py::arg("n_min"),
          py::arg("n_max"), py::arg("threads") = 0,
          py::arg("kernel_tol") = 1e-12,
          py::call_guard<py::gil_scoped_release>());
}
