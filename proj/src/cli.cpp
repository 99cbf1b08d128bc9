#include "gpspec/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "gpspec/asymptotics.hpp"
#include "gpspec/charfunc.hpp"
#include "gpspec/errors.hpp"
#include "gpspec/kernel.hpp"
#include "gpspec/verify.hpp"

namespace gpspec {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json cjson(Complex z) {
    return ordered_json::array({z.real(), z.imag()});
}

const char* variant_name(VariantSel v) {
    switch (v) {
        case VariantSel::as_stated: return "as_stated";
        case VariantSel::half: return "half";
        default: return "both";
    }
}

const char* variant_name(ConstantVariant v) {
    return v == ConstantVariant::half ? "half" : "as_stated";
}

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::fixed_point: return "fixed_point";
        case SolveMethod::sqrt_seed: return "sqrt_seed";
        case SolveMethod::prediction_seed: return "prediction_seed";
        default: return "external_seed";
    }
}

// CSV fields here never contain commas/quotes, but keep the writer honest.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_output(const RunConfig& cfg, const std::string& text,
                  std::ostream& out) {
    if (!cfg.out_path) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(*cfg.out_path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open output file: " + tmp.string());
        f << text;
        f.flush();
        if (!f) throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw ConfigError("cannot move output into place: " + ec.message());
}

ordered_json base_config(const RunConfig& cfg, const char* command) {
    ordered_json c;
    c["command"] = command;
    if (cfg.alpha) c["alpha"] = *cfg.alpha; else c["alpha"] = nullptr;
    if (cfg.beta) c["beta"] = *cfg.beta; else c["beta"] = nullptr;
    c["n_min"] = cfg.n_min;
    c["n_max"] = cfg.n_max;
    c["tol_fp"] = cfg.tol_fp;
    c["tol_residual"] = cfg.tol_residual;
    c["kernel_tol"] = cfg.kernel_tol;
    c["variant"] = variant_name(cfg.variant);
    c["format"] = cfg.format == OutFormat::json ? "json" : "csv";
    c["out"] = cfg.out_path ? ordered_json(*cfg.out_path) : ordered_json(nullptr);
    c["seed"] = cfg.seed;
    c["threads"] = cfg.threads;
    c["sector_samples"] = cfg.sector_samples;
    c["experiment"] =
        cfg.experiment ? ordered_json(*cfg.experiment) : ordered_json(nullptr);
    return c;
}

std::string dump_document(const ordered_json& config, ordered_json results) {
    ordered_json doc;
    doc["config"] = config;
    doc["results"] = std::move(results);
    doc["version"] = kVersion;
    return doc.dump(2) + "\n";
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

KernelParams require_params(const RunConfig& cfg, const char* command) {
    if (!cfg.alpha || !cfg.beta)
        throw ConfigError(std::string(command) +
                          " requires both --alpha and --beta");
    return KernelParams::make(*cfg.alpha, *cfg.beta);
}

// ---- kernel-eval ----------------------------------------------------------

struct EvalRow {
    std::string which;
    Complex z;
    Complex value{0.0, 0.0};
    double err_bound = 0.0;
    long long terms = 0;
    std::string status = "ok";
};

} // namespace

int cmd_kernel_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const KernelParams p = require_params(cfg, "kernel-eval");
        if (cfg.points.empty())
            throw ConfigError("kernel-eval requires at least one --z point");
        if (cfg.which.empty())
            throw ConfigError("kernel-eval requires at least one --which target");
        for (const std::string& w : cfg.which)
            if (w != "K" && w != "Kprime" && w != "h" && w != "asy")
                throw ConfigError("unknown --which target '" + w +
                                  "' (expected K, Kprime, h, or asy)");
        if (!(cfg.kernel_tol > 0.0))
            throw ConfigError("kernel-eval requires --kernel-tol > 0");

        std::vector<EvalRow> rows;
        bool partial = false;
        for (const Complex z : cfg.points) {
            for (const std::string& w : cfg.which) {
                EvalRow row;
                row.which = w;
                row.z = z;
                try {
                    if (w == "K") {
                        const KernelEval e = eval_K(p, z, cfg.kernel_tol);
                        row.value = e.value;
                        row.err_bound = e.error_bound;
                        row.terms = e.terms_used;
                    } else if (w == "Kprime") {
                        const KernelEval e = eval_K_prime(p, z, cfg.kernel_tol);
                        row.value = e.value;
                        row.err_bound = e.error_bound;
                        row.terms = e.terms_used;
                    } else if (w == "h") {
                        const KernelEval e = eval_h(p, z, cfg.kernel_tol);
                        row.value = e.value;
                        row.err_bound = e.error_bound;
                        row.terms = e.terms_used;
                    } else {
                        row.value = asymptotic_K(p, z);
                    }
                } catch (const Error& e) {
                    row.status = e.what();
                    partial = true;
                }
                rows.push_back(std::move(row));
            }
        }

        std::string text;
        if (cfg.format == OutFormat::json) {
            ordered_json res = ordered_json::array();
            for (const EvalRow& row : rows) {
                ordered_json j;
                j["which"] = row.which;
                j["z"] = cjson(row.z);
                j["value"] = cjson(row.value);
                j["err_bound"] = row.err_bound;
                j["terms"] = row.terms;
                j["status"] = row.status;
                res.push_back(std::move(j));
            }
            text = dump_document(base_config(cfg, "kernel-eval"), std::move(res));
        } else {
            std::ostringstream os;
            os << "which,z_re,z_im,value_re,value_im,err_bound,terms,status\n";
            for (const EvalRow& row : rows)
                os << row.which << ',' << g17(row.z.real()) << ','
                   << g17(row.z.imag()) << ',' << g17(row.value.real()) << ','
                   << g17(row.value.imag()) << ',' << g17(row.err_bound) << ','
                   << row.terms << ',' << csv_escape(row.status) << "\n";
            text = os.str();
        }
        write_output(cfg, text, out);
        return partial ? 2 : 0;
    });
}

// ---- spectrum --------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const KernelParams p = require_params(cfg, "spectrum");
        if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
            throw ConfigError("spectrum requires 1 <= --n-min <= --n-max");
        if (!(cfg.tol_fp > 0.0) || !(cfg.tol_residual > 0.0) ||
            !(cfg.kernel_tol > 0.0))
            throw ConfigError("spectrum tolerances must be positive");

        ModeProblem proto;
        proto.params = p;
        proto.tol_fp = cfg.tol_fp;
        proto.tol_residual = cfg.tol_residual;
        proto.kernel_tol = cfg.kernel_tol;

        const RangeResult rr = solve_range(proto, cfg.n_min, cfg.n_max,
                                           cfg.threads);

        const bool want_as =
            cfg.variant == VariantSel::as_stated || cfg.variant == VariantSel::both;
        const bool want_half =
            cfg.variant == VariantSel::half || cfg.variant == VariantSel::both;

        const auto half_pred = [&](int n) {
            return predict(p, n, ConstantVariant::half);
        };

        std::string text;
        if (cfg.format == OutFormat::json) {
            ordered_json pts = ordered_json::array();
            for (const SpectrumPoint& pt : rr.points) {
                ordered_json j;
                j["n"] = pt.n;
                j["z"] = cjson(pt.z);
                j["tau"] = cjson(pt.tau);
                j["residual"] = pt.residual;
                j["iterations"] = pt.iterations;
                j["refined"] = pt.refined;
                j["method"] = method_name(pt.diag.method);
                if (want_as) {
                    j["prediction"] = cjson(pt.prediction);
                    j["deviation"] = pt.deviation;
                }
                if (want_half) {
                    const Prediction ph = half_pred(pt.n);
                    j["prediction_half"] = cjson(ph.predicted_z);
                    j["deviation_half"] = std::abs(pt.z - ph.predicted_z);
                }
                ordered_json d;
                d["escaped"] = pt.diag.escaped;
                d["fp_iterations"] = pt.diag.fp_iterations;
                d["newton_iterations"] = pt.diag.newton_iterations;
                d["fp_residual"] = pt.diag.fp_residual;
                d["newton_residual"] = pt.diag.newton_residual;
                j["diag"] = std::move(d);
                pts.push_back(std::move(j));
            }
            ordered_json fails = ordered_json::array();
            for (const RangeFailure& f : rr.failures)
                fails.push_back({{"n", f.n}, {"reason", f.reason}});
            ordered_json res;
            res["points"] = std::move(pts);
            res["failures"] = std::move(fails);
            text = dump_document(base_config(cfg, "spectrum"), std::move(res));
        } else {
            std::ostringstream os;
            os << "n,z_re,z_im,residual,iters";
            if (want_as) os << ",pred_re,pred_im,deviation";
            if (want_half) os << ",pred_half_re,pred_half_im,deviation_half";
            os << "\n";
            for (const SpectrumPoint& pt : rr.points) {
                os << pt.n << ',' << g17(pt.z.real()) << ',' << g17(pt.z.imag())
                   << ',' << g17(pt.residual) << ',' << pt.iterations;
                if (want_as)
                    os << ',' << g17(pt.prediction.real()) << ','
                       << g17(pt.prediction.imag()) << ','
                       << g17(pt.deviation);
                if (want_half) {
                    const Prediction ph = half_pred(pt.n);
                    os << ',' << g17(ph.predicted_z.real()) << ','
                       << g17(ph.predicted_z.imag()) << ','
                       << g17(std::abs(pt.z - ph.predicted_z));
                }
                os << "\n";
            }
            text = os.str();
        }
        write_output(cfg, text, out);
        return rr.failures.empty() ? 0 : 2;
    });
}

// ---- verify ----------------------------------------------------------------

namespace {

ordered_json bound_report_json(const BoundCheckReport& rep) {
    ordered_json j;
    j["experiment"] = rep.experiment_id;
    j["alpha"] = rep.alpha;
    j["beta"] = rep.beta;
    j["delta"] = rep.delta;
    j["cap"] = rep.cap;
    if (!rep.rays.empty()) {
        j["rays"] = rep.rays;
        j["moduli"] = rep.moduli;
    }
    j["statistic"] = rep.statistic;
    j["reference"] = rep.reference;
    j["ratio"] = rep.ratio;
    j["passed"] = rep.passed;
    if (rep.samples > 0) {
        j["seed"] = rep.seed;
        j["samples"] = rep.samples;
        j["violations"] = rep.violations;
    }
    if (!rep.per_ray.empty()) {
        ordered_json rays = ordered_json::array();
        for (const RayStat& s : rep.per_ray)
            rays.push_back({{"ray", s.ray},
                            {"reference", s.reference},
                            {"max_q", s.max_q},
                            {"ratio", s.ratio}});
        j["per_ray"] = std::move(rays);
    }
    if (!rep.rows.empty()) {
        ordered_json rows = ordered_json::array();
        for (const GridPoint& g : rep.rows)
            rows.push_back({{"ray", g.ray}, {"rho", g.rho}, {"q", g.q}});
        j["rows"] = std::move(rows);
    }
    return j;
}

ordered_json rect_json(const Rectangle& r) {
    return ordered_json::array({r.re_min, r.re_max, r.im_min, r.im_max});
}

ordered_json theorem_report_json(const TheoremReport& rep) {
    ordered_json j;
    j["experiment"] = "theorem";
    j["alpha"] = rep.alpha;
    j["beta"] = rep.beta;
    j["n_min"] = rep.n_min;
    j["n_max"] = rep.n_max;
    j["solved"] = rep.solved;
    ordered_json fails = ordered_json::array();
    for (const RangeFailure& f : rep.failures)
        fails.push_back({{"n", f.n}, {"reason", f.reason}});
    j["failures"] = std::move(fails);

    const auto fit_json = [](const FitReport& f) {
        ordered_json fj;
        fj["variant"] = variant_name(f.variant);
        fj["degenerate"] = f.degenerate;
        fj["slope"] = f.slope;
        fj["intercept"] = f.intercept;
        return fj;
    };
    j["fit_as_stated"] = fit_json(rep.fit_as_stated);
    j["fit_half"] = fit_json(rep.fit_half);
    j["slope_cap"] = rep.slope_cap;
    j["slope_pass"] = rep.slope_pass;

    if (rep.order_one) {
        ordered_json r1;
        r1["max_abs_q"] = rep.r1_max_abs_q;
        r1["first_decade_drift"] = rep.r1_first_drift;
        r1["last_decade_drift"] = rep.r1_last_drift;
        j["order_one"] = std::move(r1);
        j["constant"] = nullptr;
    } else {
        j["order_one"] = nullptr;
        ordered_json c;
        c["decade"] = ordered_json::array(
            {rep.const_decade_lo, rep.const_decade_hi});
        c["spread"] = rep.const_spread;
        c["ratio_to_stated"] = rep.const_ratio;
        c["nearer"] = variant_name(rep.nearer);
        c["passed"] = rep.const_pass;
        j["constant"] = std::move(c);
    }

    ordered_json spots = ordered_json::array();
    for (const SpotCheck& s : rep.spots)
        spots.push_back({{"n", s.n},
                         {"rect", rect_json(s.rect)},
                         {"count", s.count},
                         {"ok", s.ok}});
    j["spots"] = std::move(spots);
    j["spots_pass"] = rep.spots_pass;
    j["passed"] = rep.passed;
    return j;
}

struct VerifySummaryRow {
    std::string experiment;
    std::optional<double> alpha, beta;
    double statistic = 0.0;
    double reference = 0.0;
    double ratio = 0.0;
    bool passed = false;
};

} // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        static const std::vector<std::string> kExperiments = {
            "series_vs_integral", "k_asymptotic", "zkprime", "sector",
            "theorem"};
        if (cfg.experiment &&
            std::find(kExperiments.begin(), kExperiments.end(),
                      *cfg.experiment) == kExperiments.end())
            throw ConfigError("unknown --experiment '" + *cfg.experiment +
                              "' (expected series_vs_integral, k_asymptotic, "
                              "zkprime, sector, or theorem)");
        if (cfg.alpha.has_value() != cfg.beta.has_value())
            throw ConfigError("--alpha and --beta must be given together");
        if (cfg.sector_samples < 1)
            throw ConfigError("verify requires --sector-samples >= 1");

        std::vector<KernelParams> sets;
        if (cfg.alpha) {
            sets.push_back(KernelParams::make(*cfg.alpha, *cfg.beta));
        } else {
            sets.push_back(KernelParams::make(0.5, 1.0));
            sets.push_back(KernelParams::make(0.2, 1.0));
            sets.push_back(KernelParams::make(0.75, 1.0));
            sets.push_back(KernelParams::make(1.0, 1.0));
        }

        const auto selected = [&](const char* name) {
            return !cfg.experiment || *cfg.experiment == name;
        };

        VerifyOptions opt;
        opt.kernel_tol = cfg.kernel_tol;

        ordered_json res = ordered_json::array();
        std::vector<VerifySummaryRow> summary;
        bool all_passed = true;

        const auto add_bound = [&](const BoundCheckReport& rep,
                                   std::optional<double> a,
                                   std::optional<double> b) {
            res.push_back(bound_report_json(rep));
            summary.push_back({rep.experiment_id, a, b, rep.statistic,
                               rep.reference, rep.ratio, rep.passed});
            all_passed = all_passed && rep.passed;
        };
        const auto add_error = [&](const char* name, std::optional<double> a,
                                   std::optional<double> b,
                                   const std::string& what) {
            ordered_json j;
            j["experiment"] = name;
            j["alpha"] = a ? ordered_json(*a) : ordered_json(nullptr);
            j["beta"] = b ? ordered_json(*b) : ordered_json(nullptr);
            j["error"] = what;
            j["passed"] = false;
            res.push_back(std::move(j));
            summary.push_back({name, a, b, 0.0, 0.0, 0.0, false});
            all_passed = false;
        };

        using GridCheck = BoundCheckReport (*)(const KernelParams&,
                                               const VerifyOptions&);
        const std::pair<const char*, GridCheck> grid_checks[] = {
            {"series_vs_integral", &check_series_vs_integral},
            {"k_asymptotic", &check_K_asymptotic},
            {"zkprime", &check_zKprime},
        };
        for (const auto& [name, fn] : grid_checks) {
            if (!selected(name)) continue;
            for (const KernelParams& p : sets) {
                try {
                    add_bound(fn(p, opt), p.alpha, p.beta);
                } catch (const Error& e) {
                    add_error(name, p.alpha, p.beta, e.what());
                }
            }
        }

        if (selected("sector")) {
            try {
                add_bound(check_sector_comparability(opt.sector.delta,
                                                     cfg.sector_samples,
                                                     cfg.seed),
                          std::nullopt, std::nullopt);
            } catch (const Error& e) {
                add_error("sector", std::nullopt, std::nullopt, e.what());
            }
        }

        if (selected("theorem")) {
            for (const KernelParams& p : sets) {
                try {
                    const TheoremReport rep = check_theorem(
                        p, cfg.n_min, cfg.n_max, cfg.threads, cfg.kernel_tol);
                    res.push_back(theorem_report_json(rep));
                    const double stat = rep.order_one
                                            ? rep.r1_max_abs_q
                                            : std::min(rep.fit_as_stated.slope,
                                                       rep.fit_half.slope);
                    summary.push_back({"theorem", p.alpha, p.beta, stat,
                                       rep.const_ratio, rep.const_spread,
                                       rep.passed});
                    all_passed = all_passed && rep.passed;
                } catch (const Error& e) {
                    add_error("theorem", p.alpha, p.beta, e.what());
                }
            }
        }

        std::string text;
        if (cfg.format == OutFormat::json) {
            text = dump_document(base_config(cfg, "verify"), std::move(res));
        } else {
            std::ostringstream os;
            os << "experiment,alpha,beta,statistic,reference,ratio,passed\n";
            for (const VerifySummaryRow& row : summary)
                os << row.experiment << ','
                   << (row.alpha ? g17(*row.alpha) : std::string()) << ','
                   << (row.beta ? g17(*row.beta) : std::string()) << ','
                   << g17(row.statistic) << ',' << g17(row.reference) << ','
                   << g17(row.ratio) << ',' << (row.passed ? "true" : "false")
                   << "\n";
            text = os.str();
        }
        write_output(cfg, text, out);
        return all_passed ? 0 : 2;
    });
}

} // namespace gpspec
