#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gpspec/cli.hpp"
#include "gpspec/errors.hpp"
#include "gpspec/kernel.hpp"

namespace {

// accepts "re" or "re,im"
gpspec::Complex parse_point(const std::string& text) {
    const auto comma = text.find(',');
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma))
        throw gpspec::ConfigError("bad --z value: " + text);
    double im = 0.0;
    if (comma != std::string::npos) {
        const std::string rest = text.substr(comma + 1);
        im = std::stod(rest, &used);
        if (used != rest.size())
            throw gpspec::ConfigError("bad --z value: " + text);
    }
    return {re, im};
}

} // namespace

int main(int argc, char** argv) {
    using namespace gpspec;

    CLI::App app{"spectrum of the mode equations for heat flow with memory"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> z_args;
    std::string variant = "both";
    std::string format;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "series weight exponent");
        sub->add_option("--beta", cfg.beta, "relaxation rate exponent");
        sub->add_option("--kernel-tol", cfg.kernel_tol,
                        "kernel evaluation tolerance");
        sub->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path,
                        "write output to this file (atomic replace)");
    };

    CLI::App* keval = app.add_subcommand(
        "kernel-eval", "evaluate the memory kernel transform at given points");
    add_common(keval);
    keval->add_option("--z", z_args, "point to evaluate, as re or re,im")
        ->required();
    keval->add_option("--which", cfg.which,
                      "targets: K, Kprime, h, asy (repeatable)");

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "solve the nonreal spectrum for a range of mode numbers");
    add_common(spectrum);
    spectrum->add_option("--n-min", cfg.n_min, "first mode number");
    spectrum->add_option("--n-max", cfg.n_max, "last mode number");
    spectrum->add_option("--tol-fp", cfg.tol_fp, "fixed point tolerance");
    spectrum->add_option("--tol-residual", cfg.tol_residual,
                         "certified residual tolerance");
    spectrum->add_option("--variant", variant,
                         "asymptotic constant variant: as_stated, half, both")
        ->check(CLI::IsMember({"as_stated", "half", "both"}));

    CLI::App* verify = app.add_subcommand(
        "verify", "run the bound and theorem verification experiments");
    add_common(verify);
    verify->add_option("--n-min", cfg.n_min, "first mode number");
    verify->add_option("--n-max", cfg.n_max, "last mode number");
    verify->add_option("--seed", cfg.seed, "seed for the sampling experiment");
    verify->add_option("--sector-samples", cfg.sector_samples,
                       "sample count for the sector experiment");
    verify->add_option(
        "--experiment", cfg.experiment,
        "run one experiment: series_vs_integral, k_asymptotic, zkprime, "
        "sector, theorem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (const char* env = std::getenv("GP_SPECTRUM_THREADS")) {
        char* end = nullptr;
        const long t = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || t < 0 || t > 4096) {
            std::cerr << "error: GP_SPECTRUM_THREADS must be a small "
                         "non-negative integer\n";
            return 1;
        }
        cfg.threads = int(t);
    }

    cfg.variant = variant == "as_stated" ? VariantSel::as_stated
                  : variant == "half"    ? VariantSel::half
                                         : VariantSel::both;
    if (format.empty())
        cfg.format = verify->parsed() ? OutFormat::json : OutFormat::csv;
    else
        cfg.format = format == "json" ? OutFormat::json : OutFormat::csv;

    try {
        for (const std::string& s : z_args) cfg.points.push_back(parse_point(s));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (keval->parsed()) return cmd_kernel_eval(cfg, std::cout, std::cerr);
    if (spectrum->parsed()) return cmd_spectrum(cfg, std::cout, std::cerr);
    return cmd_verify(cfg, std::cout, std::cerr);
}
