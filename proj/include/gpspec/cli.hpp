#pragma once

// Command implementations behind the gp-spectrum tool. Split from main() so
// tests can drive them with in-memory streams.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gpspec {

enum class OutFormat { csv, json };
enum class VariantSel { as_stated, half, both };

struct RunConfig {
    std::optional<double> alpha;
    std::optional<double> beta;
    int n_min = 20;
    int n_max = 200;
    double tol_fp = 1e-12;
    double tol_residual = 1e-10;
    double kernel_tol = 1e-12;
    VariantSel variant = VariantSel::both;
    OutFormat format = OutFormat::csv;
    std::optional<std::string> out_path;   // atomic write when set
    std::uint64_t seed = 12345;
    std::vector<std::string> which = {"K"};              // kernel-eval targets
    std::vector<std::complex<double>> points;            // kernel-eval z values
    std::optional<std::string> experiment;               // verify filter
    int threads = 0;
    int sector_samples = 10000;
};

// Exit codes: 0 success, 1 usage/config error, 2 a check or solve failed.
int cmd_kernel_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace gpspec
