#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "gpspec/cli.hpp"
#include "gpspec/kernel.hpp"

using namespace gpspec;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&),
        const RunConfig& cfg) {
    std::ostringstream out, err;
    Run r;
    r.code = cmd(cfg, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

} // namespace

TEST_CASE("config validation failures exit 1 and name the problem") {
    RunConfig cfg;
    const Run missing = run(&cmd_spectrum, cfg);
    CHECK(missing.code == 1);
    CHECK(missing.err.find("alpha") != std::string::npos);

    cfg.alpha = 0.5;
    cfg.beta = 1.0;
    cfg.n_min = 10;
    cfg.n_max = 5;
    const Run range = run(&cmd_spectrum, cfg);
    CHECK(range.code == 1);
    CHECK(range.err.find("n-min") != std::string::npos);

    RunConfig bad_params;
    bad_params.alpha = 2.0;
    bad_params.beta = 1.0;
    bad_params.points = {Complex(1.0, 0.0)};
    const Run params = run(&cmd_kernel_eval, bad_params);
    CHECK(params.code == 1);
    CHECK(!params.err.empty());

    RunConfig bad_exp;
    bad_exp.experiment = "nonsense";
    const Run exp = run(&cmd_verify, bad_exp);
    CHECK(exp.code == 1);
    CHECK(exp.err.find("nonsense") != std::string::npos);
}

TEST_CASE("kernel-eval csv output") {
    RunConfig cfg;
    cfg.alpha = 1.0;
    cfg.beta = 1.0;
    cfg.points = {Complex(1.0, 0.0)};
    cfg.which = {"K", "h"};
    const Run r = run(&cmd_kernel_eval, cfg);
    CHECK(r.code == 0);

    std::istringstream lines(r.out);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header ==
          "which,z_re,z_im,value_re,value_im,err_bound,terms,status");
    CHECK(row1.substr(0, 2) == "K,");
    CHECK(row2.substr(0, 2) == "h,");

    // 17 significant digits round-trip the double exactly
    const auto second_field = [](const std::string& row) {
        const auto a = row.find(',');
        const auto b = row.find(',', a + 1);
        const auto c = row.find(',', b + 1);
        const auto d = row.find(',', c + 1);
        return row.substr(c + 1, d - c - 1);
    };
    const double kval = std::stod(second_field(row1));
    const KernelEval direct =
        eval_K(KernelParams::make(1.0, 1.0), Complex(1.0, 0.0),
               cfg.kernel_tol);
    CHECK(kval == direct.value.real());
}

TEST_CASE("kernel-eval reports partial failure") {
    RunConfig cfg;
    cfg.alpha = 1.0;
    cfg.beta = 1.0;
    cfg.points = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};  // second is a pole
    const Run r = run(&cmd_kernel_eval, cfg);
    CHECK(r.code == 2);
    CHECK(r.out.find("ok") != std::string::npos);
}

TEST_CASE("spectrum json document shape") {
    RunConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 1.0;
    cfg.n_min = 30;
    cfg.n_max = 33;
    cfg.format = OutFormat::json;
    const Run r = run(&cmd_spectrum, cfg);
    REQUIRE(r.code == 0);

    const json doc = json::parse(r.out);
    CHECK(doc.contains("config"));
    CHECK(doc.contains("results"));
    CHECK(doc["version"] == "0.1.0");
    CHECK(doc["config"]["command"] == "spectrum");
    CHECK(doc["config"]["alpha"] == 0.5);
    REQUIRE(doc["results"]["points"].size() == 4);
    CHECK(doc["results"]["failures"].empty());
    const auto& first = doc["results"]["points"][0];
    CHECK(first["n"] == 30);
    CHECK(first["z"][1].get<double>() > 0.0);
    CHECK(first.contains("prediction"));
    CHECK(first.contains("prediction_half"));
}

TEST_CASE("spectrum csv columns follow the variant selection") {
    RunConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 1.0;
    cfg.n_min = 30;
    cfg.n_max = 31;

    cfg.variant = VariantSel::as_stated;
    const Run stated = run(&cmd_spectrum, cfg);
    CHECK(stated.out.find("pred_re") != std::string::npos);
    CHECK(stated.out.find("pred_half_re") == std::string::npos);

    cfg.variant = VariantSel::both;
    const Run both = run(&cmd_spectrum, cfg);
    CHECK(both.out.find("pred_re") != std::string::npos);
    CHECK(both.out.find("deviation_half") != std::string::npos);
}

TEST_CASE("atomic output file") {
    namespace fs = std::filesystem;
    const fs::path target = fs::temp_directory_path() / "gpspec_cli_out.json";
    std::error_code ec;
    fs::remove(target, ec);

    RunConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 1.0;
    cfg.points = {Complex(2.0, 1.0)};
    cfg.format = OutFormat::json;
    cfg.out_path = target.string();

    std::ostringstream out, err;
    const int code = cmd_kernel_eval(cfg, out, err);
    CHECK(code == 0);
    CHECK(out.str().empty());  // everything went to the file
    REQUIRE(fs::exists(target));
    CHECK(!fs::exists(target.string() + ".tmp"));

    std::ifstream in(target);
    json doc;
    in >> doc;
    CHECK(doc["results"][0]["status"] == "ok");
    fs::remove(target, ec);
}

TEST_CASE("verify single experiment is deterministic") {
    RunConfig cfg;
    cfg.experiment = "sector";
    cfg.sector_samples = 500;
    cfg.format = OutFormat::json;

    const Run a = run(&cmd_verify, cfg);
    const Run b = run(&cmd_verify, cfg);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const json doc = json::parse(a.out);
    REQUIRE(doc["results"].size() == 1);
    CHECK(doc["results"][0]["experiment"] == "sector_comparability");
    CHECK(doc["results"][0]["violations"] == 0);
    CHECK(doc["results"][0]["passed"] == true);
}

TEST_CASE("verify csv summary") {
    RunConfig cfg;
    cfg.alpha = 0.5;
    cfg.beta = 2.0;
    cfg.experiment = "zkprime";
    cfg.format = OutFormat::csv;
    const Run r = run(&cmd_verify, cfg);
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "experiment,alpha,beta,statistic,reference,ratio,passed");
    CHECK(row.find("zkprime,0.5,2,") == 0);
    CHECK(row.find(",true") != std::string::npos);
}
