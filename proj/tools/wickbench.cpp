// wickbench: command-line front end of the verification harness.
//
//   wickbench run --config <path.json> [--seed S] [--out DIR] [--tol T] [--jobs N] [--negate]
//   wickbench check <name> --params <inline-json> [--tol T]
//   wickbench list-checks
//
// Exit codes: 0 all rows pass, 1 some row fails, 2 configuration error.

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include <wickbench/wickbench.hpp>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int summarize(const std::vector<wickbench::InequalityReport>& rows) {
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    std::cerr << rows.size() << " rows, " << failed << " failed\n";
    return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification harness for Gaussian Wick calculus inequalities"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a configured suite and write report.json / report.csv");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<double> run_tol;
    unsigned jobs = 1;
    bool negate = false;
    run->add_option("--config", config_path, "Suite configuration (JSON)")->required();
    run->add_option("--seed", seed, "Override the configured seed");
    run->add_option("--out", out_dir, "Output directory (overrides config \"output\")");
    run->add_option("--tol", run_tol, "Override the exact-path tolerance");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--negate", negate, "Debug: swap both sides of every row");

    auto* check = app.add_subcommand("check", "Evaluate one check on inline parameters and print the rows");
    std::string check_name, params_text = "{}";
    std::optional<double> check_tol;
    check->add_option("name", check_name, "Check name (see list-checks)")->required();
    check->add_option("--params", params_text, "Parameters as inline JSON");
    check->add_option("--tol", check_tol, "Override the exact-path tolerance");

    auto* list = app.add_subcommand("list-checks", "List available checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*list) {
            for (const auto& c : wickbench::check_registry()) std::cout << c.name << "\t" << c.description << "\n";
            return kExitPass;
        }
        if (*check) {
            nlohmann::json params;
            try {
                params = nlohmann::json::parse(params_text);
            } catch (const nlohmann::json::exception& e) {
                throw wickbench::ConfigError(std::string("--params: invalid JSON: ") + e.what());
            }
            wickbench::Tolerances tol;
            if (check_tol) tol.exact = *check_tol;
            std::vector<wickbench::InequalityReport> rows;
            try {
                rows = wickbench::run_check(check_name, params, tol);
            } catch (const std::invalid_argument& e) {
                throw wickbench::ConfigError(e.what());
            } catch (const std::domain_error& e) {
                throw wickbench::ConfigError(e.what());
            }
            std::cout << wickbench::reports_to_json(rows);
            return summarize(rows);
        }

        auto cfg = wickbench::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.output = *out_dir;
        if (run_tol) cfg.tolerances.exact = *run_tol;
        if (negate) cfg.negate = true;
        const auto rows = wickbench::run_suite(cfg, jobs);
        wickbench::write_reports(rows, cfg.output);
        return summarize(rows);
    } catch (const wickbench::ConfigError& e) {
        std::cerr << "wickbench: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "wickbench: error: " << e.what() << "\n";
        return kExitConfig;
    }
}
