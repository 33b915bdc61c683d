// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// stationary-gate <run|verify> [path] [--threads K] [--out DIR] [--set KEY=VALUE]...
//
//   run [config]    run the job described by a .toml/.json configuration (the
//                   flagship spectrum when omitted) and write CSV + manifest
//   verify [level]  run the `quick` (default) or `full` self-check battery
//
// --set overrides one numeric setting (e.g. --set golden_tol=1e-12) and may be
// repeated. Exit status: 0 success, 1 configuration error, 2 numeric failure.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgate/jobs.hpp"
#include "sgate/parallel.hpp"
#include "sgate/verify.hpp"

namespace {

// "key=value" pairs to a JSON object of numeric overrides.
nlohmann::json parse_overrides(const std::vector<std::string>& items) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw sgate::Error(sgate::ErrorKind::Config, "--set expects KEY=VALUE (got '" + item + "')");
        }
        const std::string key = item.substr(0, eq), text = item.substr(eq + 1);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size()) {
            throw sgate::Error(sgate::ErrorKind::Config, "--set " + key + ": '" + text + "' is not a number");
        }
        out[key] = value;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary-light controlled-phase gate: spectra, fidelities and self-checks"};
    app.set_version_flag("--version", std::string(SGATE_VERSION));
    app.require_subcommand(1, 1);

    int threads = sgate::default_thread_count();
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "Worker threads (default: hardware count)")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "Output directory for CSV and manifest");
        sub->add_option("--set", overrides, "Override a numeric setting, KEY=VALUE");
    };

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run a job configuration");
    run->add_option("path", config_path, "Configuration file (.toml or .json)");
    add_common(run);

    std::string level = "quick";
    CLI::App* verify = app.add_subcommand("verify", "Run the self-check battery");
    verify->add_option("path", level, "Battery: quick or full");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? sgate::kExitOk : sgate::kExitConfig;
    }

    try {
        const nlohmann::json numeric = parse_overrides(overrides);
        if (*run) {
            sgate::RunConfig cfg =
                config_path.empty() ? sgate::parse_config(nlohmann::json::object()) : sgate::load_config(config_path);
            sgate::apply_numeric_overrides(cfg.numeric, numeric);
            return sgate::run_job(cfg, out_dir, threads, std::cout);
        }
        sgate::NumericSettings settings;
        sgate::apply_numeric_overrides(settings, numeric);
        const auto results = sgate::run_verify(level, settings, threads);
        sgate::print_verify_table(results, std::cout);
        for (const auto& r : results)
            if (!r.passed) return sgate::kExitNumeric;
        return sgate::kExitOk;
    } catch (const sgate::Error& e) {
        std::cerr << "stationary-gate: " << (e.kind() == sgate::ErrorKind::Config ? "config error: " : "error: ")
                  << e.what() << "\n";
        return e.kind() == sgate::ErrorKind::Config ? sgate::kExitConfig : sgate::kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "stationary-gate: error: " << e.what() << "\n";
        return sgate::kExitNumeric;
    }
}
