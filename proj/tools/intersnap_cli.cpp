// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the shared-library C API. Subcommands:
//   run        — execute a scenario file and export metrics + state
//   fault-demo — run one of the three packaged fault cases
//   verify     — re-check all invariants over an exported run directory
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "intersnap.h"

namespace {

int report_failure(isnap_status status) {
    std::cerr << isnap_last_error() << "\n";
    return static_cast<int>(status);
}

int run_scenario_handle(isnap_scenario* scenario, uint64_t seed, const std::string& out_dir) {
    isnap_run_result* result = nullptr;
    auto status = isnap_scenario_run(scenario, seed, out_dir.c_str(), &result);
    isnap_scenario_free(scenario);
    if (status != ISNAP_OK) return report_failure(status);
    std::cout << isnap_result_summary_json(result) << "\n";
    std::cerr << "final state hash: " << isnap_result_state_hash(result) << "\n";
    if (!out_dir.empty()) std::cerr << "run outputs written to " << out_dir << "\n";
    isnap_result_free(result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"InterSnap: deterministic cross-chain snapshot archival simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(isnap_version()));

    std::string scenario_path;
    std::string out_dir;
    uint64_t seed = 0;
    int fault_case = 1;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("--scenario", scenario_path, "Scenario JSON file (schema 1)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Master seed for the deterministic run")->required();
    run->add_option("--out", out_dir, "Output directory for metrics and state")->required();

    auto* demo = app.add_subcommand("fault-demo", "Run a packaged fault scenario");
    demo->add_option("--case", fault_case, "Fault case: 1, 2, or 3")
        ->required()
        ->check(CLI::Range(1, 3));
    demo->add_option("--seed", seed, "Master seed (default 1)")->default_val(1);
    demo->add_option("--out", out_dir, "Optional output directory");

    auto* verify = app.add_subcommand("verify", "Re-check invariants over a run directory");
    verify->add_option("--out", out_dir, "Run directory produced by `run`")
        ->required()
        ->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::ifstream in(scenario_path);
        std::stringstream buf;
        buf << in.rdbuf();
        if (!in.good() && !in.eof()) {
            std::cerr << R"({"code":3,"error":"io_failure","detail":"cannot read scenario file"})"
                      << "\n";
            return static_cast<int>(ISNAP_ERR_IO);
        }
        isnap_scenario* scenario = nullptr;
        auto status = isnap_scenario_parse(buf.str().c_str(), &scenario);
        if (status != ISNAP_OK) return report_failure(status);
        return run_scenario_handle(scenario, seed, out_dir);
    }

    if (demo->parsed()) {
        isnap_scenario* scenario = nullptr;
        auto status = isnap_scenario_builtin(fault_case, &scenario);
        if (status != ISNAP_OK) return report_failure(status);
        return run_scenario_handle(scenario, seed, out_dir);
    }

    if (verify->parsed()) {
        char* report = nullptr;
        auto status = isnap_verify_run(out_dir.c_str(), &report);
        if (report) {
            std::cout << report << "\n";
            isnap_string_free(report);
        }
        if (status != ISNAP_OK) return report_failure(status);
        return 0;
    }
    return 0;
}
