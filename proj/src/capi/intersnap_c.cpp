// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "intersnap.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/builtin_scenarios.hpp"
#include "core/verify.hpp"
#include "core/world.hpp"

using namespace intersnap;

struct isnap_scenario {
    ScenarioConfig config;
    std::string json_text;
};

struct isnap_run_result {
    std::string summary_json;
    std::string state_hash;
};

namespace {

thread_local std::string g_last_error = "{}";

const char* status_name(isnap_status s) {
    switch (s) {
        case ISNAP_OK: return "ok";
        case ISNAP_ERR_INVALID_ARG: return "invalid_arg";
        case ISNAP_ERR_CONFIG: return "config_invalid";
        case ISNAP_ERR_IO: return "io_failure";
        case ISNAP_ERR_RUN: return "run_failure";
        case ISNAP_ERR_VERIFY_FAILED: return "verify_failed";
        case ISNAP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

isnap_status fail(isnap_status code, const std::string& detail) {
    g_last_error = dump_canonical(Json{
        {"code", static_cast<int>(code)},
        {"error", status_name(code)},
        {"detail", detail},
    });
    return code;
}

}  // namespace

extern "C" {

const char* isnap_version(void) { return "1.0.0"; }

isnap_status isnap_scenario_parse(const char* json_text, isnap_scenario** out) {
    if (!json_text || !out) return fail(ISNAP_ERR_INVALID_ARG, "null argument");
    *out = nullptr;
    try {
        auto parsed = parse_scenario(json_text);
        if (!parsed.ok) return fail(ISNAP_ERR_CONFIG, parsed.error);
        auto* handle = new isnap_scenario;
        handle->config = std::move(parsed.config);
        handle->json_text = dump_canonical(handle->config.to_json());
        *out = handle;
        return ISNAP_OK;
    } catch (const std::exception& e) {
        return fail(ISNAP_ERR_INTERNAL, e.what());
    }
}

isnap_status isnap_scenario_builtin(int fault_case, isnap_scenario** out) {
    if (!out) return fail(ISNAP_ERR_INVALID_ARG, "null argument");
    *out = nullptr;
    try {
        auto* handle = new isnap_scenario;
        handle->config =
            fault_case == 0 ? baseline_scenario() : fault_demo_scenario(fault_case);
        handle->json_text = dump_canonical(handle->config.to_json());
        *out = handle;
        return ISNAP_OK;
    } catch (const std::invalid_argument& e) {
        return fail(ISNAP_ERR_INVALID_ARG, e.what());
    } catch (const std::exception& e) {
        return fail(ISNAP_ERR_INTERNAL, e.what());
    }
}

const char* isnap_scenario_json(const isnap_scenario* scenario) {
    return scenario ? scenario->json_text.c_str() : nullptr;
}

void isnap_scenario_free(isnap_scenario* scenario) { delete scenario; }

isnap_status isnap_scenario_run(const isnap_scenario* scenario, uint64_t seed,
                                const char* out_dir, isnap_run_result** out) {
    if (!scenario || !out) return fail(ISNAP_ERR_INVALID_ARG, "null argument");
    *out = nullptr;
    try {
        const std::filesystem::path dir = out_dir ? out_dir : "";
        World world(scenario->config, seed, dir);
        world.run();
        if (!dir.empty() && !world.export_run())
            return fail(ISNAP_ERR_IO, "failed to write run outputs under " + dir.string());
        auto report = world.report();
        auto* result = new isnap_run_result;
        result->summary_json = report.summary_json().dump(2);
        result->state_hash = report.final_state_hash;
        *out = result;
        return ISNAP_OK;
    } catch (const std::invalid_argument& e) {
        return fail(ISNAP_ERR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(ISNAP_ERR_RUN, e.what());
    }
}

const char* isnap_result_summary_json(const isnap_run_result* result) {
    return result ? result->summary_json.c_str() : nullptr;
}

const char* isnap_result_state_hash(const isnap_run_result* result) {
    return result ? result->state_hash.c_str() : nullptr;
}

void isnap_result_free(isnap_run_result* result) { delete result; }

isnap_status isnap_verify_run(const char* out_dir, char** report_json_out) {
    if (!out_dir || !report_json_out) return fail(ISNAP_ERR_INVALID_ARG, "null argument");
    *report_json_out = nullptr;
    try {
        Json report = verify_run(out_dir);
        const std::string text = report.dump(2);
        char* owned = static_cast<char*>(std::malloc(text.size() + 1));
        if (!owned) return fail(ISNAP_ERR_INTERNAL, "allocation failure");
        std::memcpy(owned, text.c_str(), text.size() + 1);
        *report_json_out = owned;
        if (!report.value("ok", false))
            return fail(ISNAP_ERR_VERIFY_FAILED, "one or more checks failed");
        return ISNAP_OK;
    } catch (const std::exception& e) {
        return fail(ISNAP_ERR_INTERNAL, e.what());
    }
}

void isnap_string_free(char* s) { std::free(s); }

const char* isnap_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
