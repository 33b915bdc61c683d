// Copyright (c) 2026 stationary-gate contributors. MIT License.
//
// Run configuration for the command-line front end. Configurations are TOML
// or JSON (chosen by file extension), share one schema, and are validated
// before anything is computed: unknown keys, wrong types and out-of-range
// values are all reported as ErrorKind::Config. Defaults reproduce the
// flagship Λ-type spectrum (N = 10⁴, Γ1D = 0.05, Δc = −10, Ω₀ = 10).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgate/optimize.hpp"

namespace sgate {

enum class JobKind { Spectrum, FidelitySweep, Optimize, GateTime, PlacementStudy };
const char* to_string(JobKind job);

struct RunConfig {
    JobKind job = JobKind::Spectrum;
    std::string output_name = "spectrum";  // base name of the CSV and manifest
    std::uint64_t rng_seed = 0;            // base seed for random placement

    // Ensemble, geometry, photon B, storage and t_b choices.
    GateConfig gate;
    // σ̃ and Δc follow optimal_params(N, Γ1D) unless given explicitly.
    bool sigma_tilde_explicit = false;
    bool delta_c_explicit = false;
    // Dual-V spacing defaults to 0.266 (units of π/k₀); Λ-type requires 0.5.
    bool d_explicit = false;

    // Grid of the job: δ for spectra, the swept parameter otherwise.
    std::vector<double> grid;
    nlohmann::json grid_spec;  // the grid as written (values or start/stop/count)

    // Spectrum: site holding the stored photon (default: the middle site).
    std::optional<long> stored_site;

    // FidelitySweep / PlacementStudy.
    SweepParam sweep_param = SweepParam::N;
    std::vector<Scheme> schemes;   // curve families; default {gate scheme}
    std::vector<TbMode> tb_modes;  // curve families; default {gate t_b mode}

    // Optimize.
    Objective objective = Objective::Unconditional;
    std::vector<FreeParam> free_params{FreeParam::DeltaC, FreeParam::SigmaTilde};
    int budget = 60;

    // GateTime: hyperfine splitting for the drive-induced loss (optional).
    std::optional<double> delta_hfs;

    NumericSettings numeric;

    // Full resolved configuration (every field, defaults filled in).
    nlohmann::json to_json() const;
};

// Parses an already loaded document. Throws ErrorKind::Config.
RunConfig parse_config(const nlohmann::json& doc);
// Loads `path` (.toml or .json) and parses it. Throws ErrorKind::Config.
RunConfig load_config(const std::string& path);
// TOML text to the equivalent JSON document (tables → objects, arrays →
// arrays). Throws ErrorKind::Config on a syntax error.
nlohmann::json toml_to_json(const std::string& text, const std::string& source = "config");

// Applies overrides given as a JSON object of NumericSettings fields; unknown
// fields or invalid values throw ErrorKind::Config.
void apply_numeric_overrides(NumericSettings& settings, const nlohmann::json& overrides);
nlohmann::json numeric_to_json(const NumericSettings& settings);

}  // namespace sgate
