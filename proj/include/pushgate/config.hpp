// Copyright 2026 The pushgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pushgate/core_model.hpp"
#include "pushgate/dynamics.hpp"
#include "pushgate/fidelity.hpp"
#include "pushgate/sweep.hpp"

namespace pushgate {

// Run configuration. JSON with nested blocks; every block rejects unknown
// keys. SI units throughout (angles in rad, omega in rad/s).
struct SpeciesConfig {
    std::string preset = "calcium40";
    std::optional<double> mass, charge, wavelength, doppler_temperature;

    IonSpecies resolve() const;
};

// Either (epsilon, a_over_d), (epsilon, omega) or (omega, mode[, d0]).
struct TrapConfig {
    int n_ions = 2;
    std::optional<double> epsilon, a_over_d, omega, d0;
    std::optional<std::string> mode;

    TrapArray resolve(const IonSpecies& species) const;
};

struct PulseConfig {
    std::optional<double> xi, omega_tau, target_phase;
    int sign = 1;
    double window_factor = 5.0;
    std::vector<bool> addressed;
    std::vector<double> light_shift_offsets;  // m
    int light_shift_sign = 0;
};

// kind: single, spin_echo, detuning_swap, force_swap, toffoli.
struct SequenceConfig {
    std::string kind = "single";
    bool pi_variant = false;
};

struct EnsembleConfig {
    std::optional<double> temperature;         // K
    std::optional<double> kT_over_hbar_omega;  // alternative to temperature
    int samples = 0;
    std::uint64_t seed = 42;
    std::string order = "state_first";

    double temperature_K(double omega) const;
};

struct LaserConfig {
    std::string configuration = "travelling_wave";
    std::optional<double> waist, x0, wavelength, alpha, k_alpha_z0, power;

    LaserGeometry resolve(const IonSpecies& species) const;
};

struct SweepCurveConfig {
    std::string id, label;
    std::optional<double> waist, power, temperature;
    std::string temperature_rule = "fixed";
};

struct SweepConfig {
    std::string name = "sweep";
    std::string axis = "omega";
    double start = 0.0, stop = 0.0;
    int points = 0;
    std::string spacing = "log";
    std::string dynamic_model = "closed_form";
    std::string configuration = "travelling_wave";
    std::optional<double> wavelength;
    double x0_over_w = 0.5;
    double alpha = 0.0, k_alpha_z0 = 0.0;
    double omega = 0.0;
    double epsilon = 2.0;
    double omega_tau = 5.0;
    double vartheta_L = 0.0;
    double xi = 0.0;
    int samples = 0;
    std::uint64_t seed = 42;
    std::vector<SweepCurveConfig> curves;

    SweepSpec resolve(const IonSpecies& species) const;
};

struct OutputConfig {
    std::string dir;
    bool trajectories = false;
};

struct RunConfig {
    std::string preset;
    SpeciesConfig species;
    std::optional<TrapConfig> trap;
    std::optional<PulseConfig> pulse;
    SequenceConfig sequence;
    std::optional<EnsembleConfig> ensemble;
    std::optional<LaserConfig> laser;
    std::optional<SweepConfig> sweep;
    OutputConfig output;
    std::map<std::string, double> tolerances;
};

// Throws ConfigError naming every offending key path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
// Overlays `patch_text` (JSON merge patch) on `base` and re-validates.
RunConfig merge_config(const RunConfig& base, const std::string& patch_text);
// Fully resolved echo: parse_config(config_json(c)) reproduces c.
std::string config_json(const RunConfig& c, bool pretty = false);

// Preset named by `preset` (or by the file's own "preset" key) overlaid with
// the file contents; either may be empty.
RunConfig resolve_config(const std::string& preset, const std::string& file_text);

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

// Pulse built from the pulse block for a resolved system; xi must be set.
ForcePulse make_pulse(const PulseConfig& p, const SystemModel& sys);

}  // namespace pushgate
