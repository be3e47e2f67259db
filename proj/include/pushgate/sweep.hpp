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
#include <iosfwd>
#include <string>
#include <vector>

#include "pushgate/core_model.hpp"
#include "pushgate/fidelity.hpp"

namespace pushgate {

enum class SweepAxis { omega, temperature, waist, power, epsilon, xi };
enum class Spacing { linear, log };
enum class DynamicModel { closed_form, monte_carlo };
enum class TemperatureRule { fixed, ln2_quantum };  // ln2: T = hbar omega / (k_B ln 2)

std::string to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(const std::string& s);  // omega, T, w, P, epsilon, xi
std::string to_string(Spacing s);
Spacing spacing_from_string(const std::string& s);
std::string to_string(DynamicModel m);
DynamicModel dynamic_model_from_string(const std::string& s);
std::string to_string(TemperatureRule r);
TemperatureRule temperature_rule_from_string(const std::string& s);

struct SweepRange {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    Spacing spacing = Spacing::log;

    void validate() const;
    std::vector<double> values() const;  // start first, stop last
};

// One line of a figure: a laser setting and a temperature prescription.
struct SweepCurve {
    std::string id;     // file-name safe
    std::string label;
    double waist = 0.0;        // m
    double power = 0.0;        // W
    double temperature = 0.0;  // K, used when rule == fixed
    TemperatureRule rule = TemperatureRule::fixed;
};

struct SweepSpec {
    std::string name;
    IonSpecies species;
    LaserConfiguration configuration = LaserConfiguration::travelling_wave;
    double wavelength = 0.0;    // m
    double x0_over_w = 0.5;     // ion offset in the beam, follows w on the w axis
    double alpha = 0.0;         // rad, standing wave only
    double k_alpha_z0 = 0.0;    // rad, standing wave only
    SweepAxis axis = SweepAxis::omega;
    SweepRange range;
    double omega = 0.0;         // rad/s, held fixed unless swept
    double epsilon = 2.0;
    double omega_tau = 5.0;
    double vartheta_L = 0.0;
    double xi = 0.0;            // 0: designed from vartheta_L
    DynamicModel model = DynamicModel::closed_form;
    int samples = 0;            // Monte Carlo only
    std::uint64_t seed = 42;
    std::vector<SweepCurve> curves;

    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;
    double omega = 0.0;        // rad/s
    double temperature = 0.0;  // K
    double waist = 0.0;        // m
    double power = 0.0;        // W
    double x0 = 0.0;           // m
    double epsilon = 0.0;
    double xi = 0.0;
    double a_over_d = 0.0;
    double omega_tau = 0.0;
    InfidelityBreakdown budget;
};

struct SweepCurveResult {
    SweepCurve curve;
    std::vector<SweepRow> rows;
};

SweepRow sweep_point(const SweepSpec& spec, const SweepCurve& curve, double value, int threads = 0);
std::vector<SweepCurveResult> run_sweep(const SweepSpec& spec, int threads = 0);

// Index of the smallest P_total if it is not at either end of the grid, else -1.
int interior_minimum(const std::vector<SweepRow>& rows);

inline constexpr const char* kSweepSchema = "pushgate-sweep v1";

// '#' header (schema, spec, curve, units, seed, config echo) then one row per
// grid point. `config_echo` is written verbatim after "# config: ".
void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const SweepCurveResult& curve,
                     const std::string& config_echo = "");

SweepSpec fig3_preset();  // travelling wave
SweepSpec fig4_preset();  // standing wave, alpha = pi/2, k_alpha z0 = pi/4

}  // namespace pushgate
