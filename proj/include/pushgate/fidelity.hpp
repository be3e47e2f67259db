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
#include <ostream>
#include <string>
#include <vector>

#include "pushgate/phases.hpp"

namespace pushgate {

struct ThermalEnsemble {
    double temperature = 0.0;  // K
    int n_samples = 1;
    std::uint64_t seed = 0;
    // Optional per-mode temperatures (K), ascending mode frequency.
    std::vector<double> mode_temperatures;

    void validate() const;
    double mode_temperature(int mode) const;
};

// Per-sample phases with departures from the ensemble mean.
struct PhaseSampleSet {
    int n_qubits = 0;
    std::vector<std::vector<double>> phases;  // [sample][branch]
    std::vector<double> mean;                 // per branch
    std::vector<std::vector<double>> delta;   // phases - mean
    std::vector<double> zero_temperature;     // reference table, may be empty
    std::vector<PhaseTable> tables;           // full tables when simulated
    ThermalEnsemble ensemble;
    std::map<std::string, std::string> metadata;

    int size() const { return static_cast<int>(phases.size()); }
    int branches() const { return 1 << n_qubits; }
};

PhaseSampleSet make_sample_set(std::vector<std::vector<double>> phases);

// Sum with pairwise (cascade) summation; result independent of thread layout.
double pairwise_sum(const double* x, std::size_t n);

enum class FidelityOrder { state_first, sample_first };

std::string to_string(FidelityOrder o);
FidelityOrder fidelity_order_from_string(const std::string& s);

struct WorstCaseResult {
    double fidelity = 1.0;
    double infidelity = 0.0;     // 1 - F evaluated without cancellation
    std::vector<double> weights;  // |c_k|^2 of the worst state (state_first)
    FidelityOrder order = FidelityOrder::state_first;
    bool echo = false;
    int iterations = 0;
};

// Departures used by the fidelity: delta Theta, or delta Theta_k + delta Theta_{~k} with echo.
std::vector<std::vector<double>> fidelity_phases(const PhaseSampleSet& s, bool echo);

// K_kl = <2 sin^2((d_k - d_l)/2)> = 1 - <cos(d_k - d_l)>.
std::vector<std::vector<double>> infidelity_matrix(const std::vector<std::vector<double>>& d);

// max over the simplex of p^T K p (equivalently min of p^T M p); returns the
// maximiser. Active-set method with least-norm KKT solves.
double simplex_qp_max(const std::vector<std::vector<double>>& K, std::vector<double>& p_out,
                      int* iterations = nullptr);
// Exhaustive over supports; for checking, n <= 12.
double simplex_qp_max_enumerate(const std::vector<std::vector<double>>& K, std::vector<double>& p_out);

// 1 - F for one sample: sin^2 of half the covering arc, or 1 if no half circle holds the phases.
double sample_worst_infidelity(const std::vector<double>& phases);

WorstCaseResult worst_case_fidelity(const PhaseSampleSet& samples, bool echo = false,
                                    FidelityOrder order = FidelityOrder::state_first);

struct MonteCarloOptions {
    int threads = 0;  // 0: PUSHGATE_THREADS or the hardware count
    IntegrationOptions integration;
};

// Thread count after the PUSHGATE_THREADS cap.
int resolve_threads(int requested);

// Initial conditions for sample `index` (classical thermal oscillators per mode).
InitialConditions thermal_sample(const SystemModel& sys, const ThermalEnsemble& ens, std::uint64_t index);

PhaseSampleSet monte_carlo_phase_samples(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                                         const ThermalEnsemble& ens, const MonteCarloOptions& opt = {});

enum class LaserConfiguration { travelling_wave, standing_wave };

std::string to_string(LaserConfiguration c);
LaserConfiguration laser_configuration_from_string(const std::string& s);

struct LaserGeometry {
    LaserConfiguration configuration = LaserConfiguration::travelling_wave;
    double waist = 0.0;       // m
    double x0 = 0.0;          // m, ion offset in the beam profile
    double wavelength = 0.0;  // m
    double alpha = 0.0;       // rad, angle between the standing-wave beams
    double z0 = 0.0;          // m, ion position in the standing wave
    double power = 0.0;       // W

    void validate() const;
    double k_alpha() const;  // (4 pi / lambda) sin(alpha / 2)
};

double q_polynomial(double y);  // 12y^4 - 64y^2 + 89 - 34/y^2 + 1/y^4

double spatial_infidelity(const LaserGeometry& geom, const IonSpecies& species, double omega,
                          double temperature, const PhysicalConstants& k = {});
double photon_scattering(const LaserGeometry& geom, const IonSpecies& species, double omega,
                         const PhysicalConstants& k = {});

enum class DynamicRegime { small_eps, eps2 };

struct DynamicErrorParams {
    double temperature = 0.0;  // K
    double omega = 0.0;        // rad/s
    double a_over_d = 0.0;
    double vartheta_L = 0.0;  // eps2 only
    double omega_tau = 0.0;   // eps2 only
};

double closed_form_dynamic_infidelity(DynamicRegime regime, const DynamicErrorParams& p,
                                   const PhysicalConstants& k = {});
// [2 (2 / (3 omega tau))^2 + 1]^2
double dynamic_bracket_squared(double omega_tau);

struct InfidelityBreakdown {
    double P_thermal_spatial = 0.0;
    double P_thermal_dynamic = 0.0;
    double N_scattered = 0.0;
    double P_total = 0.0;
    bool valid = true;  // false when P or N exceeds 0.1
};

InfidelityBreakdown total_infidelity(double spatial, double dynamic, double scattered);

void write_samples_csv(std::ostream& os, const PhaseSampleSet& s);
std::string fidelity_json(const WorstCaseResult& r, const PhaseSampleSet& s);

}  // namespace pushgate
