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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "pushgate/dynamics.hpp"

namespace pushgate {

// Phases of every computational-basis branch. Index k holds branch
// `branch_label(k, n)`, qubit 1 being the most significant bit.
struct PhaseTable {
    int n_qubits = 0;
    std::vector<double> phases;               // Theta, unwrapped, rad
    std::vector<PhaseBreakdown> breakdown;
    // Signed peak force (sign * xi) and geometry, used by coefficient fits.
    double xi = 0.0;
    double a_over_d = 0.0;
    double epsilon = 0.0;
    double omega_tau = 0.0;
    std::map<std::string, std::string> metadata;

    int size() const { return static_cast<int>(phases.size()); }
    double operator[](int k) const { return phases[k]; }
    double at(const std::string& branch) const;
    // Coulomb interaction phase phi of branch k.
    double phi(int k) const { return breakdown[k].interaction(); }
    void validate() const;
};

std::string branch_label(int index, int n_qubits);
int branch_index(const std::string& branch);

// Table from explicit phases (no breakdown detail beyond the totals).
PhaseTable make_table(const std::vector<double>& phases);

PhaseTable accumulate_phases(const std::vector<Trajectory>& trajectories);

// Integrate every branch with shared initial conditions and assemble the table.
PhaseTable simulate_phase_table(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                                const InitialConditions& init = {},
                                const IntegrationOptions& opt = {});

double overall_phase_2q(const PhaseTable& table);
double overall_phase_3q(const PhaseTable& table);

// The same combinations applied term by term.
PhaseBreakdown overall_breakdown_2q(const PhaseTable& table);
PhaseBreakdown overall_breakdown_3q(const PhaseTable& table);

// Combinations of the interaction phases phi alone.
double interaction_phase_2q(const PhaseTable& table);
double interaction_phase_3q(const PhaseTable& table);

// Pairwise controlled-phase content of a three-qubit table:
// Theta_{pair=11} - Theta_{pair=10} - Theta_{pair=01} + Theta_{000}, third qubit in 0.
// Order: (1,2), (1,3), (2,3).
std::array<double, 3> pairwise_phases_3q(const PhaseTable& table);

double analytic_theta(double eps, double omega_tau, double xi);
double analytic_vartheta_general(double eps, double omega_tau, double xi);
// Shared trap. With `with_bracket` false this is theta/3.
double analytic_vartheta_linear(double omega_tau, double xi, bool with_bracket = true);
std::array<double, 8> analytic_phi3_table(double theta);

struct AnalyticPhases {
    double theta = 0.0;
    double vartheta_general = 0.0;
    double vartheta_linear = 0.0;
    double theta1 = 0.0;  // order-one normalisation of the linear term
    double theta2 = 0.0;
    std::array<double, 8> phi3_table{};
};

AnalyticPhases analytic_phases(double eps, double omega_tau, double xi);

struct ThetaCoefficients {
    double theta1 = 0.0;  // normalised: linear antisymmetric phase times xi a / (2 d)
    double theta2 = 0.0;  // quadratic symmetric phase at the first table's xi
    double antisymmetric_raw = 0.0;  // linear part of phi_10 - phi_01 at the first table's xi
    double residual = 0.0;           // largest misfit of the two-term model
};

// Two tables that differ only in the signed force.
ThetaCoefficients extract_theta_coefficients(const PhaseTable& a, const PhaseTable& b);
// A single table with zero force.
ThetaCoefficients extract_theta_coefficients(const PhaseTable& zero_force);

enum class DesignModel { analytic, simulated };

struct GateDesign {
    double omega_tau = 0.0;
    double tau = 0.0;               // s (0 when no trap frequency is known)
    double vartheta_analytic = 0.0;  // lin16 at the chosen omega tau
    double vartheta_simulated = 0.0;  // filled for the simulated model
    int evaluations = 0;
};

inline constexpr double kMinOmegaTau = 5.0;

// Analytic inversion of the general-epsilon phase law for omega tau.
double design_omega_tau(double eps, double xi, double target_phase);

GateDesign design_gate_time(double eps, double xi, double target_phase, DesignModel model);
GateDesign design_gate_time(const SystemModel& sys, double xi, double target_phase,
                            DesignModel model, const IntegrationOptions& opt = {});

// JSON text with phases, breakdown and metadata.
std::string phase_table_json(const PhaseTable& table);

}  // namespace pushgate
