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

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pushgate/core_model.hpp"
#include "pushgate/statics.hpp"

namespace pushgate {

enum class PulseShape { gaussian };

// State-selective push. The force acts along +x (times `sign`) on every
// addressed ion whose qubit is in |1>.
struct ForcePulse {
    double xi = 0.0;        // a F0 / (hbar omega)
    double tau = 0.0;       // s
    int sign = 1;           // push direction
    double t_center = 0.0;  // s
    double window_factor = 5.0;
    // Per-ion light-shift offsets s_i in metres; empty means all zero.
    std::vector<double> light_shift_offsets;
    // Sign of the light-shift energy. 0 follows `sign` (a detuning flip
    // reverses both); +-1 pins it independently of the push direction.
    int light_shift_sign = 0;
    // Per-ion addressing; empty means every ion.
    std::vector<bool> addressed;
    PulseShape shape = PulseShape::gaussian;

    void validate(int n_ions) const;
    double profile(double t) const;  // e^{-((t - t_c)/tau)^2}
    bool addresses(int ion) const { return addressed.empty() || addressed[ion]; }
    double offset(int ion) const
    {
        return light_shift_offsets.empty() ? 0.0 : light_shift_offsets[ion];
    }
    int effective_light_shift_sign() const { return light_shift_sign == 0 ? sign : light_shift_sign; }
};

// F(t) in newtons.
double force_at(const ForcePulse& pulse, double t, const UnitScales& scales);

// Thermal or explicit starting point. Mode amplitudes refer to
// q_k(t) = A_k cos(Omega_k t + psi_k) with t measured on the pulse clock, so
// psi is the phase at t = 0 (the pulse centre), as in the adiabatic solution.
struct InitialConditions {
    std::vector<double> mode_energy;  // J, ascending mode frequency
    std::vector<double> mode_phase;   // rad in [0, 2 pi)
    // Explicit per-ion displacement from equilibrium (m) and momentum (kg m/s)
    // at the window start. When non-empty these replace the mode description.
    std::vector<double> displacement;
    std::vector<double> momentum;

    void validate(int n_ions) const;
    bool is_raw() const { return !displacement.empty(); }
};

// Normal modes of the chain about equilibrium, mass-weighted, in internal units.
struct NormalModes {
    Eigen::VectorXd frequency;  // in units of omega, ascending
    Eigen::MatrixXd vectors;    // columns; last component of each made positive
};

// Everything the equations of motion need, precomputed in internal units.
struct SystemModel {
    IonSpecies species;
    TrapArray trap;
    PhysicalConstants constants;
    UnitScales scales;
    EquilibriumSolution pair;   // nearest-pair statics
    std::vector<double> x_eq;   // equilibrium positions, units of a
    std::vector<double> centers;
    double ell = 0.0;           // ell / (hbar omega a)
    NormalModes modes;

    int n() const { return static_cast<int>(x_eq.size()); }
};

SystemModel make_system(const IonSpecies& species, const TrapArray& trap,
                        const PhysicalConstants& k = {});

struct IntegrationOptions {
    double rtol = 1e-10;
    // Record the trajectory every `record_every` accepted steps (0 disables
    // recording; the end points are always kept when recording).
    int record_every = 1;
    // If > 0, resample onto this many uniformly spaced times via dense output.
    int record_uniform = 0;
};

struct IntegratorStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
    double max_error_norm = 0.0;
    double rtol = 0.0;
};

// Accumulated -(1/hbar) int H dt, split by Hamiltonian term. `coulomb` is the
// excess over the equilibrium value; the equilibrium Coulomb energy and the
// static trap energy sit in `global_constant`, of which `coulomb_baseline` is
// the Coulomb part.
struct PhaseBreakdown {
    double kinetic = 0.0;
    double trap_potential = 0.0;
    double force_term = 0.0;
    double light_shift_term = 0.0;
    double coulomb = 0.0;
    double global_constant = 0.0;
    double coulomb_baseline = 0.0;

    double total() const
    {
        return kinetic + trap_potential + force_term + light_shift_term + coulomb +
               global_constant;
    }
    // Full Coulomb phase -(1/hbar) int ell/|x_j - x_i| dt summed over pairs.
    double interaction() const { return coulomb + coulomb_baseline; }
    double directly_summed_total = 0.0;  // integrated as one quadrature
};

struct Trajectory {
    std::string branch;
    int n_ions = 0;
    double t0 = 0.0, t1 = 0.0;                   // s
    std::vector<double> times;                   // s
    std::vector<std::vector<double>> positions;  // m, absolute, [ion][sample]
    std::vector<std::vector<double>> momenta;    // kg m/s
    std::vector<double> final_displacement;      // units of a
    std::vector<double> final_velocity;          // units of a omega
    PhaseBreakdown phase;
    IntegratorStats stats;
    double min_separation = 0.0;  // m
};

// Integration window [min t_c - w tau, max t_c + w tau] in seconds.
std::pair<double, double> pulse_window(const std::vector<ForcePulse>& pulses);

Trajectory integrate_branch(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                            const std::string& branch, const InitialConditions& init,
                            const IntegrationOptions& opt = {});

Trajectory integrate_branch(const IonSpecies& species, const TrapArray& trap,
                            const EquilibriumSolution& eq, const std::vector<ForcePulse>& pulses,
                            const std::string& branch, const InitialConditions& init,
                            const IntegrationOptions& opt = {});

// Per-ion displacement and velocity (internal units) at time t (internal
// units) for the given initial conditions.
void initial_state(const SystemModel& sys, const InitialConditions& init, double t,
                   std::vector<double>& u, std::vector<double>& v);

// Total mechanical energy of the free chain (no force), in hbar omega.
double chain_energy(const SystemModel& sys, const std::vector<double>& u,
                    const std::vector<double>& v);

struct AdiabaticSolution {
    std::vector<double> times;  // s
    std::vector<double> R_bar, r_bar;  // m
    std::vector<double> Delta, delta;  // m, oscillatory terms (delta includes zeta)
    std::vector<double> zeta;          // m
};

// Two-ion adiabatic approximation on `n_points` uniform times over the window.
// Throws ParameterError when omega tau < 4 and `strict` is set.
AdiabaticSolution adiabatic_trajectory(const EquilibriumSolution& eq, const UnitScales& scales,
                                       const ForcePulse& pulse, const std::string& branch,
                                       const InitialConditions& init, int n_points = 201,
                                       bool strict = true);

struct ModeCoordinates {
    double R = 0.0, P = 0.0, r = 0.0, p = 0.0;
};

// R = (x1 + x2)/2, r = x2 - x1 - d, P = M dR/dt, p = mu dr/dt.
ModeCoordinates mode_transform(double x1, double x2, double p1, double p2, double d);
void inverse_mode_transform(const ModeCoordinates& c, double d, double& x1, double& x2,
                            double& p1, double& p2);

// CSV with '#' header lines carrying the branch and the supplied metadata.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::map<std::string, std::string>& metadata = {});

}  // namespace pushgate
