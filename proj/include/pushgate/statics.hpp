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

#include <vector>

#include "pushgate/core_model.hpp"

namespace pushgate {

// Two-ion equilibrium. SI units throughout.
struct EquilibriumSolution {
    TrapMode mode = TrapMode::separate_microtraps;
    double d = 0.0;            // m, equilibrium separation
    double delta_d = 0.0;      // m, d - d0
    double eta = 0.0;          // ell / [m omega^2 (d0/3)^3]; +inf for a shared trap
    double epsilon = 0.0;      // Coulomb-to-trap energy ratio, 0 < epsilon <= 2
    double omega = 0.0;        // rad/s
    double omega_tilde = 0.0;  // rad/s, breathing-mode frequency omega sqrt(1 + epsilon)
    double mass = 0.0;         // kg, single-ion mass (reduced mass is mass / 2)

    // Separate-trap diagnostics: both routes to delta_d and the force-balance
    // residual at d, relative to ell / d^2.
    double delta_d_closed_form = 0.0;
    double delta_d_root_find = 0.0;
    double residual = 0.0;

    double reduced_mass() const { return 0.5 * mass; }
};

EquilibriumSolution solve_equilibrium(const IonSpecies& species, const TrapArray& trap,
                                      const PhysicalConstants& k = {});

// Closed-form separation shift Delta d / d0 as a function of eta.
double delta_d_over_d0(double eta);

// Coupling ratio epsilon as a function of eta alone (separate traps).
double epsilon_of_eta(double eta);

// Anharmonic relative-motion potential, Taylor-expanded Coulomb term to the
// retained order, constant V0 dropped. `relative_force` is F'_beta - F_alpha.
double anharmonic_potential(double r, const EquilibriumSolution& eq, double relative_force);

struct TurningPointShift {
    double closed_form = 0.0;  // zeta from the first-order expansion in E_r
    double exact = 0.0;        // mean of the two roots of V(r) = E_r + V(r_bar)
    double r_bar = 0.0;        // minimum of the anharmonic potential under the force
    double r_left = 0.0;
    double r_right = 0.0;
};

TurningPointShift turning_point_shift(const EquilibriumSolution& eq, double energy,
                                      double relative_force);

// Equilibrium of an n-ion chain. Positions are absolute, in metres, with the
// array centred on the origin.
struct ChainEquilibrium {
    std::vector<double> positions;
    std::vector<double> trap_centers;
    double max_residual = 0.0;  // largest |net force| at the solution, in hbar omega / a
};

ChainEquilibrium solve_chain_equilibrium(const IonSpecies& species, const TrapArray& trap,
                                         const PhysicalConstants& k = {});

// Trap whose nearest-neighbour pair has the requested epsilon and a/d. The
// trap frequency is chosen to hit a/d for the given species; epsilon == 2
// yields a shared linear trap.
TrapArray trap_for(const IonSpecies& species, int n_ions, double epsilon, double a_over_d,
                   const PhysicalConstants& k = {});

// Trap with the requested epsilon at a given trap frequency (rad/s). The
// microtrap separation d0 follows from d = (4 ell / (epsilon m omega^2))^(1/3).
TrapArray trap_at(const IonSpecies& species, int n_ions, double epsilon, double omega,
                  const PhysicalConstants& k = {});

}  // namespace pushgate
