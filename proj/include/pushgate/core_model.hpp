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

#include <optional>
#include <string>

namespace pushgate {

// CODATA 2018 values. Overridable only for testing.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;           // J s
    double epsilon0 = 8.8541878128e-12;      // F/m
    double c = 299792458.0;                  // m/s
    double kB = 1.380649e-23;                // J/K
    double elementary_charge = 1.602176634e-19;  // C

    void validate() const;
};

inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kElectronMass = 9.1093837015e-31;     // kg

struct IonSpecies {
    std::string label;
    double mass = 0.0;                   // kg
    double charge = 0.0;                 // C
    double transition_wavelength = 0.0;  // m
    std::optional<double> doppler_temperature;  // K

    void validate() const;
};

// 40Ca+ with the 4S1/2 <-> 4P1/2 line at 397 nm.
IonSpecies calcium40(const PhysicalConstants& k = {});

enum class TrapMode { separate_microtraps, shared_linear_trap };

struct TrapArray {
    int n_ions = 2;
    double omega = 0.0;  // rad/s
    double d0 = 0.0;     // m, bare microtrap separation (unused for a shared trap)
    TrapMode mode = TrapMode::separate_microtraps;

    void validate() const;
};

const char* to_string(TrapMode mode);
TrapMode trap_mode_from_string(const std::string& s);

// Natural units of the problem. Internally everything runs with lengths in
// `a`, times in 1/omega and energies in hbar*omega, so m = hbar = omega = 1.
struct UnitScales {
    double a = 0.0;                     // m, sqrt(hbar / (m omega))
    double time_unit = 0.0;             // s, 1 / omega
    double energy_unit = 0.0;           // J, hbar omega
    double coulomb_constant_ell = 0.0;  // J m, q^2 / (4 pi epsilon0)

    double force_unit() const { return energy_unit / a; }
    double momentum_unit() const { return energy_unit * time_unit / a; }

    double length_to_si(double x) const { return x * a; }
    double length_from_si(double x) const { return x / a; }
    double time_to_si(double t) const { return t * time_unit; }
    double time_from_si(double t) const { return t / time_unit; }
    double energy_to_si(double e) const { return e * energy_unit; }
    double energy_from_si(double e) const { return e / energy_unit; }
    double force_to_si(double f) const { return f * force_unit(); }
    double force_from_si(double f) const { return f / force_unit(); }

    // ell / (hbar omega a): the Coulomb constant in internal units.
    double ell_dimensionless() const { return coulomb_constant_ell / (energy_unit * a); }
};

UnitScales derive_scales(const IonSpecies& species, const TrapArray& trap,
                         const PhysicalConstants& k = {});

}  // namespace pushgate
