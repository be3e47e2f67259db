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

#include "pushgate/core_model.hpp"

#include <cmath>
#include <numbers>

#include "pushgate/errors.hpp"

namespace pushgate {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError("core_model", std::string(name) + " must be finite and > 0");
}

}  // namespace

void PhysicalConstants::validate() const
{
    require_positive(hbar, "hbar");
    require_positive(epsilon0, "epsilon0");
    require_positive(c, "c");
    require_positive(kB, "kB");
    require_positive(elementary_charge, "elementary_charge");
}

void IonSpecies::validate() const
{
    require_positive(mass, "mass");
    require_positive(charge, "charge");
    require_positive(transition_wavelength, "transition_wavelength");
    if (doppler_temperature && !(*doppler_temperature >= 0.0))
        throw ParameterError("core_model", "doppler_temperature must be >= 0");
}

IonSpecies calcium40(const PhysicalConstants& k)
{
    IonSpecies s;
    s.label = "40Ca+";
    s.mass = 39.962590863 * kAtomicMassUnit - kElectronMass;
    s.charge = k.elementary_charge;
    s.transition_wavelength = 397e-9;
    s.doppler_temperature = 538e-6;
    return s;
}

void TrapArray::validate() const
{
    if (n_ions < 1 || n_ions > 4)
        throw ParameterError("core_model", "n_ions must be in {1,2,3,4}");
    require_positive(omega, "omega");
    if (mode == TrapMode::separate_microtraps)
        require_positive(d0, "d0");
}

const char* to_string(TrapMode mode)
{
    switch (mode) {
    case TrapMode::separate_microtraps: return "separate_microtraps";
    case TrapMode::shared_linear_trap: return "shared_linear_trap";
    }
    return "?";
}

TrapMode trap_mode_from_string(const std::string& s)
{
    if (s == "separate_microtraps") return TrapMode::separate_microtraps;
    if (s == "shared_linear_trap") return TrapMode::shared_linear_trap;
    throw ParameterError("core_model", "unknown trap mode '" + s + "'");
}

UnitScales derive_scales(const IonSpecies& species, const TrapArray& trap,
                         const PhysicalConstants& k)
{
    k.validate();
    species.validate();
    require_positive(trap.omega, "omega");

    UnitScales u;
    u.a = std::sqrt(k.hbar / (species.mass * trap.omega));
    u.time_unit = 1.0 / trap.omega;
    u.energy_unit = k.hbar * trap.omega;
    u.coulomb_constant_ell =
        species.charge * species.charge / (4.0 * std::numbers::pi * k.epsilon0);
    return u;
}

}  // namespace pushgate
