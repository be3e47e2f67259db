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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pushgate/core_model.hpp"
#include "pushgate/errors.hpp"

using namespace pushgate;

namespace {

TrapArray mhz_trap(double mhz = 1.0)
{
    TrapArray t;
    t.n_ions = 2;
    t.omega = 2.0 * std::numbers::pi * mhz * 1e6;
    t.d0 = 10e-6;
    return t;
}

}  // namespace

TEST_CASE("ground-state length for Ca-40 at 1 MHz")
{
    const UnitScales s = derive_scales(calcium40(), mhz_trap());
    // sqrt(hbar / m omega) at 30 digits with the preset mass.
    CHECK(s.a == doctest::Approx(1.59037580494024e-8).epsilon(1e-13));
    CHECK(s.force_unit() == doctest::Approx(4.16635497431317e-20).epsilon(1e-13));
    CHECK(s.time_unit == doctest::Approx(1.0 / (2e6 * std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("a scales as m^-1/2 and omega^-1/2")
{
    IonSpecies heavy = calcium40();
    heavy.mass *= 4.0;
    const double a = derive_scales(calcium40(), mhz_trap()).a;
    CHECK(derive_scales(heavy, mhz_trap()).a == doctest::Approx(a / 2).epsilon(1e-14));
    CHECK(derive_scales(calcium40(), mhz_trap(4.0)).a == doctest::Approx(a / 2).epsilon(1e-14));
}

TEST_CASE("unit round trips")
{
    const UnitScales s = derive_scales(calcium40(), mhz_trap());
    for (double x : {1e-3, 0.7, 3.0, 1234.5}) {
        CHECK(s.length_from_si(s.length_to_si(x)) == doctest::Approx(x).epsilon(1e-14));
        CHECK(s.time_from_si(s.time_to_si(x)) == doctest::Approx(x).epsilon(1e-14));
        CHECK(s.energy_from_si(s.energy_to_si(x)) == doctest::Approx(x).epsilon(1e-14));
        CHECK(s.force_from_si(s.force_to_si(x)) == doctest::Approx(x).epsilon(1e-14));
    }
}

TEST_CASE("derive_scales is pure")
{
    const UnitScales a = derive_scales(calcium40(), mhz_trap());
    const UnitScales b = derive_scales(calcium40(), mhz_trap());
    CHECK(a.a == b.a);
    CHECK(a.coulomb_constant_ell == b.coulomb_constant_ell);
    CHECK(a.energy_unit == b.energy_unit);
}

TEST_CASE("domain errors")
{
    IonSpecies s = calcium40();
    s.mass = -1.0;
    CHECK_THROWS_AS(derive_scales(s, mhz_trap()), ParameterError);
    TrapArray t = mhz_trap();
    t.omega = 0.0;
    CHECK_THROWS_AS(derive_scales(calcium40(), t), ParameterError);
    t = mhz_trap();
    t.n_ions = 5;
    CHECK_THROWS_AS(t.validate(), ParameterError);
    t = mhz_trap();
    t.d0 = 0.0;
    CHECK_THROWS_AS(t.validate(), ParameterError);
    t.mode = TrapMode::shared_linear_trap;
    CHECK_NOTHROW(t.validate());
    CHECK_THROWS_AS(trap_mode_from_string("ring"), ParameterError);
    CHECK(trap_mode_from_string(to_string(TrapMode::shared_linear_trap)) ==
          TrapMode::shared_linear_trap);
}
