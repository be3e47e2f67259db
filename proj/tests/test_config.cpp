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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pushgate/config.hpp"
#include "pushgate/errors.hpp"
#include "pushgate/statics.hpp"

using namespace pushgate;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_config(text);
    }
    catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal configuration and defaults")
{
    const RunConfig c = parse_config(R"({"trap": {"epsilon": 0.5, "a_over_d": 0.001},
                                         "pulse": {"xi": 0.3, "omega_tau": 10}})");
    CHECK(c.species.preset == "calcium40");
    REQUIRE(c.trap);
    CHECK(c.trap->n_ions == 2);
    CHECK(c.sequence.kind == "single");
    CHECK(!c.ensemble);
    CHECK(c.pulse->sign == 1);
    const IonSpecies s = c.species.resolve();
    const TrapArray t = c.trap->resolve(s);
    CHECK(solve_equilibrium(s, t).epsilon == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("unknown keys are rejected with their paths")
{
    const std::string e = error_of(R"({"trap": {"epsilon": 0.5, "a_over_d": 0.001, "omgea": 1},
                                       "pulse": {"xi": 0.3, "foo": 2}, "bogus": true})");
    CHECK(e.find("trap.omgea: unknown key") != std::string::npos);
    CHECK(e.find("pulse.foo: unknown key") != std::string::npos);
    CHECK(e.find("bogus: unknown key") != std::string::npos);
    CHECK(error_of(R"({"sweep": {"curves": [{"id": "a", "wasit": 1}]}})").find("sweep.curves[0].wasit") !=
          std::string::npos);
}

TEST_CASE("type, range and schema errors")
{
    CHECK(error_of(R"({"trap": {"epsilon": "two", "a_over_d": 0.001}})").find("trap.epsilon: expected number") !=
          std::string::npos);
    CHECK(error_of(R"({"trap": {"epsilon": 0.5, "a_over_d": -1}})").find("trap.a_over_d: must be > 0") !=
          std::string::npos);
    CHECK(error_of(R"({"trap": {"epsilon": 3, "a_over_d": 0.001}})").find("<= 2") != std::string::npos);
    CHECK(error_of(R"({"trap": {"n_ions": 2}})").find("trap: give") != std::string::npos);
    CHECK(error_of(R"({"trap": {"omega": 1e6, "mode": "separate_microtraps"}})").find("trap.d0") !=
          std::string::npos);
    CHECK(error_of(R"({"pulse": {"sign": 2}})").find("pulse.sign") != std::string::npos);
    CHECK(error_of(R"({"sequence": {"kind": "triple"}})").find("sequence.kind") != std::string::npos);
    CHECK(error_of(R"({"ensemble": {"temperature": 1e-3, "kT_over_hbar_omega": 2}})").find("exclusive") !=
          std::string::npos);
    CHECK(error_of(R"({"laser": {"waist": 4e-6}})").find("laser: waist and power") != std::string::npos);
    CHECK(error_of(R"({"sweep": {"axis": "frequency"}})").find("sweep.axis") != std::string::npos);
    CHECK(error_of(R"({"tolerances": {"c1": -1}})").find("tolerances.c1") != std::string::npos);
    CHECK(error_of(R"({"species": {"preset": "custom", "mass": 1e-25}})").find("custom needs") !=
          std::string::npos);
    CHECK(error_of("[1, 2]").find("top level") != std::string::npos);
    CHECK(error_of("{\"trap\": ").find("malformed JSON") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("every preset echoes to a fixed point")
{
    for (const auto& name : preset_names()) {
        const RunConfig c = preset_config(name);
        const std::string e1 = config_json(c);
        const std::string e2 = config_json(parse_config(e1));
        CHECK(e1 == e2);
        CHECK(parse_config(e1).preset == name);
    }
    CHECK_THROWS_AS(preset_config("fig5"), ConfigError);
}

TEST_CASE("echo keeps full double precision")
{
    RunConfig c = preset_config("two_ion_smalleps");
    c.pulse->xi = 0.1 + 0.2;
    c.trap->a_over_d = std::nextafter(1e-3, 1.0);
    const RunConfig back = parse_config(config_json(c));
    CHECK(*back.pulse->xi == 0.1 + 0.2);
    CHECK(*back.trap->a_over_d == std::nextafter(1e-3, 1.0));
}

TEST_CASE("presets overlaid with a file")
{
    const RunConfig a = resolve_config("two_ion_smalleps", R"({"pulse": {"xi": 0.25}})");
    CHECK(*a.pulse->xi == 0.25);
    CHECK(*a.pulse->omega_tau == 20.0);
    CHECK(a.preset == "two_ion_smalleps");
    const RunConfig b = resolve_config("", R"({"preset": "toffoli", "sequence": {"pi_variant": true}})");
    CHECK(b.trap->n_ions == 3);
    CHECK(b.sequence.pi_variant);
    CHECK(b.sequence.kind == "toffoli");
    const RunConfig d = resolve_config("fig3", "");
    REQUIRE(d.sweep);
    CHECK(d.sweep->curves.size() == 4);
    CHECK_THROWS_AS(resolve_config("two_ion_smalleps", R"({"pulse": {"xii": 1}})"), ConfigError);
}

TEST_CASE("block resolution")
{
    const IonSpecies ca = calcium40();
    EnsembleConfig e;
    e.kT_over_hbar_omega = 2.0;
    CHECK(e.temperature_K(1e6) == doctest::Approx(2 * 1.054571817e-34 * 1e6 / 1.380649e-23));
    e.kT_over_hbar_omega.reset();
    e.temperature = 1e-3;
    CHECK(e.temperature_K(1e6) == 1e-3);

    LaserConfig l;
    l.waist = 4e-6;
    l.power = 1e-2;
    const LaserGeometry g = l.resolve(ca);
    CHECK(g.x0 == 2e-6);
    CHECK(g.wavelength == ca.transition_wavelength);
    l.configuration = "standing_wave";
    l.alpha = std::numbers::pi / 2;
    l.k_alpha_z0 = std::numbers::pi / 4;
    const LaserGeometry sw = l.resolve(ca);
    CHECK(sw.k_alpha() * sw.z0 == doctest::Approx(std::numbers::pi / 4));

    TrapConfig t;
    t.omega = 2 * std::numbers::pi * 1e6;
    t.mode = "shared_linear_trap";
    CHECK(solve_equilibrium(ca, t.resolve(ca)).d == doctest::Approx(5.60546820265874e-6).epsilon(1e-9));
    t.mode.reset();
    t.epsilon = 1.0;
    CHECK(t.resolve(ca).omega == t.omega.value());

    SpeciesConfig sp;
    sp.mass = 2 * ca.mass;
    CHECK(sp.resolve().mass == 2 * ca.mass);
}

TEST_CASE("sweep block resolves to the preset spec")
{
    const RunConfig c = preset_config("fig4");
    const SweepSpec a = c.sweep->resolve(c.species.resolve());
    const SweepSpec b = fig4_preset();
    CHECK(a.range.values() == b.range.values());
    CHECK(a.alpha == b.alpha);
    CHECK(a.k_alpha_z0 == b.k_alpha_z0);
    REQUIRE(a.curves.size() == b.curves.size());
    for (std::size_t i = 0; i < a.curves.size(); ++i) {
        const SweepRow x = sweep_point(a, a.curves[i], 3e6), y = sweep_point(b, b.curves[i], 3e6);
        CHECK(x.budget.P_total == y.budget.P_total);
    }
}

TEST_CASE("pulse construction")
{
    const IonSpecies ca = calcium40();
    const SystemModel sys = make_system(ca, trap_for(ca, 2, 0.5, 1e-3));
    PulseConfig p;
    CHECK_THROWS_AS(make_pulse(p, sys), ConfigError);
    p.xi = 0.3;
    p.omega_tau = 10;
    p.addressed = {true, false};
    const ForcePulse f = make_pulse(p, sys);
    CHECK(f.tau == 10 / sys.trap.omega);
    CHECK(!f.addresses(1));
    p.addressed = {true};
    CHECK_THROWS(make_pulse(p, sys));
}
