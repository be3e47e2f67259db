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
#include <sstream>

#include "pushgate/errors.hpp"
#include "pushgate/statics.hpp"
#include "pushgate/sweep.hpp"

using namespace pushgate;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMHz = 2 * kPi * 1e6;

SweepSpec one_point(SweepSpec s, double omega)
{
    s.range = {omega, omega, 1, Spacing::log};
    return s;
}

}  // namespace

TEST_CASE("range grids")
{
    const SweepRange lg{1.0, 100.0, 3, Spacing::log};
    const auto v = lg.values();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(v[2] == 100.0);
    const auto lin = SweepRange{0.0, 1.0, 5, Spacing::linear}.values();
    CHECK(lin[2] == 0.5);
    CHECK(SweepRange{3.0, 3.0, 1, Spacing::log}.values() == std::vector<double>{3.0});
    CHECK_THROWS_AS((SweepRange{1.0, 2.0, 0, Spacing::log}.values()), InputError);
    CHECK_THROWS_AS((SweepRange{-1.0, 2.0, 4, Spacing::log}.values()), InputError);
    CHECK_THROWS_AS((SweepRange{2.0, 2.0, 4, Spacing::linear}.values()), InputError);
    // Descending grids are allowed and stay monotone.
    const auto down = SweepRange{10.0, 1.0, 4, Spacing::log}.values();
    for (std::size_t i = 1; i < down.size(); ++i) CHECK(down[i] < down[i - 1]);
}

TEST_CASE("enumerations round-trip")
{
    for (auto a : {SweepAxis::omega, SweepAxis::temperature, SweepAxis::waist, SweepAxis::power,
                   SweepAxis::epsilon, SweepAxis::xi})
        CHECK(sweep_axis_from_string(to_string(a)) == a);
    CHECK(to_string(SweepAxis::temperature) == "T");
    CHECK_THROWS_AS(sweep_axis_from_string("Omega"), InputError);
    CHECK(dynamic_model_from_string("monte_carlo") == DynamicModel::monte_carlo);
    CHECK(temperature_rule_from_string("ln2_quantum") == TemperatureRule::ln2_quantum);
}

TEST_CASE("trap at a given frequency")
{
    const IonSpecies ca = calcium40();
    for (double eps : {0.05, 0.5, 1.5, 2.0}) {
        const TrapArray t = trap_at(ca, 2, eps, kMHz);
        CHECK(t.omega == kMHz);
        CHECK(solve_equilibrium(ca, t).epsilon == doctest::Approx(eps).epsilon(1e-9));
    }
    TrapArray shared;
    shared.omega = kMHz;
    shared.mode = TrapMode::shared_linear_trap;
    CHECK(solve_equilibrium(ca, trap_at(ca, 2, 2.0, kMHz)).d ==
          doctest::Approx(solve_equilibrium(ca, shared).d).epsilon(1e-12));
    CHECK_THROWS_AS(trap_at(ca, 2, 2.5, kMHz), ParameterError);
    CHECK_THROWS_AS(trap_at(ca, 2, 1.0, 0.0), ParameterError);
}

TEST_CASE("figure presets reproduce the closed-form oracles at 1 MHz")
{
    // w = 4 um, P = 10 mW, x0 = 2 um, T = 538 uK.
    const SweepSpec f3 = one_point(fig3_preset(), kMHz);
    const SweepRow r3 = sweep_point(f3, f3.curves[0], kMHz);
    CHECK(r3.budget.P_thermal_spatial == doctest::Approx(2.47952142573991e-6).epsilon(1e-10));
    CHECK(r3.budget.N_scattered == doctest::Approx(0.0729805927985472).epsilon(1e-10));
    CHECK(r3.x0 == doctest::Approx(2e-6));
    CHECK(r3.temperature == 538e-6);
    // The closed-form dynamic term at the shared-trap a/d.
    DynamicErrorParams p{538e-6, kMHz, r3.a_over_d, kPi, 5.0};
    CHECK(r3.budget.P_thermal_dynamic == closed_form_dynamic_infidelity(DynamicRegime::eps2, p));
    CHECK(r3.a_over_d == doctest::Approx(std::sqrt(1.054571817e-34 / (calcium40().mass * kMHz)) / 5.60546820265874e-6)
                             .epsilon(1e-9));

    const SweepSpec f4 = one_point(fig4_preset(), kMHz);
    const SweepRow r4 = sweep_point(f4, f4.curves[0], kMHz);
    CHECK(r4.budget.P_thermal_spatial == doctest::Approx(0.0771062843627133).epsilon(1e-10));
    CHECK(r4.budget.N_scattered == doctest::Approx(2.20897822862401e-5).epsilon(1e-10));
}

TEST_CASE("figure preset structure")
{
    for (const SweepSpec& s : {fig3_preset(), fig4_preset()}) {
        const auto curves = run_sweep(s);
        REQUIRE(curves.size() == 4);
        int with_min = 0;
        for (const auto& c : curves) {
            REQUIRE(c.rows.size() == 61);
            for (std::size_t i = 0; i < c.rows.size(); ++i) {
                const SweepRow& r = c.rows[i];
                if (i) CHECK(r.omega > c.rows[i - 1].omega);
                CHECK(std::isfinite(r.budget.P_total));
                CHECK(r.budget.P_total > 0);
                CHECK(r.budget.P_total ==
                      r.budget.P_thermal_spatial + r.budget.P_thermal_dynamic + r.budget.N_scattered);
                if (c.curve.rule == TemperatureRule::ln2_quantum)
                    CHECK(r.temperature == doctest::Approx(1.054571817e-34 * r.omega / (1.380649e-23 * std::log(2.0))));
            }
            with_min += interior_minimum(c.rows) >= 0;
        }
        CHECK(with_min >= 1);
    }
}

TEST_CASE("interior minimum detection")
{
    std::vector<SweepRow> rows(3);
    rows[0].budget.P_total = 2;
    rows[1].budget.P_total = 1;
    rows[2].budget.P_total = 3;
    CHECK(interior_minimum(rows) == 1);
    rows[2].budget.P_total = 0.5;
    CHECK(interior_minimum(rows) == -1);
    rows.resize(2);
    CHECK(interior_minimum(rows) == -1);
}

TEST_CASE("other axes")
{
    SweepSpec s = fig3_preset();
    s.axis = SweepAxis::temperature;
    s.omega = kMHz;
    s.range = {1e-4, 1e-2, 3, Spacing::log};
    s.curves.resize(1);
    const auto t = run_sweep(s);
    CHECK(t[0].rows[2].temperature == 1e-2);
    CHECK(t[0].rows[2].budget.P_thermal_spatial > t[0].rows[0].budget.P_thermal_spatial);

    s.axis = SweepAxis::power;
    s.range = {1e-3, 1e-1, 3, Spacing::log};
    const auto p = run_sweep(s);
    CHECK(p[0].rows[0].budget.N_scattered == doctest::Approx(100 * p[0].rows[2].budget.N_scattered));

    s.axis = SweepAxis::waist;
    s.range = {2e-6, 4e-6, 2, Spacing::linear};
    const auto w = run_sweep(s);
    CHECK(w[0].rows[1].x0 == doctest::Approx(2e-6));

    s.axis = SweepAxis::epsilon;
    CHECK_THROWS_AS(run_sweep(s), InputError);
    s.axis = SweepAxis::xi;
    CHECK_THROWS_AS(run_sweep(s), InputError);
    s.axis = SweepAxis::omega;
    s.epsilon = 0.5;
    s.range = {kMHz, kMHz, 1, Spacing::log};
    CHECK_THROWS_AS(run_sweep(s), InputError);
    s.epsilon = 0.05;
    CHECK(run_sweep(s)[0].rows.size() == 1);
}

TEST_CASE("Monte Carlo dynamic term is deterministic and thread independent")
{
    SweepSpec s = fig3_preset();
    s.axis = SweepAxis::xi;
    s.omega = kMHz;
    s.omega_tau = 10;
    s.model = DynamicModel::monte_carlo;
    s.samples = 24;
    s.range = {0.2, 0.4, 2, Spacing::linear};
    s.curves.resize(1);
    const auto a = run_sweep(s, 1);
    const auto b = run_sweep(s, 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(a[0].rows[i].budget.P_thermal_dynamic == b[0].rows[i].budget.P_thermal_dynamic);
        CHECK(a[0].rows[i].budget.P_thermal_dynamic > 0);
        CHECK(a[0].rows[i].xi == s.range.values()[i]);
    }
    CHECK(a[0].rows[1].budget.P_thermal_dynamic > a[0].rows[0].budget.P_thermal_dynamic);
    s.samples = 0;
    CHECK_THROWS_AS(run_sweep(s), InputError);
}

TEST_CASE("sweep CSV layout")
{
    SweepSpec s = fig3_preset();
    s.range = {kMHz, 2 * kMHz, 3, Spacing::log};
    const auto curves = run_sweep(s);
    std::ostringstream os;
    write_sweep_csv(os, s, curves[1], "{\"k\":1}");
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# schema: pushgate-sweep v1");
    int comments = 1, rows = 0;
    std::string header;
    bool echo = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) {
            ++comments;
            echo = echo || line == "# config: {\"k\":1}";
            CHECK(rows == 0);
        }
        else if (header.empty()) {
            header = line;
        }
        else {
            ++rows;
        }
    }
    CHECK(echo);
    CHECK(header == "omega,P_spatial,P_dynamic,N,P_total,T,w,P,x0,epsilon,xi,a_over_d,omega_tau,valid");
    CHECK(rows == 3);
    CHECK(os.str().find("# seed: 42") != std::string::npos);
    // Full precision: the first value parses back exactly.
    const std::string last = os.str().substr(os.str().rfind('\n', os.str().size() - 2) + 1);
    CHECK(std::stod(last.substr(0, last.find(','))) == 2 * kMHz);
}
