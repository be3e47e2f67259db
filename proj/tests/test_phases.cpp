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
#include "pushgate/errors.hpp"
#include "pushgate/phases.hpp"

using namespace pushgate;

namespace {

SystemModel pair_system(double eps, double a_over_d = 1e-3)
{
    return make_system(calcium40(), trap_for(calcium40(), 2, eps, a_over_d));
}

ForcePulse push(const SystemModel& s, double xi, double omega_tau)
{
    ForcePulse p;
    p.xi = xi;
    p.tau = omega_tau / s.trap.omega;
    return p;
}

}  // namespace

TEST_CASE("branch labels")
{
    CHECK(branch_label(6, 3) == "110");
    CHECK(branch_index("101") == 5);
    CHECK(branch_label(branch_index("0110"), 4) == "0110");
    CHECK_THROWS_AS(branch_index("012"), InputError);
}

TEST_CASE("zero force: shared Coulomb constant and no gate phase")
{
    const SystemModel s = pair_system(0.5);
    ForcePulse p = push(s, 0.0, 10);
    const PhaseTable t = simulate_phase_table(s, {p});
    const double span = s.scales.time_from_si(2 * p.window_factor * p.tau);
    const double expect = -s.ell / (s.x_eq[1] - s.x_eq[0]) * span;
    for (int k = 0; k < 4; ++k) {
        CHECK(t.breakdown[k].coulomb_baseline == doctest::Approx(expect).epsilon(1e-14));
        CHECK(t.phi(k) == t.phi(0));
    }
    CHECK(overall_phase_2q(t) == 0.0);
}

TEST_CASE("overall phase definitions")
{
    CHECK(overall_phase_2q(make_table({0.3, 0.3, 0.3, 0.3})) == doctest::Approx(0.0));
    CHECK(overall_phase_2q(make_table({0, 0, 0, std::numbers::pi})) == std::numbers::pi);
    CHECK(overall_phase_2q(make_table({1, 2, 3, 4})) == 0.0);
    CHECK(overall_phase_3q(make_table(std::vector<double>(8, 0.0))) == 0.0);
    std::vector<double> only(8, 0.0);
    only[7] = std::numbers::pi;
    CHECK(overall_phase_3q(make_table(only)) == std::numbers::pi);
    CHECK_THROWS_AS(overall_phase_3q(make_table({0, 0, 0, 0})), InputError);
}

TEST_CASE("three-qubit structure of the analytic table")
{
    const double th = 0.37;
    const auto phi = analytic_phi3_table(th);
    const PhaseTable t = make_table({phi.begin(), phi.end()});
    CHECK(overall_phase_3q(t) == doctest::Approx(17 * th / 8).epsilon(1e-14));
    const auto pw = pairwise_phases_3q(t);
    CHECK(pw[0] == doctest::Approx(th).epsilon(1e-14));
    CHECK(pw[1] == doctest::Approx(th / 8).epsilon(1e-14));
    CHECK(pw[2] == doctest::Approx(th).epsilon(1e-14));
    CHECK(phi[0] == 0.0);
    CHECK(phi[7] == 0.0);
}

TEST_CASE("closed forms")
{
    CHECK(analytic_theta(0.1, 50, 0.5) == doctest::Approx(0.783321).epsilon(1e-6));
    CHECK(analytic_theta(0.2, 50, 0.5) == doctest::Approx(2 * analytic_theta(0.1, 50, 0.5)));
    CHECK(analytic_theta(0.1, 50, 1e-4) / analytic_theta(0.1, 50, 1e-2) == doctest::Approx(1e-4));
    // Bracket at epsilon = 2, omega tau = 5.
    const double br = analytic_vartheta_general(2, 5, 1) / (analytic_theta(2, 5, 1) / 3);
    CHECK(br == doctest::Approx(1 - 4.0 / 75).epsilon(1e-14));
    CHECK(br == doctest::Approx(0.946667).epsilon(1e-6));
    CHECK(analytic_vartheta_general(2, 1e6, 0.5) / analytic_theta(2, 1e6, 0.5) == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(analytic_vartheta_general(1e-9, 1e6, 0.5) / analytic_theta(1e-9, 1e6, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(analytic_vartheta_linear(7, 0.4) == analytic_vartheta_general(2, 7, 0.4));
    CHECK(analytic_vartheta_linear(7, 0.4, false) == doctest::Approx(analytic_theta(2, 7, 0.4) / 3));

    // Force ratio between a shared trap and separate traps at equal omega tau.
    const double wt = 12, eps = 0.05;
    const double xi = std::sqrt(std::numbers::pi / analytic_theta(eps, wt, 1.0));
    const double xiL = std::sqrt(std::numbers::pi / analytic_vartheta_linear(wt, 1.0, false));
    CHECK(xiL / xi == doctest::Approx(std::sqrt(1.5 * eps)).epsilon(1e-12));
}

TEST_CASE("general-epsilon phase law against simulation")
{
    for (double eps : {0.5, 1.0, 2.0})
        for (double wt : {10.0, 20.0})
            for (double xi : {0.1, 0.3}) {
                const SystemModel s = pair_system(eps);
                const double sim = overall_phase_2q(simulate_phase_table(s, {push(s, xi, wt)}));
                const double ref = analytic_vartheta_general(eps, wt, xi);
                CHECK(std::abs(sim / ref - 1) < 0.03);
            }
}

TEST_CASE("small-epsilon simulation follows the general law")
{
    const SystemModel s = pair_system(0.01);
    const double sim = overall_phase_2q(simulate_phase_table(s, {push(s, 0.2, 20)}));
    CHECK(sim == doctest::Approx(analytic_vartheta_general(0.01, 20, 0.2)).epsilon(1e-3));
}

TEST_CASE("phase scales as xi squared")
{
    const SystemModel s = pair_system(1.0);
    const double v1 = overall_phase_2q(simulate_phase_table(s, {push(s, 0.1, 10)}));
    const double v2 = overall_phase_2q(simulate_phase_table(s, {push(s, 0.3, 10)}));
    const double exponent = std::log(v2 / v1) / std::log(3.0);
    CHECK(std::abs(exponent - 2.0) < 0.02);
}

TEST_CASE("breakdown: branch-independent terms cancel")
{
    for (double eps : {0.01, 2.0}) {
        const SystemModel s = pair_system(eps);
        ForcePulse p = push(s, 0.3, 10);
        p.light_shift_offsets = {3e-8, -5e-8};
        const PhaseTable t = simulate_phase_table(s, {p});
        const PhaseBreakdown b = overall_breakdown_2q(t);
        CHECK(std::abs(b.global_constant) < 1e-9);
        CHECK(std::abs(b.coulomb_baseline) < 1e-9);
        CHECK(std::abs(b.light_shift_term) < 1e-9);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(t.breakdown[k].total() - t.breakdown[k].directly_summed_total) < 1e-9);
    }
}

TEST_CASE("breakdown: the non-Coulomb remainder of the gate phase is linear in epsilon")
{
    double rem[3];
    int i = 0;
    for (double eps : {0.01, 0.005, 0.0025}) {
        const SystemModel s = pair_system(eps);
        const PhaseTable t = simulate_phase_table(s, {push(s, 0.3, 20)});
        const double v = overall_phase_2q(t);
        rem[i++] = (v - interaction_phase_2q(t)) / v;
    }
    CHECK(std::abs(rem[0]) < 0.05);
    CHECK((rem[0] - rem[1]) / (rem[1] - rem[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("theta coefficients from tables with opposite force")
{
    const double eps = 0.01;
    const SystemModel s = pair_system(eps);
    ForcePulse p = push(s, 0.2, 20);
    const PhaseTable a = simulate_phase_table(s, {p});
    p.sign = -1;
    const PhaseTable b = simulate_phase_table(s, {p});
    const double th = analytic_theta(eps, 20, 0.2);
    const ThetaCoefficients c = extract_theta_coefficients(a, b);
    CHECK(std::abs(c.theta2 + th / 2) < 0.05 * th);
    CHECK(c.theta1 == doctest::Approx(-th / std::numbers::sqrt2).epsilon(0.05));

    // Summing the opposite pushes removes the linear part.
    const double single = std::abs(a.phi(2) - a.phi(1));
    const double summed = std::abs((a.phi(2) + b.phi(2)) - (a.phi(1) + b.phi(1)));
    CHECK(summed < 1e-3 * single);

    const PhaseTable z = simulate_phase_table(s, {push(s, 0.0, 20)});
    const ThetaCoefficients cz = extract_theta_coefficients(z, z);
    CHECK(cz.theta1 == 0.0);
    CHECK(cz.theta2 == 0.0);
    CHECK_THROWS_AS(extract_theta_coefficients(a, a), InputError);
}

TEST_CASE("gate design")
{
    const double eps = 1e-3, xi = 1.0;
    const double wt = design_omega_tau(eps, xi, std::numbers::pi);
    CHECK(wt == doctest::Approx(std::numbers::pi / (std::sqrt(std::numbers::pi / 8) * eps * xi * xi)).epsilon(2e-3));
    CHECK(analytic_vartheta_general(eps, wt, xi) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(design_omega_tau(eps, xi, 0.0), DesignError);
    CHECK_THROWS_AS(design_omega_tau(2.0, 3.0, 0.1), DesignError);

    const SystemModel s = pair_system(0.5);
    // xi chosen so that the design lands near omega tau = 10.
    const double x = std::sqrt(std::numbers::pi / 2 / analytic_vartheta_general(0.5, 10, 1.0));
    const GateDesign an = design_gate_time(s, x, std::numbers::pi / 2, DesignModel::analytic);
    const GateDesign si = design_gate_time(s, x, std::numbers::pi / 2, DesignModel::simulated);
    CHECK(an.omega_tau == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(std::abs(si.omega_tau / an.omega_tau - 1) < 0.03);
    CHECK(si.vartheta_simulated == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
}

TEST_CASE("accumulate_phases rejects mismatched inputs")
{
    const SystemModel s = pair_system(0.5);
    ForcePulse p = push(s, 0.1, 6);
    IntegrationOptions o;
    o.record_every = 0;
    std::vector<Trajectory> tr;
    for (int k = 0; k < 4; ++k) tr.push_back(integrate_branch(s, {p}, branch_label(k, 2), {}, o));
    CHECK_NOTHROW(accumulate_phases(tr));
    p.tau *= 1.1;
    tr[3] = integrate_branch(s, {p}, "11", {}, o);
    CHECK_THROWS_AS(accumulate_phases(tr), InputError);
    tr.pop_back();
    CHECK_THROWS_AS(accumulate_phases(tr), InputError);
}

TEST_CASE("phase table JSON")
{
    const SystemModel s = pair_system(0.5);
    const std::string j = phase_table_json(simulate_phase_table(s, {push(s, 0.1, 6)}));
    CHECK(j.find("\"vartheta\"") != std::string::npos);
    CHECK(j.find("\"global_constant\"") != std::string::npos);
    CHECK(j.find("\"branch\": \"11\"") != std::string::npos);
}
