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


#include "pushgate/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "pushgate/dynamics.hpp"
#include "pushgate/errors.hpp"
#include "pushgate/phases.hpp"
#include "pushgate/statics.hpp"

namespace pushgate {

namespace {

constexpr double kPi = std::numbers::pi;
const char* kModule = "sweep";

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::omega: return "omega";
    case SweepAxis::temperature: return "T";
    case SweepAxis::waist: return "w";
    case SweepAxis::power: return "P";
    case SweepAxis::epsilon: return "epsilon";
    case SweepAxis::xi: return "xi";
    }
    return "?";
}

SweepAxis sweep_axis_from_string(const std::string& s)
{
    if (s == "omega") return SweepAxis::omega;
    if (s == "T") return SweepAxis::temperature;
    if (s == "w") return SweepAxis::waist;
    if (s == "P") return SweepAxis::power;
    if (s == "epsilon") return SweepAxis::epsilon;
    if (s == "xi") return SweepAxis::xi;
    throw InputError(kModule, "unknown sweep axis '" + s + "' (omega, T, w, P, epsilon, xi)");
}

std::string to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

Spacing spacing_from_string(const std::string& s)
{
    if (s == "log") return Spacing::log;
    if (s == "linear") return Spacing::linear;
    throw InputError(kModule, "unknown spacing '" + s + "' (linear, log)");
}

std::string to_string(DynamicModel m)
{
    return m == DynamicModel::closed_form ? "closed_form" : "monte_carlo";
}

DynamicModel dynamic_model_from_string(const std::string& s)
{
    if (s == "closed_form") return DynamicModel::closed_form;
    if (s == "monte_carlo") return DynamicModel::monte_carlo;
    throw InputError(kModule, "unknown dynamic model '" + s + "' (closed_form, monte_carlo)");
}

std::string to_string(TemperatureRule r) { return r == TemperatureRule::fixed ? "fixed" : "ln2_quantum"; }

TemperatureRule temperature_rule_from_string(const std::string& s)
{
    if (s == "fixed") return TemperatureRule::fixed;
    if (s == "ln2_quantum") return TemperatureRule::ln2_quantum;
    throw InputError(kModule, "unknown temperature rule '" + s + "' (fixed, ln2_quantum)");
}

void SweepRange::validate() const
{
    if (points < 1) throw InputError(kModule, "empty sweep range");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw InputError(kModule, "sweep range must be finite");
    if (spacing == Spacing::log && !(start > 0 && stop > 0))
        throw InputError(kModule, "log spacing needs a positive range");
    if (points > 1 && start == stop) throw InputError(kModule, "degenerate sweep range");
}

std::vector<double> SweepRange::values() const
{
    validate();
    std::vector<double> v(points);
    if (points == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < points; ++i) {
        const double s = static_cast<double>(i) / (points - 1);
        v[i] = spacing == Spacing::log ? start * std::pow(stop / start, s) : start + (stop - start) * s;
    }
    v.back() = stop;
    return v;
}

void SweepSpec::validate() const
{
    species.validate();
    range.validate();
    if (curves.empty()) throw InputError(kModule, "sweep needs at least one curve");
    if (!(wavelength > 0)) throw InputError(kModule, "wavelength must be > 0");
    if (axis != SweepAxis::omega && !(omega > 0)) throw InputError(kModule, "omega must be > 0");
    if (!(omega_tau > 0)) throw InputError(kModule, "omega tau must be > 0");
    if (xi == 0.0 && axis != SweepAxis::xi && !(vartheta_L > 0))
        throw InputError(kModule, "vartheta_L must be > 0 when xi is designed");
    if ((axis == SweepAxis::epsilon || axis == SweepAxis::xi) && model != DynamicModel::monte_carlo)
        throw InputError(kModule, "axis " + to_string(axis) + " needs dynamic_model = monte_carlo");
    if (model == DynamicModel::monte_carlo && samples < 1)
        throw InputError(kModule, "monte_carlo needs samples >= 1");
    if (model == DynamicModel::closed_form && axis != SweepAxis::epsilon && epsilon != 2.0 && epsilon > 0.1)
        throw InputError(kModule, "closed-form dynamic infidelity exists for epsilon = 2 or epsilon <= 0.1");
    for (const auto& c : curves) {
        if (axis != SweepAxis::waist && !(c.waist > 0)) throw InputError(kModule, "curve waist must be > 0");
        if (axis != SweepAxis::power && !(c.power > 0)) throw InputError(kModule, "curve power must be > 0");
        if (axis != SweepAxis::temperature && c.rule == TemperatureRule::fixed && !(c.temperature >= 0))
            throw InputError(kModule, "curve temperature must be >= 0");
    }
}

SweepRow sweep_point(const SweepSpec& spec, const SweepCurve& curve, double value, int threads)
{
    const PhysicalConstants k;
    SweepRow r;
    r.axis_value = value;
    r.omega = spec.axis == SweepAxis::omega ? value : spec.omega;
    r.waist = spec.axis == SweepAxis::waist ? value : curve.waist;
    r.power = spec.axis == SweepAxis::power ? value : curve.power;
    r.epsilon = spec.axis == SweepAxis::epsilon ? value : spec.epsilon;
    if (spec.axis == SweepAxis::temperature)
        r.temperature = value;
    else if (curve.rule == TemperatureRule::ln2_quantum)
        r.temperature = k.hbar * r.omega / (k.kB * std::log(2.0));
    else
        r.temperature = curve.temperature;
    r.x0 = spec.x0_over_w * r.waist;
    r.omega_tau = spec.omega_tau;

    const TrapArray trap = trap_at(spec.species, 2, r.epsilon, r.omega, k);
    const EquilibriumSolution eq = solve_equilibrium(spec.species, trap, k);
    r.a_over_d = std::sqrt(k.hbar / (spec.species.mass * r.omega)) / eq.d;
    if (spec.axis == SweepAxis::xi)
        r.xi = value;
    else if (spec.xi > 0)
        r.xi = spec.xi;
    else
        r.xi = std::sqrt(spec.vartheta_L / analytic_vartheta_general(r.epsilon, r.omega_tau, 1.0));

    LaserGeometry g;
    g.configuration = spec.configuration;
    g.waist = r.waist;
    g.x0 = r.x0;
    g.wavelength = spec.wavelength;
    g.power = r.power;
    g.alpha = spec.alpha;
    if (spec.configuration == LaserConfiguration::standing_wave) g.z0 = spec.k_alpha_z0 / g.k_alpha();

    const double spatial = spatial_infidelity(g, spec.species, r.omega, r.temperature, k);
    const double scattered = photon_scattering(g, spec.species, r.omega, k);
    double dynamic = 0.0;
    if (spec.model == DynamicModel::closed_form) {
        DynamicErrorParams p;
        p.temperature = r.temperature;
        p.omega = r.omega;
        p.a_over_d = r.a_over_d;
        p.vartheta_L = spec.vartheta_L;
        p.omega_tau = r.omega_tau;
        dynamic = closed_form_dynamic_infidelity(r.epsilon == 2.0 ? DynamicRegime::eps2 : DynamicRegime::small_eps,
                                              p, k);
    }
    else {
        const SystemModel sys = make_system(spec.species, trap, k);
        ForcePulse pulse;
        pulse.xi = r.xi;
        pulse.tau = r.omega_tau / r.omega;
        ThermalEnsemble ens;
        ens.temperature = r.temperature;
        ens.n_samples = spec.samples;
        ens.seed = spec.seed;
        MonteCarloOptions opt;
        opt.threads = threads;
        dynamic = worst_case_fidelity(monte_carlo_phase_samples(sys, {pulse}, ens, opt), true).infidelity;
    }
    r.budget = total_infidelity(spatial, dynamic, scattered);
    return r;
}

std::vector<SweepCurveResult> run_sweep(const SweepSpec& spec, int threads)
{
    spec.validate();
    const std::vector<double> grid = spec.range.values();
    std::vector<SweepCurveResult> out;
    for (const auto& c : spec.curves) {
        SweepCurveResult res;
        res.curve = c;
        for (double v : grid) res.rows.push_back(sweep_point(spec, c, v, threads));
        out.push_back(std::move(res));
    }
    return out;
}

int interior_minimum(const std::vector<SweepRow>& rows)
{
    if (rows.size() < 3) return -1;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].budget.P_total < rows[best].budget.P_total) best = i;
    return best == 0 || best + 1 == rows.size() ? -1 : static_cast<int>(best);
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const SweepCurveResult& curve,
                     const std::string& config_echo)
{
    os << "# schema: " << kSweepSchema << "\n";
    os << "# sweep: " << spec.name << "\n";
    os << "# curve: " << curve.curve.id << " (" << curve.curve.label << ")" << "\n";
    os << "# axis: " << to_string(spec.axis) << " (" << to_string(spec.range.spacing) << ", "
       << spec.range.points << " points)\n";
    os << "# laser: " << to_string(spec.configuration) << "\n";
    os << "# dynamic_model: " << to_string(spec.model) << "\n";
    os << "# units: omega rad/s, T K, w m, P W, x0 m; probabilities dimensionless\n";
    os << "# seed: " << spec.seed << "\n";
    if (!config_echo.empty()) os << "# config: " << config_echo << "\n";
    os << "omega,P_spatial,P_dynamic,N,P_total,T,w,P,x0,epsilon,xi,a_over_d,omega_tau,valid\n";
    for (const auto& r : curve.rows) {
        os << num(r.omega) << ',' << num(r.budget.P_thermal_spatial) << ',' << num(r.budget.P_thermal_dynamic)
           << ',' << num(r.budget.N_scattered) << ',' << num(r.budget.P_total) << ',' << num(r.temperature)
           << ',' << num(r.waist) << ',' << num(r.power) << ',' << num(r.x0) << ',' << num(r.epsilon) << ','
           << num(r.xi) << ',' << num(r.a_over_d) << ',' << num(r.omega_tau) << ','
           << (r.budget.valid ? 1 : 0) << "\n";
    }
}

SweepSpec fig3_preset()
{
    SweepSpec s;
    s.name = "fig3";
    s.species = calcium40();
    s.configuration = LaserConfiguration::travelling_wave;
    s.wavelength = s.species.transition_wavelength;
    s.x0_over_w = 0.5;
    s.axis = SweepAxis::omega;
    s.range = {2 * kPi * 1e5, 2 * kPi * 2e7, 61, Spacing::log};
    s.epsilon = 2.0;
    s.omega_tau = 5.0;
    s.vartheta_L = kPi;
    const double t_dopp = s.species.doppler_temperature.value_or(538e-6);
    s.curves = {{"w4_P10_Tdopp", "w=4um P=10mW T=T_dopp", 4e-6, 10e-3, t_dopp, TemperatureRule::fixed},
                {"w4_P10_Tln2", "w=4um P=10mW T=hbar omega/(kB ln2)", 4e-6, 10e-3, 0.0, TemperatureRule::ln2_quantum},
                {"w2_P100_Tdopp", "w=2um P=100mW T=T_dopp", 2e-6, 100e-3, t_dopp, TemperatureRule::fixed},
                {"w2_P100_Tln2", "w=2um P=100mW T=hbar omega/(kB ln2)", 2e-6, 100e-3, 0.0, TemperatureRule::ln2_quantum}};
    return s;
}

SweepSpec fig4_preset()
{
    SweepSpec s = fig3_preset();
    s.name = "fig4";
    s.configuration = LaserConfiguration::standing_wave;
    s.alpha = kPi / 2;
    s.k_alpha_z0 = kPi / 4;
    return s;
}

}  // namespace pushgate
