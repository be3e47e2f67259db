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

#include "pushgate/phases.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "pushgate/errors.hpp"

namespace pushgate {

namespace {

constexpr const char* kModule = "phases";

const double kSqrtPiOver8 = std::sqrt(std::numbers::pi / 8.0);

double combine(const PhaseTable& t, const std::vector<double>& c, double PhaseBreakdown::*field)
{
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0.0) s += c[k] * (t.breakdown[k].*field);
    return s;
}

PhaseBreakdown combine_all(const PhaseTable& t, const std::vector<double>& c)
{
    if (static_cast<int>(t.breakdown.size()) != t.size())
        throw InputError(kModule, "table has no per-term breakdown");
    PhaseBreakdown b;
    b.kinetic = combine(t, c, &PhaseBreakdown::kinetic);
    b.trap_potential = combine(t, c, &PhaseBreakdown::trap_potential);
    b.force_term = combine(t, c, &PhaseBreakdown::force_term);
    b.light_shift_term = combine(t, c, &PhaseBreakdown::light_shift_term);
    b.coulomb = combine(t, c, &PhaseBreakdown::coulomb);
    b.global_constant = combine(t, c, &PhaseBreakdown::global_constant);
    b.coulomb_baseline = combine(t, c, &PhaseBreakdown::coulomb_baseline);
    b.directly_summed_total = combine(t, c, &PhaseBreakdown::directly_summed_total);
    return b;
}

const std::vector<double> kCombo2{1, -1, -1, 1};
const std::vector<double> kCombo3{2, -1, -1, 0, -1, 0, 0, 1};

void require_qubits(const PhaseTable& t, int n)
{
    t.validate();
    if (t.n_qubits != n) {
        std::ostringstream os;
        os << "expected a " << n << "-qubit table, got " << t.n_qubits;
        throw InputError(kModule, os.str());
    }
}

double combo(const PhaseTable& t, const std::vector<double>& c, bool use_phi)
{
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0.0) s += c[k] * (use_phi ? t.phi(static_cast<int>(k)) : t.phases[k]);
    return s;
}

}  // namespace

std::string branch_label(int index, int n_qubits)
{
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q)
        if (index & (1 << (n_qubits - 1 - q))) s[q] = '1';
    return s;
}

int branch_index(const std::string& branch)
{
    int k = 0;
    for (char c : branch) {
        if (c != '0' && c != '1') throw InputError(kModule, "bad branch label '" + branch + "'");
        k = 2 * k + (c - '0');
    }
    return k;
}

double PhaseTable::at(const std::string& branch) const
{
    if (static_cast<int>(branch.size()) != n_qubits)
        throw InputError(kModule, "branch label length does not match table");
    return phases[branch_index(branch)];
}

void PhaseTable::validate() const
{
    if (n_qubits < 1 || n_qubits > 4) throw InputError(kModule, "n_qubits must be 1..4");
    if (size() != (1 << n_qubits)) throw InputError(kModule, "table length must be 2^n");
    if (!breakdown.empty() && static_cast<int>(breakdown.size()) != size())
        throw InputError(kModule, "breakdown length must match the table");
    for (double p : phases)
        if (!std::isfinite(p)) throw InputError(kModule, "non-finite phase in table");
}

PhaseTable make_table(const std::vector<double>& phases)
{
    PhaseTable t;
    int n = 0;
    while ((1 << n) < static_cast<int>(phases.size())) ++n;
    t.n_qubits = n;
    t.phases = phases;
    t.breakdown.resize(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k) {
        // Everything lands in the Coulomb slot so that phi == Theta.
        t.breakdown[k].coulomb = phases[k];
        t.breakdown[k].directly_summed_total = phases[k];
    }
    t.validate();
    return t;
}

PhaseTable accumulate_phases(const std::vector<Trajectory>& trajectories)
{
    if (trajectories.empty()) throw InputError(kModule, "no trajectories");
    const int n = trajectories.front().n_ions;
    if (static_cast<int>(trajectories.size()) != (1 << n)) {
        std::ostringstream os;
        os << "need " << (1 << n) << " trajectories for " << n << " ions, got "
           << trajectories.size();
        throw InputError(kModule, os.str());
    }
    PhaseTable t;
    t.n_qubits = n;
    t.phases.assign(1 << n, 0.0);
    t.breakdown.assign(1 << n, {});
    std::vector<bool> seen(1 << n, false);
    const double t0 = trajectories.front().t0, t1 = trajectories.front().t1;
    const double tol = 1e-12 * (std::abs(t0) + std::abs(t1));
    for (const auto& tr : trajectories) {
        if (tr.n_ions != n) throw InputError(kModule, "trajectories differ in ion count");
        if (std::abs(tr.t0 - t0) > tol || std::abs(tr.t1 - t1) > tol)
            throw InputError(kModule, "trajectories cover different time windows");
        const int k = branch_index(tr.branch);
        if (seen[k]) throw InputError(kModule, "duplicate branch " + tr.branch);
        seen[k] = true;
        t.breakdown[k] = tr.phase;
        t.phases[k] = tr.phase.total();
    }
    return t;
}

PhaseTable simulate_phase_table(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                                const InitialConditions& init, const IntegrationOptions& opt)
{
    const int n = sys.n();
    IntegrationOptions o = opt;
    std::vector<Trajectory> trs;
    trs.reserve(1 << n);
    for (int k = 0; k < (1 << n); ++k)
        trs.push_back(integrate_branch(sys, pulses, branch_label(k, n), init, o));
    PhaseTable t = accumulate_phases(trs);
    const ForcePulse& p = pulses.front();
    t.xi = p.sign * p.xi;
    t.a_over_d = n >= 2 ? sys.scales.a / sys.pair.d : 0.0;
    t.epsilon = n >= 2 ? sys.pair.epsilon : 0.0;
    t.omega_tau = sys.trap.omega * p.tau;
    std::ostringstream os;
    os.precision(17);
    os << sys.trap.omega;
    t.metadata["omega"] = os.str();
    t.metadata["n_ions"] = std::to_string(n);
    t.metadata["species"] = sys.species.label;
    t.metadata["trap_mode"] = to_string(sys.trap.mode);
    return t;
}

double overall_phase_2q(const PhaseTable& table)
{
    require_qubits(table, 2);
    return combo(table, kCombo2, false);
}

double overall_phase_3q(const PhaseTable& table)
{
    require_qubits(table, 3);
    return combo(table, kCombo3, false);
}

PhaseBreakdown overall_breakdown_2q(const PhaseTable& table)
{
    require_qubits(table, 2);
    return combine_all(table, kCombo2);
}

PhaseBreakdown overall_breakdown_3q(const PhaseTable& table)
{
    require_qubits(table, 3);
    return combine_all(table, kCombo3);
}

double interaction_phase_2q(const PhaseTable& table)
{
    require_qubits(table, 2);
    return combo(table, kCombo2, true);
}

double interaction_phase_3q(const PhaseTable& table)
{
    require_qubits(table, 3);
    return combo(table, kCombo3, true);
}

std::array<double, 3> pairwise_phases_3q(const PhaseTable& t)
{
    require_qubits(t, 3);
    const auto& p = t.phases;
    return {p[6] - p[4] - p[2] + p[0], p[5] - p[4] - p[1] + p[0], p[3] - p[2] - p[1] + p[0]};
}

double analytic_theta(double eps, double omega_tau, double xi)
{
    if (!(eps > 0.0 && omega_tau > 0.0))
        throw ParameterError(kModule, "epsilon and omega tau must be > 0");
    return kSqrtPiOver8 * eps * omega_tau * xi * xi;
}

double analytic_vartheta_general(double eps, double omega_tau, double xi)
{
    const double th = analytic_theta(eps, omega_tau, xi);
    const double wt2 = omega_tau * omega_tau;
    return th / (eps + 1.0) * (1.0 - (2.0 + eps) / ((1.0 + eps) * wt2));
}

double analytic_vartheta_linear(double omega_tau, double xi, bool with_bracket)
{
    if (with_bracket) return analytic_vartheta_general(2.0, omega_tau, xi);
    return analytic_theta(2.0, omega_tau, xi) / 3.0;
}

std::array<double, 8> analytic_phi3_table(double theta)
{
    std::array<double, 8> out{};
    for (int k = 0; k < 8; ++k) {
        const int a = (k >> 2) & 1, b = (k >> 1) & 1, c = k & 1;
        const double ab = a - b, ac = a - c, bc = b - c;
        out[k] = -0.5 * theta * (ab * ab + ac * ac / 8.0 + bc * bc);
    }
    return out;
}

AnalyticPhases analytic_phases(double eps, double omega_tau, double xi)
{
    AnalyticPhases a;
    a.theta = analytic_theta(eps, omega_tau, xi);
    a.vartheta_general = analytic_vartheta_general(eps, omega_tau, xi);
    a.vartheta_linear = analytic_vartheta_linear(omega_tau, xi);
    a.theta1 = -a.theta / std::numbers::sqrt2;
    a.theta2 = -a.theta / 2.0;
    a.phi3_table = analytic_phi3_table(a.theta);
    return a;
}

ThetaCoefficients extract_theta_coefficients(const PhaseTable& zero_force)
{
    require_qubits(zero_force, 2);
    if (zero_force.xi != 0.0)
        throw InputError(kModule, "single-table extraction needs a zero-force table");
    ThetaCoefficients c;
    const auto& t = zero_force;
    c.residual = std::max(std::abs(t.phi(1) - t.phi(0)), std::abs(t.phi(2) - t.phi(0)));
    return c;
}

ThetaCoefficients extract_theta_coefficients(const PhaseTable& a, const PhaseTable& b)
{
    require_qubits(a, 2);
    require_qubits(b, 2);
    if (a.xi == 0.0 && b.xi == 0.0) return extract_theta_coefficients(a);
    if (a.xi == b.xi) throw InputError(kModule, "tables share the same xi; nothing to fit");
    if (a.xi == 0.0 || b.xi == 0.0)
        throw InputError(kModule, "each table of a two-point fit needs a non-zero force");
    if (std::abs(a.epsilon - b.epsilon) > 1e-12 * std::max(1.0, a.epsilon) ||
        std::abs(a.omega_tau - b.omega_tau) > 1e-12 * std::max(1.0, a.omega_tau) ||
        std::abs(a.a_over_d - b.a_over_d) > 1e-12 * std::max(1e-300, a.a_over_d))
        throw InputError(kModule, "tables differ in more than the force");
    if (!(a.a_over_d > 0.0)) throw InputError(kModule, "table lacks a/d");

    // f(xi) = L xi + Q xi^2 through both points.
    auto fit = [&](double fa, double fb, double& L, double& Q) {
        const double x = a.xi, y = b.xi;
        const double det = x * y * y - y * x * x;
        L = (fa * y * y - fb * x * x) / det;
        Q = (x * fb - y * fa) / det;
    };
    auto sym = [](const PhaseTable& t) { return 0.5 * (t.phi(1) + t.phi(2) - 2.0 * t.phi(0)); };
    auto anti = [](const PhaseTable& t) { return t.phi(2) - t.phi(1); };
    double Ls, Qs, La, Qa;
    fit(sym(a), sym(b), Ls, Qs);
    fit(anti(a), anti(b), La, Qa);

    ThetaCoefficients c;
    const double x = a.xi;
    c.theta2 = Qs * x * x;
    c.antisymmetric_raw = La * x;
    c.theta1 = c.antisymmetric_raw * std::abs(x) * a.a_over_d / 2.0;
    // Off-model parts: a linear symmetric term and a quadratic antisymmetric one.
    c.residual = std::max(std::abs(Ls * x), std::abs(Qa * x * x));
    return c;
}

double design_omega_tau(double eps, double xi, double target_phase)
{
    if (!(target_phase > 0.0)) throw DesignError(kModule, "target phase must be > 0");
    if (!(xi > 0.0)) throw ParameterError(kModule, "xi must be > 0");
    if (!(eps > 0.0 && eps <= 2.0)) throw ParameterError(kModule, "epsilon must lie in (0, 2]");
    const double A = kSqrtPiOver8 * eps * xi * xi / (1.0 + eps);
    const double B = A * (2.0 + eps) / (1.0 + eps);
    const double x = (target_phase + std::sqrt(target_phase * target_phase + 4.0 * A * B)) / (2.0 * A);
    if (x < kMinOmegaTau) {
        const double vmin = analytic_vartheta_general(eps, kMinOmegaTau, xi);
        // Largest xi that still needs omega tau >= 5 for this target.
        const double xi_max = xi * std::sqrt(target_phase / vmin);
        std::ostringstream os;
        os << "target " << target_phase << " rad is below the smallest phase reachable with "
           << "omega tau >= 5 at xi = " << xi << " (" << vmin << " rad); use xi <= " << xi_max;
        throw DesignError(kModule, os.str());
    }
    return x;
}

GateDesign design_gate_time(double eps, double xi, double target_phase, DesignModel model)
{
    if (model != DesignModel::analytic)
        throw InputError(kModule, "the simulated model needs a trap; use the SystemModel overload");
    GateDesign g;
    g.omega_tau = design_omega_tau(eps, xi, target_phase);
    g.vartheta_analytic = analytic_vartheta_general(eps, g.omega_tau, xi);
    return g;
}

GateDesign design_gate_time(const SystemModel& sys, double xi, double target_phase,
                            DesignModel model, const IntegrationOptions& opt)
{
    if (sys.n() != 2) throw InputError(kModule, "gate design needs a two-ion system");
    const double eps = sys.pair.epsilon;
    const double w = sys.trap.omega;
    GateDesign g;
    if (model == DesignModel::analytic) {
        g = design_gate_time(eps, xi, target_phase, model);
        g.tau = g.omega_tau / w;
        return g;
    }
    if (!(target_phase > 0.0)) throw DesignError(kModule, "target phase must be > 0");
    if (!(xi > 0.0)) throw ParameterError(kModule, "xi must be > 0");
    IntegrationOptions o = opt;
    o.record_every = 0;
    o.record_uniform = 0;
    auto sim = [&](double x) {
        ForcePulse p;
        p.xi = xi;
        p.tau = x / w;
        ++g.evaluations;
        return overall_phase_2q(simulate_phase_table(sys, {p}, {}, o));
    };
    const double v5 = sim(kMinOmegaTau);
    if (v5 >= target_phase) {
        std::ostringstream os;
        os << "target " << target_phase << " rad is below the simulated phase at omega tau = 5 ("
           << v5 << " rad) for xi = " << xi << "; reduce xi";
        throw DesignError(kModule, os.str());
    }
    double lo = kMinOmegaTau, flo = v5 - target_phase;
    double hi = std::max(kMinOmegaTau * 1.5, 1.1 * (target_phase / v5) * kMinOmegaTau);
    double fhi = sim(hi) - target_phase;
    while (fhi < 0.0) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        if (hi > 1e6) throw DesignError(kModule, "simulated phase does not reach the target");
        fhi = sim(hi) - target_phase;
    }
    std::uintmax_t it = 60;
    auto tol = boost::math::tools::eps_tolerance<double>(30);
    auto [a, b] = boost::math::tools::toms748_solve(
        [&](double x) { return sim(x) - target_phase; }, lo, hi, flo, fhi, tol, it);
    g.omega_tau = 0.5 * (a + b);
    g.tau = g.omega_tau / w;
    g.vartheta_analytic = analytic_vartheta_general(eps, g.omega_tau, xi);
    g.vartheta_simulated = sim(g.omega_tau);
    return g;
}

std::string phase_table_json(const PhaseTable& table)
{
    table.validate();
    nlohmann::ordered_json j;
    j["schema"] = "pushgate-phase-table v1";
    j["n_qubits"] = table.n_qubits;
    j["xi"] = table.xi;
    j["a_over_d"] = table.a_over_d;
    j["epsilon"] = table.epsilon;
    j["omega_tau"] = table.omega_tau;
    auto& rows = j["branches"];
    rows = nlohmann::ordered_json::array();
    for (int k = 0; k < table.size(); ++k) {
        nlohmann::ordered_json r;
        r["branch"] = branch_label(k, table.n_qubits);
        r["theta"] = table.phases[k];
        if (!table.breakdown.empty()) {
            const auto& b = table.breakdown[k];
            r["phi"] = b.interaction();
            r["breakdown"] = {{"kinetic", b.kinetic},
                              {"trap_potential", b.trap_potential},
                              {"force_term", b.force_term},
                              {"light_shift_term", b.light_shift_term},
                              {"coulomb", b.coulomb},
                              {"global_constant", b.global_constant},
                              {"coulomb_baseline", b.coulomb_baseline}};
        }
        rows.push_back(r);
    }
    if (table.n_qubits == 2) j["vartheta"] = overall_phase_2q(table);
    if (table.n_qubits == 3) j["vartheta3"] = overall_phase_3q(table);
    j["metadata"] = table.metadata;
    return j.dump(2);
}

}  // namespace pushgate
