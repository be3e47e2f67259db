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

#include "pushgate/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pushgate/errors.hpp"
#include "pushgate/ode.hpp"

namespace pushgate {

namespace {

constexpr const char* kModule = "dynamics";

std::vector<int> parse_branch(const std::string& branch, int n)
{
    if (static_cast<int>(branch.size()) != n) {
        std::ostringstream os;
        os << "branch '" << branch << "' does not match " << n << " ions";
        throw InputError(kModule, os.str());
    }
    std::vector<int> bits(n);
    for (int i = 0; i < n; ++i) {
        if (branch[i] != '0' && branch[i] != '1')
            throw InputError(kModule, "branch must be a bitstring, got '" + branch + "'");
        bits[i] = branch[i] - '0';
    }
    return bits;
}

}  // namespace

void ForcePulse::validate(int n_ions) const
{
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError(kModule, "tau must be > 0");
    if (!(window_factor >= 4.0)) throw ParameterError(kModule, "window_factor must be >= 4");
    if (!std::isfinite(xi)) throw ParameterError(kModule, "xi must be finite");
    if (sign != 1 && sign != -1) throw ParameterError(kModule, "sign must be +1 or -1");
    if (light_shift_sign < -1 || light_shift_sign > 1)
        throw ParameterError(kModule, "light_shift_sign must be -1, 0 or +1");
    if (!light_shift_offsets.empty() && static_cast<int>(light_shift_offsets.size()) != n_ions)
        throw ParameterError(kModule, "light_shift_offsets needs one entry per ion");
    if (!addressed.empty() && static_cast<int>(addressed.size()) != n_ions)
        throw ParameterError(kModule, "addressed needs one entry per ion");
}

double ForcePulse::profile(double t) const
{
    const double s = (t - t_center) / tau;
    return std::exp(-s * s);
}

double force_at(const ForcePulse& pulse, double t, const UnitScales& scales)
{
    return pulse.sign * pulse.xi * scales.force_unit() * pulse.profile(t);
}

void InitialConditions::validate(int n_ions) const
{
    if (is_raw()) {
        if (static_cast<int>(displacement.size()) != n_ions ||
            static_cast<int>(momentum.size()) != n_ions)
            throw ParameterError(kModule, "raw initial conditions need one entry per ion");
        return;
    }
    if (mode_energy.size() != mode_phase.size())
        throw ParameterError(kModule, "mode energies and phases differ in length");
    if (!mode_energy.empty() && static_cast<int>(mode_energy.size()) != n_ions)
        throw ParameterError(kModule, "need one energy and phase per normal mode");
    for (double e : mode_energy)
        if (!(e >= 0.0)) throw ParameterError(kModule, "mode energy must be >= 0");
    for (double p : mode_phase)
        if (!(p >= 0.0 && p < 2.0 * std::numbers::pi))
            throw ParameterError(kModule, "mode phase must lie in [0, 2 pi)");
}

SystemModel make_system(const IonSpecies& species, const TrapArray& trap,
                        const PhysicalConstants& k)
{
    trap.validate();
    SystemModel s;
    s.species = species;
    s.trap = trap;
    s.constants = k;
    s.scales = derive_scales(species, trap, k);
    s.ell = s.scales.ell_dimensionless();
    const int n = trap.n_ions;

    if (n >= 2) {
        TrapArray pair = trap;
        pair.n_ions = 2;
        s.pair = solve_equilibrium(species, pair, k);
    }
    const ChainEquilibrium chain = solve_chain_equilibrium(species, trap, k);
    s.x_eq.resize(n);
    s.centers.resize(n);
    for (int i = 0; i < n; ++i) {
        s.x_eq[i] = chain.positions[i] / s.scales.a;
        s.centers[i] = chain.trap_centers[i] / s.scales.a;
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = s.x_eq[j] - s.x_eq[i];
            const double kk = 2.0 * s.ell / (dx * dx * dx);
            h(i, i) += kk;
            h(j, j) += kk;
            h(i, j) -= kk;
            h(j, i) -= kk;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    s.modes.frequency = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    s.modes.vectors = es.eigenvectors();
    for (int c = 0; c < n; ++c) {
        for (int r = n - 1; r >= 0; --r) {
            const double v = s.modes.vectors(r, c);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) s.modes.vectors.col(c) *= -1.0;
                break;
            }
        }
    }
    return s;
}

void initial_state(const SystemModel& sys, const InitialConditions& init, double t,
                   std::vector<double>& u, std::vector<double>& v)
{
    const int n = sys.n();
    init.validate(n);
    u.assign(n, 0.0);
    v.assign(n, 0.0);
    if (init.is_raw()) {
        for (int i = 0; i < n; ++i) {
            u[i] = init.displacement[i] / sys.scales.a;
            v[i] = init.momentum[i] / sys.scales.momentum_unit();
        }
        return;
    }
    for (std::size_t k = 0; k < init.mode_energy.size(); ++k) {
        const double e = init.mode_energy[k] / sys.scales.energy_unit;
        const double w = sys.modes.frequency[static_cast<Eigen::Index>(k)];
        if (e == 0.0) continue;
        const double amp = std::sqrt(2.0 * e) / w;
        const double q = amp * std::cos(w * t + init.mode_phase[k]);
        const double qd = -amp * w * std::sin(w * t + init.mode_phase[k]);
        for (int i = 0; i < n; ++i) {
            const double c = sys.modes.vectors(i, static_cast<Eigen::Index>(k));
            u[i] += c * q;
            v[i] += c * qd;
        }
    }
}

double chain_energy(const SystemModel& sys, const std::vector<double>& u,
                    const std::vector<double>& v)
{
    const int n = sys.n();
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        e += 0.5 * v[i] * v[i];
        e += (sys.x_eq[i] - sys.centers[i]) * u[i] + 0.5 * u[i] * u[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dd = sys.x_eq[j] - sys.x_eq[i];
            const double du = u[j] - u[i];
            e -= sys.ell * du / ((dd + du) * dd);
        }
    return e;
}

std::pair<double, double> pulse_window(const std::vector<ForcePulse>& pulses)
{
    if (pulses.empty()) throw InputError(kModule, "at least one pulse is required");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : pulses) {
        lo = std::min(lo, p.t_center - p.window_factor * p.tau);
        hi = std::max(hi, p.t_center + p.window_factor * p.tau);
    }
    return {lo, hi};
}

Trajectory integrate_branch(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                            const std::string& branch, const InitialConditions& init,
                            const IntegrationOptions& opt)
{
    const int n = sys.n();
    if (n < 1) throw InputError(kModule, "empty system");
    const std::vector<int> bits = parse_branch(branch, n);
    for (const auto& p : pulses) p.validate(n);
    init.validate(n);

    const UnitScales& sc = sys.scales;
    const auto [t0_si, t1_si] = pulse_window(pulses);
    const double t0 = sc.time_from_si(t0_si);
    const double t1 = sc.time_from_si(t1_si);

    // Per pulse: centre, width, and per-ion force / light-shift coefficients.
    struct P {
        double tc, tau;
        std::vector<double> force, light;
    };
    std::vector<P> pp;
    double xi_max = 0.0;
    for (const auto& p : pulses) {
        P q{sc.time_from_si(p.t_center), sc.time_from_si(p.tau), std::vector<double>(n, 0.0),
            std::vector<double>(n, 0.0)};
        for (int i = 0; i < n; ++i) {
            if (!bits[i] || !p.addresses(i)) continue;
            q.force[i] = p.sign * p.xi;
            q.light[i] = p.effective_light_shift_sign() * p.xi * sc.length_from_si(p.offset(i));
        }
        xi_max = std::max(xi_max, std::abs(p.xi));
        pp.push_back(std::move(q));
    }

    std::vector<double> d_eq;  // pair equilibrium separations, i < j order
    std::vector<double> lin(n);
    double v0 = 0.0;
    double coul0 = 0.0;
    for (int i = 0; i < n; ++i) {
        lin[i] = sys.x_eq[i] - sys.centers[i];
        v0 += 0.5 * lin[i] * lin[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            d_eq.push_back(sys.x_eq[j] - sys.x_eq[i]);
            coul0 += sys.ell / d_eq.back();
        }
    v0 += coul0;
    const double ell = sys.ell;

    // y = [u, v, kinetic, trap, force, light, coulomb, direct]
    const int nq = 6;
    const int dim = 2 * n + nq;
    auto rhs = [&](double t, const ode::State& y, ode::State& dy) {
        double kin = 0.0, trap = 0.0, fterm = 0.0, light = 0.0, coul = 0.0;
        for (int i = 0; i < n; ++i) {
            const double u = y[i];
            const double v = y[n + i];
            double f = 0.0, l = 0.0;
            for (const auto& q : pp) {
                if (q.force[i] == 0.0 && q.light[i] == 0.0) continue;
                const double s = (t - q.tc) / q.tau;
                const double g = std::exp(-s * s);
                f += q.force[i] * g;
                l += q.light[i] * g;
            }
            dy[i] = v;
            dy[n + i] = -u + f;
            kin += 0.5 * v * v;
            trap += lin[i] * u + 0.5 * u * u;
            fterm += f * u;
            light += l;
        }
        int pidx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++pidx) {
                const double dd = d_eq[pidx];
                const double du = y[j] - y[i];
                const double dx = dd + du;
                if (!(dx > 0.0)) {
                    dy.setConstant(std::numeric_limits<double>::quiet_NaN());
                    return;
                }
                const double fi = ell * du * (2.0 * dd + du) / (dx * dx * dd * dd);
                dy[n + i] += fi;
                dy[n + j] -= fi;
                coul += ell * du / (dx * dd);
            }
        dy[2 * n + 0] = -kin;
        dy[2 * n + 1] = -trap;
        dy[2 * n + 2] = fterm;
        dy[2 * n + 3] = -light;
        dy[2 * n + 4] = coul;
        dy[2 * n + 5] = -(kin + trap - fterm + light - coul);
    };

    std::vector<double> u0, vv0;
    initial_state(sys, init, t0, u0, vv0);
    ode::State y(dim);
    y.setZero();
    double amp = xi_max;
    for (int i = 0; i < n; ++i) {
        y[i] = u0[i];
        y[n + i] = vv0[i];
        amp = std::max({amp, std::abs(u0[i]), std::abs(vv0[i])});
    }
    amp = std::max(amp, 1e-3);

    ode::Options o;
    o.rtol = opt.rtol;
    o.atol_vec = ode::State::Constant(dim, opt.rtol * amp);
    for (int q = 0; q < nq; ++q) o.atol_vec[2 * n + q] = opt.rtol;
    double tau_min = std::numeric_limits<double>::infinity();
    for (const auto& q : pp) tau_min = std::min(tau_min, q.tau);
    o.h_max = std::min(0.5, 0.5 * tau_min);

    Trajectory tr;
    tr.branch = branch;
    tr.n_ions = n;
    tr.t0 = t0_si;
    tr.t1 = t1_si;
    const bool rec = opt.record_every > 0 || opt.record_uniform > 0;
    if (rec) {
        tr.positions.assign(n, {});
        tr.momenta.assign(n, {});
    }
    auto push_sample = [&](double t, const ode::State& s) {
        tr.times.push_back(sc.time_to_si(t));
        for (int i = 0; i < n; ++i) {
            tr.positions[i].push_back(sc.length_to_si(sys.x_eq[i] + s[i]));
            tr.momenta[i].push_back(s[n + i] * sc.momentum_unit());
        }
    };
    double min_sep = std::numeric_limits<double>::infinity();
    auto track_sep = [&](const ode::State& s) {
        int pidx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++pidx) {
                const double dx = d_eq[pidx] + s[j] - s[i];
                if (j == i + 1) min_sep = std::min(min_sep, dx);
                if (!(dx > 0.0)) {
                    std::ostringstream os;
                    os << "ions " << i + 1 << " and " << j + 1 << " crossed on branch " << branch;
                    throw DynamicsError(kModule, os.str());
                }
            }
    };
    track_sep(y);

    ode::Stats st;
    int uniform_next = 0;
    const int nu = opt.record_uniform;
    auto uniform_time = [&](int k) { return t0 + (t1 - t0) * k / (nu - 1); };
    if (nu > 0) {
        if (nu < 2) throw InputError(kModule, "record_uniform needs at least two points");
        push_sample(t0, y);
        uniform_next = 1;
    }
    else if (rec) {
        push_sample(t0, y);
    }
    long accepted = 0;
    ode::State yend = ode::integrate(
        rhs, t0, t1, y, o, st, [&](const ode::DenseStep& ds, const ode::State& ynew) {
            track_sep(ynew);
            ++accepted;
            const double tn = ds.t_old + ds.h;
            if (nu > 0) {
                while (uniform_next < nu && uniform_time(uniform_next) <= tn) {
                    const double tk = uniform_time(uniform_next);
                    push_sample(tk, uniform_next == nu - 1 ? ynew : ds(tk));
                    ++uniform_next;
                }
            }
            else if (rec && (accepted % opt.record_every == 0 || tn >= t1)) {
                push_sample(tn, ynew);
            }
        });
    if (nu > 0)
        while (uniform_next < nu) push_sample(uniform_time(uniform_next++), yend);

    tr.final_displacement.resize(n);
    tr.final_velocity.resize(n);
    for (int i = 0; i < n; ++i) {
        tr.final_displacement[i] = yend[i];
        tr.final_velocity[i] = yend[n + i];
    }
    const double span = t1 - t0;
    PhaseBreakdown& ph = tr.phase;
    ph.kinetic = yend[2 * n + 0];
    ph.trap_potential = yend[2 * n + 1];
    ph.force_term = yend[2 * n + 2];
    ph.light_shift_term = yend[2 * n + 3];
    ph.coulomb = yend[2 * n + 4];
    ph.global_constant = -v0 * span;
    ph.coulomb_baseline = -coul0 * span;
    ph.directly_summed_total = yend[2 * n + 5] + ph.global_constant;

    tr.stats.steps = st.steps;
    tr.stats.rejected = st.rejected;
    tr.stats.rhs_evals = st.rhs_evals;
    tr.stats.max_error_norm = st.max_error_norm;
    tr.stats.rtol = opt.rtol;
    tr.min_separation = n >= 2 ? sc.length_to_si(min_sep) : 0.0;
    return tr;
}

Trajectory integrate_branch(const IonSpecies& species, const TrapArray& trap,
                            const EquilibriumSolution& eq, const std::vector<ForcePulse>& pulses,
                            const std::string& branch, const InitialConditions& init,
                            const IntegrationOptions& opt)
{
    const SystemModel sys = make_system(species, trap);
    if (trap.n_ions >= 2 && std::abs(sys.pair.d - eq.d) > 1e-9 * eq.d)
        throw InputError(kModule, "equilibrium solution does not belong to this trap");
    return integrate_branch(sys, pulses, branch, init, opt);
}

AdiabaticSolution adiabatic_trajectory(const EquilibriumSolution& eq, const UnitScales& scales,
                                       const ForcePulse& pulse, const std::string& branch,
                                       const InitialConditions& init, int n_points, bool strict)
{
    const std::vector<int> b = parse_branch(branch, 2);
    pulse.validate(2);
    if (init.is_raw()) throw InputError(kModule, "adiabatic solution needs mode energies");
    init.validate(2);
    if (n_points < 2) throw InputError(kModule, "n_points must be >= 2");
    const double wt = eq.omega * pulse.tau;
    if (wt < 4.0 && strict) {
        std::ostringstream os;
        os << "omega tau = " << wt << " is below the adiabatic limit 4";
        throw ParameterError(kModule, os.str());
    }
    const double m = eq.mass;
    const double M = 2.0 * m;
    const double mu = eq.reduced_mass();
    const double w = eq.omega;
    const double wt2 = eq.omega_tilde;
    const double kt = mu * wt2 * wt2;
    const double ep = eq.epsilon / (eq.epsilon + 1.0);
    const double er = init.mode_energy.empty() ? 0.0 : init.mode_energy[1];
    const double eR = init.mode_energy.empty() ? 0.0 : init.mode_energy[0];
    const double pr = init.mode_phase.empty() ? 0.0 : init.mode_phase[1];
    const double pR = init.mode_phase.empty() ? 0.0 : init.mode_phase[0];
    const double aR = std::sqrt(2.0 * eR / (M * w * w));
    const double ar = std::sqrt(2.0 * er / kt);
    const int a1 = pulse.addresses(0) ? b[0] : 0;
    const int b1 = pulse.addresses(1) ? b[1] : 0;

    AdiabaticSolution out;
    const auto [t0, t1] = pulse_window({pulse});
    for (int k = 0; k < n_points; ++k) {
        const double t = t0 + (t1 - t0) * k / (n_points - 1);
        const double F = force_at(pulse, t, scales);
        const double xbar = F / (m * w * w);
        const double f = 0.5 * (b1 - a1) * F;
        const double zeta = ep * er / (kt * eq.d) * (1.0 + 6.0 * ep * f / (kt * eq.d));
        out.times.push_back(t);
        out.R_bar.push_back(0.5 * (a1 + b1) * xbar);
        out.r_bar.push_back(f / kt * (1.0 + 1.5 * ep * f / (kt * eq.d)));
        out.Delta.push_back(aR * std::cos(w * t + pR));
        out.zeta.push_back(zeta);
        out.delta.push_back(ar * std::cos(wt2 * t + pr) + zeta);
    }
    return out;
}

ModeCoordinates mode_transform(double x1, double x2, double p1, double p2, double d)
{
    ModeCoordinates c;
    c.R = 0.5 * (x1 + x2);
    c.r = x2 - x1 - d;
    c.P = p1 + p2;
    c.p = 0.5 * (p2 - p1);
    return c;
}

void inverse_mode_transform(const ModeCoordinates& c, double d, double& x1, double& x2,
                            double& p1, double& p2)
{
    x1 = c.R - 0.5 * (c.r + d);
    x2 = c.R + 0.5 * (c.r + d);
    p1 = 0.5 * c.P - c.p;
    p2 = 0.5 * c.P + c.p;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::map<std::string, std::string>& metadata)
{
    os << "# schema: pushgate-trajectory v1\n";
    os << "# branch: " << traj.branch << "\n";
    os << "# units: t [s], x [m], p [kg m/s]\n";
    for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << "\n";
    os << "t";
    for (int i = 0; i < traj.n_ions; ++i) os << ",x" << i + 1;
    for (int i = 0; i < traj.n_ions; ++i) os << ",p" << i + 1;
    os << "\n";
    const auto prec = os.precision(17);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << traj.times[k];
        for (int i = 0; i < traj.n_ions; ++i) os << "," << traj.positions[i][k];
        for (int i = 0; i < traj.n_ions; ++i) os << "," << traj.momenta[i][k];
        os << "\n";
    }
    os.precision(prec);
}

}  // namespace pushgate
