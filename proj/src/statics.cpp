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

#include "pushgate/statics.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pushgate/errors.hpp"

namespace pushgate {

namespace {

constexpr const char* kModule = "statics";

// u (1 + u)^2 = 2 eta / 27 with u = Delta d / d0, bracketed on
// [0, 10 eta^(1/3)] where the left side is monotone.
double delta_d_over_d0_root(double eta)
{
    const double target = 2.0 * eta / 27.0;
    auto f = [target](double u) { return u * (1.0 + u) * (1.0 + u) - target; };
    const double lo = 0.0;
    const double hi = 10.0 * std::cbrt(eta);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo < 0.0 && fhi > 0.0)) {
        std::ostringstream os;
        os << "lin5 bracket failure: eta=" << eta << " f(lo)=" << flo << " f(hi)=" << fhi;
        throw NumericalError(kModule, os.str());
    }
    std::uintmax_t max_iter = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2);
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
    if (max_iter >= 200) {
        std::ostringstream os;
        os << "lin5 root-find did not converge: eta=" << eta << " bracket=[" << a << ", " << b
           << "]";
        throw NumericalError(kModule, os.str());
    }
    return 0.5 * (a + b);
}

}  // namespace

double delta_d_over_d0(double eta)
{
    if (!(eta >= 0.0)) throw ParameterError(kModule, "eta must be >= 0");
    // acosh(1 + eta), written to stay accurate for small eta.
    const double ach = std::log1p(eta + std::sqrt(eta * (eta + 2.0)));
    const double s = std::sinh(ach / 6.0);
    return 4.0 / 3.0 * s * s;
}

double epsilon_of_eta(double eta)
{
    if (std::isinf(eta)) return 2.0;
    const double u = delta_d_over_d0(eta);
    return 2.0 * u / (1.0 + u);
}

EquilibriumSolution solve_equilibrium(const IonSpecies& species, const TrapArray& trap,
                                      const PhysicalConstants& k)
{
    trap.validate();
    if (trap.n_ions < 2) throw ParameterError(kModule, "equilibrium needs at least two ions");
    const UnitScales sc = derive_scales(species, trap, k);
    const double ell = sc.coulomb_constant_ell;
    const double m = species.mass;
    const double w2 = trap.omega * trap.omega;

    EquilibriumSolution eq;
    eq.mode = trap.mode;
    eq.omega = trap.omega;
    eq.mass = m;

    if (trap.mode == TrapMode::shared_linear_trap) {
        eq.d = std::cbrt(ell * 2.0 / (m * w2));
        eq.delta_d = eq.d;
        eq.eta = std::numeric_limits<double>::infinity();
        eq.epsilon = 2.0;
        eq.delta_d_closed_form = eq.d;
        eq.delta_d_root_find = eq.d;
    }
    else {
        const double d0 = trap.d0;
        eq.eta = ell / (m * w2 * std::pow(d0 / 3.0, 3));
        const double u_closed = delta_d_over_d0(eq.eta);
        const double u_root = delta_d_over_d0_root(eq.eta);
        eq.delta_d_closed_form = u_closed * d0;
        eq.delta_d_root_find = u_root * d0;
        if (std::abs(u_closed - u_root) > 1e-10 * std::max(u_root, 1e-300)) {
            std::ostringstream os;
            os.precision(17);
            os << "closed-form and root-find separations disagree: eta=" << eq.eta
               << " closed=" << u_closed << " root=" << u_root;
            throw NumericalError(kModule, os.str());
        }
        eq.delta_d = eq.delta_d_root_find;
        eq.d = d0 + eq.delta_d;
        eq.epsilon = 2.0 * eq.delta_d / eq.d;
    }
    eq.omega_tilde = trap.omega * std::sqrt(1.0 + eq.epsilon);
    const double balance = 0.5 * m * w2 * eq.delta_d;
    const double coulomb = ell / (eq.d * eq.d);
    eq.residual = (balance - coulomb) / coulomb;
    return eq;
}

double anharmonic_potential(double r, const EquilibriumSolution& eq, double relative_force)
{
    if (!(std::abs(r) < eq.d))
        throw ParameterError(kModule, "|r| must be smaller than the ion separation");
    const double k = eq.reduced_mass() * eq.omega_tilde * eq.omega_tilde;
    const double ep = eq.epsilon / (eq.epsilon + 1.0);
    const double x = r / eq.d;
    return 0.5 * k * r * r * (1.0 - ep * x * (1.0 - x)) - 0.5 * r * relative_force;
}

TurningPointShift turning_point_shift(const EquilibriumSolution& eq, double energy,
                                      double relative_force)
{
    if (!(energy >= 0.0)) throw ParameterError(kModule, "E_r must be >= 0");
    const double k = eq.reduced_mass() * eq.omega_tilde * eq.omega_tilde;
    const double ep = eq.epsilon / (eq.epsilon + 1.0);
    const double d = eq.d;
    const double f = 0.5 * relative_force;

    TurningPointShift out;
    out.closed_form = ep * energy / (k * d) * (1.0 + 6.0 * ep * f / (k * d));

    auto dV = [&](double r) {
        return k * r - 1.5 * k * ep * r * r / d + 2.0 * k * ep * r * r * r / (d * d) - f;
    };
    auto d2V = [&](double r) { return k - 3.0 * k * ep * r / d + 6.0 * k * ep * r * r / (d * d); };
    double rb = f / k;
    for (int it = 0; it < 100; ++it) {
        const double step = dV(rb) / d2V(rb);
        rb -= step;
        if (std::abs(step) <= 1e-16 * std::max(std::abs(rb), d * 1e-12)) break;
    }
    if (!(d2V(rb) > 0.0) || !(std::abs(rb) < d))
        throw ParameterError(kModule, "no stable minimum of the anharmonic potential");
    out.r_bar = rb;

    if (energy == 0.0) {
        out.r_left = out.r_right = rb;
        out.exact = 0.0;
        return out;
    }
    const double v0 = anharmonic_potential(rb, eq, relative_force);
    auto g = [&](double r) { return anharmonic_potential(r, eq, relative_force) - v0 - energy; };
    const double amp = std::sqrt(2.0 * energy / k);

    auto find_root = [&](double dir) {
        double inner = rb;
        double step = 0.5 * amp;
        double outer = rb + dir * step;
        while (true) {
            if (!(std::abs(outer) < d))
                throw ParameterError(kModule,
                                     "turning point leaves the domain |r| < d; E_r too large");
            if (g(outer) > 0.0) break;
            // Beyond a local maximum the well has no turning point on this side.
            if (dir * dV(outer) <= 0.0)
                throw ParameterError(kModule, "E_r exceeds the anharmonic barrier");
            inner = outer;
            step *= 2.0;
            outer = rb + dir * step;
        }
        double lo = std::min(inner, outer), hi = std::max(inner, outer);
        double glo = g(lo), ghi = g(hi);
        std::uintmax_t max_iter = 200;
        auto tol =
            boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
        auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, max_iter);
        return 0.5 * (a + b);
    };
    out.r_left = find_root(-1.0);
    out.r_right = find_root(+1.0);
    out.exact = 0.5 * (out.r_left + out.r_right) - rb;
    return out;
}

ChainEquilibrium solve_chain_equilibrium(const IonSpecies& species, const TrapArray& trap,
                                         const PhysicalConstants& k)
{
    trap.validate();
    const int n = trap.n_ions;
    const UnitScales sc = derive_scales(species, trap, k);
    const double ell = sc.ell_dimensionless();

    ChainEquilibrium out;
    out.positions.resize(n);
    out.trap_centers.assign(n, 0.0);
    if (trap.mode == TrapMode::separate_microtraps) {
        for (int i = 0; i < n; ++i)
            out.trap_centers[i] = (i - 0.5 * (n - 1)) * trap.d0;
    }
    if (n == 1) {
        out.positions[0] = out.trap_centers[0];
        return out;
    }
    if (n == 2) {
        const EquilibriumSolution eq = solve_equilibrium(species, trap, k);
        out.positions = {-0.5 * eq.d, 0.5 * eq.d};
        return out;
    }

    // Newton on the dimensionless chain.
    Eigen::VectorXd c(n), x(n);
    const double d0 = trap.mode == TrapMode::separate_microtraps ? trap.d0 / sc.a : 0.0;
    const double spacing = std::max(d0, std::cbrt(2.0 * ell));
    for (int i = 0; i < n; ++i) {
        c[i] = out.trap_centers[i] / sc.a;
        x[i] = (i - 0.5 * (n - 1)) * spacing;
    }
    auto gradient = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd g = p - c;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = p[j] - p[i];
                const double f = ell / (dx * dx);
                g[i] += f;
                g[j] -= f;
            }
        return g;
    };
    auto energy = [&](const Eigen::VectorXd& p) {
        double e = 0.5 * (p - c).squaredNorm();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) e += ell / (p[j] - p[i]);
        return e;
    };
    auto ordered = [&](const Eigen::VectorXd& p) {
        for (int i = 0; i + 1 < n; ++i)
            if (!(p[i + 1] > p[i])) return false;
        return true;
    };

    const double force_scale = std::max(1.0, ell / (spacing * spacing));
    double gnorm = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd g = gradient(x);
        gnorm = g.cwiseAbs().maxCoeff();
        if (gnorm <= 1e-14 * force_scale) break;
        Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = x[j] - x[i];
                const double kk = 2.0 * ell / (dx * dx * dx);
                h(i, i) += kk;
                h(j, j) += kk;
                h(i, j) -= kk;
                h(j, i) -= kk;
            }
        Eigen::VectorXd step = h.ldlt().solve(g);
        double lambda = 1.0;
        const double e0 = energy(x);
        Eigen::VectorXd trial = x - step;
        while (lambda > 1e-12 && (!ordered(trial) || energy(trial) > e0 + 1e-15 * std::abs(e0))) {
            lambda *= 0.5;
            trial = x - lambda * step;
        }
        x = trial;
    }
    if (!(gnorm <= 1e-10 * force_scale)) {
        std::ostringstream os;
        os << "chain equilibrium did not converge, residual force " << gnorm;
        throw NumericalError(kModule, os.str());
    }
    // Restore exact mirror symmetry of the symmetric arrangement.
    for (int i = 0; i < n / 2; ++i) {
        const double s = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    out.max_residual = gradient(x).cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) out.positions[i] = x[i] * sc.a;
    return out;
}

TrapArray trap_for(const IonSpecies& species, int n_ions, double epsilon, double a_over_d,
                   const PhysicalConstants& k)
{
    species.validate();
    if (!(epsilon > 0.0 && epsilon <= 2.0))
        throw ParameterError(kModule, "epsilon must lie in (0, 2]");
    if (!(a_over_d > 0.0)) throw ParameterError(kModule, "a/d must be > 0");
    const double ell =
        species.charge * species.charge / (4.0 * std::numbers::pi * k.epsilon0);
    const double m = species.mass;
    // a/d = sqrt(hbar / m omega) (epsilon m omega^2 / 4 ell)^(1/3) = C omega^(1/6)
    const double C = std::sqrt(k.hbar / m) * std::cbrt(epsilon * m / (4.0 * ell));
    const double w6 = a_over_d / C;
    TrapArray t;
    t.n_ions = n_ions;
    t.omega = std::pow(w6, 6);
    const double a = std::sqrt(k.hbar / (m * t.omega));
    const double d = a / a_over_d;
    if (epsilon == 2.0) {
        t.mode = TrapMode::shared_linear_trap;
        t.d0 = 0.0;
    }
    else {
        t.mode = TrapMode::separate_microtraps;
        t.d0 = d * (1.0 - 0.5 * epsilon);
    }
    return t;
}

TrapArray trap_at(const IonSpecies& species, int n_ions, double epsilon, double omega,
                  const PhysicalConstants& k)
{
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError(kModule, "omega must be > 0");
    const double a = std::sqrt(k.hbar / (species.mass * omega));
    if (!(epsilon > 0.0 && epsilon <= 2.0))
        throw ParameterError(kModule, "epsilon must lie in (0, 2]");
    const double ell =
        species.charge * species.charge / (4.0 * std::numbers::pi * k.epsilon0);
    const double d = std::cbrt(4.0 * ell / (epsilon * species.mass * omega * omega));
    TrapArray t = trap_for(species, n_ions, epsilon, a / d, k);
    t.omega = omega;
    return t;
}

}  // namespace pushgate
