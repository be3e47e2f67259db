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

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "pushgate/errors.hpp"

namespace pushgate::ode {

// Heap-free for the small systems used here.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 40, 1>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0;  // 0: pick automatically
    double h_max = std::numeric_limits<double>::infinity();
    double h_min = 1e-14;  // relative to the interval length
    long max_steps = 10'000'000;
    // Per-component absolute tolerance override; empty means `atol` everywhere.
    State atol_vec;
};

struct Stats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
    double max_error_norm = 0.0;  // largest accepted scaled error estimate
};

// Continuous extension over one accepted step.
class DenseStep {
public:
    double t_old = 0.0;
    double h = 0.0;
    State r1, r2, r3, r4, r5;

    State operator()(double t) const
    {
        const double s = (t - t_old) / h;
        const double s1 = 1.0 - s;
        return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
    }
};

// Dormand-Prince 5(4) with the Hairer dense output. `rhs(t, y, dydt)`;
// `on_step(dense, y_new)` is called after every accepted step and may
// throw to abort.
template <class Rhs, class OnStep>
State integrate(Rhs&& rhs, double t0, double t1, State y, const Options& opt, Stats& st,
                OnStep&& on_step)
{
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    const Eigen::Index n = y.size();
    const double span = t1 - t0;
    if (!(span > 0.0)) throw NumericalError("dynamics", "integration interval must be positive");
    State atol = opt.atol_vec.size() == n ? opt.atol_vec : State::Constant(n, opt.atol);

    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n), err(n);
    double t = t0;
    rhs(t, y, k1);
    st.rhs_evals++;

    auto norm = [&](const State& a, const State& b, const State& e) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = atol[i] + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
            const double q = e[i] / sc;
            s += q * q;
        }
        return std::sqrt(s / static_cast<double>(n));
    };

    double h = opt.h_init;
    if (!(h > 0.0)) {
        // Hairer's starting-step heuristic.
        State sc(n);
        for (Eigen::Index i = 0; i < n; ++i) sc[i] = atol[i] + opt.rtol * std::abs(y[i]);
        const double d0 = std::sqrt((y.array() / sc.array()).square().mean());
        const double dd1 = std::sqrt((k1.array() / sc.array()).square().mean());
        double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
        h0 = std::min(h0, opt.h_max);
        yt = y + h0 * k1;
        rhs(t + h0, yt, k2);
        st.rhs_evals++;
        const double dd2 = std::sqrt(((k2 - k1).array() / sc.array()).square().mean()) / h0;
        const double m = std::max(dd1, dd2);
        const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
        h = std::min({100.0 * h0, h1, opt.h_max});
    }
    h = std::min(h, span);
    const double h_floor = opt.h_min * span;

    double err_old = 1e-4;
    bool last_rejected = false;
    DenseStep dense;
    while (t < t1) {
        if (st.steps + st.rejected >= opt.max_steps) {
            std::ostringstream os;
            os << "step limit reached at t=" << t;
            throw NumericalError("dynamics", os.str());
        }
        if (h < h_floor) {
            std::ostringstream os;
            os << "step size underflow at t=" << t << " (h=" << h << ")";
            throw NumericalError("dynamics", os.str());
        }
        bool final_step = false;
        if (t + h >= t1) {
            h = t1 - t;
            final_step = true;
        }

        yt = y + h * a21 * k1;
        rhs(t + c2 * h, yt, k2);
        yt = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, yt, k3);
        yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, yt, k4);
        yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, yt, k5);
        yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        const double t_new = final_step ? t1 : t + h;
        rhs(t_new, yt, k6);
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        rhs(t_new, ynew, k7);
        st.rhs_evals += 6;

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = norm(y, ynew, err);
        if (!std::isfinite(en)) {
            st.rejected++;
            h *= 0.2;
            last_rejected = true;
            continue;
        }

        if (en <= 1.0) {
            dense.t_old = t;
            dense.h = h;
            dense.r1 = y;
            dense.r2 = ynew - y;
            dense.r3 = h * k1 - dense.r2;
            dense.r4 = dense.r2 - h * k7 - dense.r3;
            dense.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

            st.steps++;
            st.max_error_norm = std::max(st.max_error_norm, en);
            t = t_new;
            y = ynew;
            k1 = k7;
            on_step(static_cast<const DenseStep&>(dense), static_cast<const State&>(y));

            // PI step-size controller.
            const double e = std::max(en, 1e-10);
            double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_old, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
            err_old = e;
            h = std::min(h * fac, opt.h_max);
            last_rejected = false;
        }
        else {
            st.rejected++;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
    }
    return y;
}

template <class Rhs>
State integrate(Rhs&& rhs, double t0, double t1, State y, const Options& opt, Stats& st)
{
    return integrate(std::forward<Rhs>(rhs), t0, t1, std::move(y), opt, st,
                     [](const DenseStep&, const State&) {});
}

}  // namespace pushgate::ode
