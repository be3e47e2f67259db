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
#include <vector>

#include "doctest.h"
#include "pushgate/errors.hpp"
#include "pushgate/ode.hpp"

using namespace pushgate;

TEST_CASE("harmonic oscillator to tolerance")
{
    auto rhs = [](double, const ode::State& y, ode::State& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
        dy[2] = y[0] * y[0];  // quadrature of x^2
    };
    ode::State y(3);
    y << 1.0, 0.0, 0.0;
    ode::Options o;
    o.rtol = 1e-11;
    o.atol = 1e-13;
    ode::Stats st;
    const double T = 20.0 * M_PI;
    const ode::State end = ode::integrate(rhs, 0.0, T, y, o, st);
    CHECK(std::abs(end[0] - 1.0) < 1e-8);
    CHECK(std::abs(end[1]) < 1e-8);
    CHECK(end[2] == doctest::Approx(T / 2).epsilon(1e-9));
    CHECK(st.steps > 0);
    CHECK(st.max_error_norm <= 1.0);
}

TEST_CASE("dense output is fourth order accurate inside steps")
{
    auto rhs = [](double, const ode::State& y, ode::State& dy) { dy[0] = -y[0]; };
    ode::State y(1);
    y << 1.0;
    ode::Options o;
    o.rtol = 1e-10;
    o.atol = 1e-12;
    ode::Stats st;
    double worst = 0.0;
    ode::integrate(rhs, 0.0, 5.0, y, o, st, [&](const ode::DenseStep& d, const ode::State&) {
        for (double s : {0.1, 0.37, 0.5, 0.81}) {
            const double t = d.t_old + s * d.h;
            worst = std::max(worst, std::abs(d(t)[0] - std::exp(-t)));
        }
    });
    CHECK(worst < 1e-9);
}

TEST_CASE("stiff blow-up reports step underflow")
{
    auto rhs = [](double, const ode::State& y, ode::State& dy) { dy[0] = y[0] * y[0]; };
    ode::State y(1);
    y << 1.0;
    ode::Options o;
    ode::Stats st;
    // Solution 1/(1 - t) diverges at t = 1.
    CHECK_THROWS_AS(ode::integrate(rhs, 0.0, 2.0, y, o, st), NumericalError);
}
