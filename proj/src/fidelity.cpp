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

#include "pushgate/fidelity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "pushgate/errors.hpp"

namespace pushgate {

namespace {

constexpr double kPi = std::numbers::pi;
const char* kModule = "fidelity";

using Matrix = std::vector<std::vector<double>>;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double quad(const Matrix& K, const std::vector<double>& p)
{
    const std::size_t n = p.size();
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (p[k] == 0.0) continue;
        double r = 0.0;
        for (std::size_t l = 0; l < n; ++l) r += K[k][l] * p[l];
        s += p[k] * r;
    }
    return s;
}

// Stationary point of p^T K p on {sum_F p = 1, p_i = 0 off F}.
bool face_solution(const Matrix& K, const std::vector<int>& F, double scale, std::vector<double>& p)
{
    const int m = static_cast<int>(F.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) A(i, j) = 2 * K[F[i]][F[j]] / scale;
        A(i, m) = 1.0;
        A(m, i) = 1.0;
    }
    b(m) = 1.0;
    const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
    if (!x.allFinite() || (A * x - b).norm() > 1e-9) return false;
    p.assign(K.size(), 0.0);
    for (int i = 0; i < m; ++i) p[F[i]] = x(i);
    return true;
}

double matrix_scale(const Matrix& K)
{
    double s = 0.0;
    for (const auto& r : K)
        for (double v : r) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

void ThermalEnsemble::validate() const
{
    if (!(temperature >= 0) || !std::isfinite(temperature))
        throw ParameterError(kModule, "temperature must be finite and >= 0");
    if (n_samples < 1) throw ParameterError(kModule, "n_samples must be >= 1");
    for (double t : mode_temperatures)
        if (!(t >= 0) || !std::isfinite(t)) throw ParameterError(kModule, "mode temperatures must be >= 0");
}

double ThermalEnsemble::mode_temperature(int mode) const
{
    if (mode_temperatures.empty()) return temperature;
    if (mode < 0 || mode >= static_cast<int>(mode_temperatures.size()))
        throw ParameterError(kModule, "no temperature given for mode " + std::to_string(mode));
    return mode_temperatures[mode];
}

double pairwise_sum(const double* x, std::size_t n)
{
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

PhaseSampleSet make_sample_set(std::vector<std::vector<double>> phases)
{
    if (phases.empty()) throw InputError(kModule, "empty sample set");
    const std::size_t nb = phases.front().size();
    if (nb < 2 || (nb & (nb - 1)) != 0) throw InputError(kModule, "branch count must be a power of two");
    for (const auto& row : phases) {
        if (row.size() != nb) throw InputError(kModule, "ragged sample set");
        for (double v : row)
            if (!std::isfinite(v)) throw InputError(kModule, "non-finite phase in sample set");
    }
    PhaseSampleSet s;
    s.n_qubits = std::countr_zero(nb);
    s.phases = std::move(phases);
    const std::size_t ns = s.phases.size();
    s.mean.resize(nb);
    std::vector<double> col(ns);
    for (std::size_t k = 0; k < nb; ++k) {
        const double ref = s.phases[0][k];
        for (std::size_t i = 0; i < ns; ++i) col[i] = s.phases[i][k] - ref;
        s.mean[k] = ref + pairwise_sum(col.data(), ns) / static_cast<double>(ns);
    }
    s.delta.assign(ns, std::vector<double>(nb));
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t k = 0; k < nb; ++k) s.delta[i][k] = s.phases[i][k] - s.mean[k];
    s.ensemble.n_samples = static_cast<int>(ns);
    return s;
}

std::string to_string(FidelityOrder o) { return o == FidelityOrder::state_first ? "state_first" : "sample_first"; }

FidelityOrder fidelity_order_from_string(const std::string& s)
{
    if (s == "state_first") return FidelityOrder::state_first;
    if (s == "sample_first") return FidelityOrder::sample_first;
    throw InputError(kModule, "unknown fidelity order '" + s + "'");
}

std::vector<std::vector<double>> fidelity_phases(const PhaseSampleSet& s, bool echo)
{
    if (s.delta.empty()) throw InputError(kModule, "empty sample set");
    if (!echo) return s.delta;
    const int mask = s.branches() - 1;
    Matrix d = s.delta;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (int k = 0; k <= mask; ++k) d[i][k] = s.delta[i][k] + s.delta[i][mask ^ k];
    return d;
}

std::vector<std::vector<double>> infidelity_matrix(const std::vector<std::vector<double>>& d)
{
    if (d.empty()) throw InputError(kModule, "empty sample set");
    const std::size_t n = d.front().size(), ns = d.size();
    Matrix K(n, std::vector<double>(n, 0.0));
    std::vector<double> col(ns);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            for (std::size_t i = 0; i < ns; ++i) {
                const double h = std::sin(0.5 * (d[i][k] - d[i][l]));
                col[i] = 2 * h * h;
            }
            K[k][l] = K[l][k] = pairwise_sum(col.data(), ns) / static_cast<double>(ns);
        }
    return K;
}

double simplex_qp_max_enumerate(const std::vector<std::vector<double>>& K, std::vector<double>& p_out)
{
    const int n = static_cast<int>(K.size());
    if (n < 1 || n > 12) throw InputError(kModule, "enumeration supports 1 to 12 weights");
    const double scale = std::max(matrix_scale(K), 1e-300);
    double best = -1.0;
    std::vector<double> p;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> F;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) F.push_back(i);
        if (!face_solution(K, F, scale, p)) continue;
        if (*std::min_element(p.begin(), p.end()) < -1e-12) continue;
        for (auto& v : p) v = std::max(v, 0.0);
        const double v = quad(K, p);
        if (v > best) {
            best = v;
            p_out = p;
        }
    }
    return best;
}

double simplex_qp_max(const std::vector<std::vector<double>>& K, std::vector<double>& p_out, int* iterations)
{
    const int n = static_cast<int>(K.size());
    if (n < 1) throw InputError(kModule, "empty quadratic form");
    for (const auto& r : K)
        if (static_cast<int>(r.size()) != n) throw InputError(kModule, "quadratic form is not square");
    const double scale = matrix_scale(K);
    std::vector<double> p(n, 1.0 / n);
    if (scale == 0.0) {
        p_out = p;
        if (iterations) *iterations = 0;
        return 0.0;
    }
    std::vector<bool> free(n, true);
    std::vector<double> target;
    const double gtol = 1e-12 * scale;
    int it = 0;
    for (; it < 50 * n + 100; ++it) {
        std::vector<int> F;
        for (int i = 0; i < n; ++i)
            if (free[i]) F.push_back(i);
        if (!face_solution(K, F, scale, target)) break;
        int block = -1;
        double alpha = 1.0;
        for (int i : F) {
            const double d = target[i] - p[i];
            if (d < 0 && target[i] < 0) {
                const double a = p[i] / -d;
                if (a < alpha) {
                    alpha = a;
                    block = i;
                }
            }
        }
        for (int i : F) p[i] += alpha * (target[i] - p[i]);
        if (block >= 0) {
            p[block] = 0.0;
            free[block] = false;
            continue;
        }
        // Gradient of p^T K p; a fixed weight whose gradient exceeds the free level would raise it.
        std::vector<double> g(n, 0.0);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) g[k] += 2 * K[k][l] * p[l];
        double level = 0.0;
        for (int i : F) level = std::max(level, g[i]);
        int enter = -1;
        double worst = gtol;
        for (int i = 0; i < n; ++i)
            if (!free[i] && g[i] - level > worst) {
                worst = g[i] - level;
                enter = i;
            }
        if (enter < 0) {
            for (auto& v : p) v = std::max(v, 0.0);
            double s = 0.0;
            for (double v : p) s += v;
            for (auto& v : p) v /= s;
            p_out = p;
            if (iterations) *iterations = it + 1;
            return quad(K, p);
        }
        free[enter] = true;
    }
    if (n <= 12) {
        if (iterations) *iterations = it;
        return simplex_qp_max_enumerate(K, p_out);
    }
    throw NumericalError(kModule, "active-set solver did not converge");
}

double sample_worst_infidelity(const std::vector<double>& phases)
{
    if (phases.empty()) throw InputError(kModule, "empty phase vector");
    std::vector<double> a(phases.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        double y = std::remainder(phases[k], 2 * kPi);
        if (y < 0) y += 2 * kPi;
        a[k] = y;
    }
    std::sort(a.begin(), a.end());
    double gap = a.front() + 2 * kPi - a.back();
    for (std::size_t k = 1; k < a.size(); ++k) gap = std::max(gap, a[k] - a[k - 1]);
    const double arc = 2 * kPi - gap;
    if (arc >= kPi) return 1.0;
    const double s = std::sin(arc / 2);
    return s * s;
}

WorstCaseResult worst_case_fidelity(const PhaseSampleSet& samples, bool echo, FidelityOrder order)
{
    if (samples.size() == 0) throw InputError(kModule, "empty sample set");
    const Matrix d = fidelity_phases(samples, echo);
    WorstCaseResult r;
    r.order = order;
    r.echo = echo;
    if (order == FidelityOrder::state_first) {
        const Matrix K = infidelity_matrix(d);
        r.infidelity = std::clamp(simplex_qp_max(K, r.weights, &r.iterations), 0.0, 1.0);
    } else {
        std::vector<double> v(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) v[i] = sample_worst_infidelity(d[i]);
        r.infidelity = pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
    }
    r.fidelity = 1.0 - r.infidelity;
    return r;
}

int resolve_threads(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char* env = std::getenv("PUSHGATE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
    }
    return n;
}

InitialConditions thermal_sample(const SystemModel& sys, const ThermalEnsemble& ens, std::uint64_t index)
{
    ens.validate();
    const int nm = static_cast<int>(sys.modes.frequency.size());
    if (!ens.mode_temperatures.empty() && static_cast<int>(ens.mode_temperatures.size()) != nm)
        throw ParameterError(kModule, "mode_temperatures must list " + std::to_string(nm) + " modes");
    std::mt19937_64 rng(splitmix64(ens.seed ^ splitmix64(index)));
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    InitialConditions ic;
    ic.mode_energy.resize(nm);
    ic.mode_phase.resize(nm);
    for (int k = 0; k < nm; ++k) {
        const double kt = sys.constants.kB * ens.mode_temperature(k);
        ic.mode_energy[k] = kt > 0 ? std::exponential_distribution<double>(1.0 / kt)(rng) : 0.0;
        ic.mode_phase[k] = phase(rng);
    }
    return ic;
}

PhaseSampleSet monte_carlo_phase_samples(const SystemModel& sys, const std::vector<ForcePulse>& pulses,
                                         const ThermalEnsemble& ens, const MonteCarloOptions& opt)
{
    ens.validate();
    const int ns = ens.n_samples;
    std::vector<PhaseTable> tables(ns);
    std::vector<std::string> errors(ns);
    std::atomic<int> next{0};
    IntegrationOptions io = opt.integration;
    io.record_every = 0;
    auto work = [&] {
        for (int i = next++; i < ns; i = next++) {
            try {
                tables[i] = simulate_phase_table(sys, pulses, thermal_sample(sys, ens, i), io);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int nt = std::min(resolve_threads(opt.threads), ns);
    if (nt <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (int i = 0; i < ns; ++i)
        if (!errors[i].empty()) throw DynamicsError(kModule, "sample " + std::to_string(i) + ": " + errors[i]);

    std::vector<std::vector<double>> ph(ns);
    for (int i = 0; i < ns; ++i) ph[i] = tables[i].phases;
    PhaseSampleSet s = make_sample_set(std::move(ph));
    s.tables = std::move(tables);
    s.ensemble = ens;
    s.zero_temperature = simulate_phase_table(sys, pulses, {}, io).phases;
    s.metadata["seed"] = std::to_string(ens.seed);
    s.metadata["temperature_K"] = std::to_string(ens.temperature);
    s.metadata["n_samples"] = std::to_string(ns);
    return s;
}

std::string to_string(LaserConfiguration c)
{
    return c == LaserConfiguration::travelling_wave ? "travelling_wave" : "standing_wave";
}

LaserConfiguration laser_configuration_from_string(const std::string& s)
{
    if (s == "travelling_wave" || s == "TW") return LaserConfiguration::travelling_wave;
    if (s == "standing_wave" || s == "SW") return LaserConfiguration::standing_wave;
    throw InputError(kModule, "unknown laser configuration '" + s + "'");
}

void LaserGeometry::validate() const
{
    if (!(waist > 0)) throw ParameterError(kModule, "waist must be > 0");
    if (!(wavelength > 0)) throw ParameterError(kModule, "wavelength must be > 0");
    if (!(power > 0)) throw ParameterError(kModule, "power must be > 0");
    if (configuration == LaserConfiguration::standing_wave && !(alpha > 0 && alpha <= kPi))
        throw ParameterError(kModule, "alpha must lie in (0, pi]");
}

double LaserGeometry::k_alpha() const { return 4 * kPi / wavelength * std::sin(alpha / 2); }

double q_polynomial(double y)
{
    if (y == 0.0) throw ParameterError(kModule, "Q(y) needs y != 0");
    const double y2 = y * y;
    return 12 * y2 * y2 - 64 * y2 + 89 - 34 / y2 + 1 / (y2 * y2);
}

double spatial_infidelity(const LaserGeometry& geom, const IonSpecies& species, double omega,
                          double temperature, const PhysicalConstants& k)
{
    geom.validate();
    if (!(omega > 0)) throw ParameterError(kModule, "omega must be > 0");
    if (!(temperature >= 0)) throw ParameterError(kModule, "temperature must be >= 0");
    const double a = std::sqrt(k.hbar / (species.mass * omega));
    const double r = k.kB * temperature / (k.hbar * omega);
    if (geom.configuration == LaserConfiguration::travelling_wave) {
        if (!(geom.x0 > 0)) throw ParameterError(kModule, "travelling-wave formula needs x0 > 0");
        const double y = 2 * geom.x0 / geom.waist;
        const double aw2 = (a / geom.waist) * (a / geom.waist);
        const double t = 3 * kPi * r;
        return kPi / 3 * t * aw2 * (y - 1 / y) * (y - 1 / y) + 2.0 / 9 * t * t * aw2 * aw2 * q_polynomial(y);
    }
    const double ka = geom.k_alpha() * a;
    const double e = -std::expm1(-16 * ka * ka * r);
    return kPi * kPi / 128 * e * e;
}

double photon_scattering(const LaserGeometry& geom, const IonSpecies& species, double omega,
                         const PhysicalConstants& k)
{
    geom.validate();
    if (!(omega > 0)) throw ParameterError(kModule, "omega must be > 0");
    const double c = k.c;
    const double m = species.mass;
    const double lam = geom.wavelength;
    const double w = geom.waist;
    if (geom.configuration == LaserConfiguration::travelling_wave) {
        if (!(geom.x0 > 0)) throw ParameterError(kModule, "travelling-wave formula needs x0 > 0");
        const double cp = std::pow(kPi, 4) * c / (2 * std::numbers::sqrt2) * m / (lam * lam * lam);
        const double u = geom.x0 / w;
        return cp * std::pow(w, 6) / (geom.x0 * geom.x0) * omega * omega / geom.power * std::exp(2 * u * u);
    }
    const double cz = std::cos(geom.k_alpha() * geom.z0);
    if (std::abs(cz) < 1e-12) throw ParameterError(kModule, "cos(k_alpha z0) = 0: standing-wave node");
    const double s = std::sin(geom.alpha / 2);
    const double cpp = kPi * kPi * c / (4 * std::numbers::sqrt2) * m / lam / (s * s);
    return cpp * w * w * omega * omega / geom.power / (cz * cz);
}

double dynamic_bracket_squared(double omega_tau)
{
    if (!(omega_tau > 0)) throw ParameterError(kModule, "omega tau must be > 0");
    const double u = 2 / (3 * omega_tau);
    const double b = 2 * u * u + 1;
    return b * b;
}

double closed_form_dynamic_infidelity(DynamicRegime regime, const DynamicErrorParams& p, const PhysicalConstants& k)
{
    if (!(p.omega > 0)) throw ParameterError(kModule, "omega must be > 0");
    if (!(p.temperature >= 0)) throw ParameterError(kModule, "temperature must be >= 0");
    if (!(p.a_over_d > 0)) throw ParameterError(kModule, "a/d must be > 0");
    const double r = k.kB * p.temperature / (k.hbar * p.omega);
    const double ad4 = std::pow(p.a_over_d, 4);
    if (regime == DynamicRegime::small_eps) {
        const double t = 3 * kPi * r;
        return t * t * ad4;
    }
    const double t = p.vartheta_L * r / 3;
    return t * t * ad4 * dynamic_bracket_squared(p.omega_tau);
}

InfidelityBreakdown total_infidelity(double spatial, double dynamic, double scattered)
{
    for (double v : {spatial, dynamic, scattered})
        if (!(v >= 0) || !std::isfinite(v)) throw ParameterError(kModule, "infidelity components must be finite and >= 0");
    InfidelityBreakdown b;
    b.P_thermal_spatial = spatial;
    b.P_thermal_dynamic = dynamic;
    b.N_scattered = scattered;
    b.P_total = spatial + dynamic + scattered;
    b.valid = spatial + dynamic <= 0.1 && scattered <= 0.1;
    return b;
}

void write_samples_csv(std::ostream& os, const PhaseSampleSet& s)
{
    const int nb = s.branches();
    os << "# schema: pushgate-samples v1\n";
    os << "# temperature_K: " << s.ensemble.temperature << "\n";
    os << "# seed: " << s.ensemble.seed << "\n";
    os << "# n_samples: " << s.size() << "\n";
    os << "# units: rad\n";
    for (const auto& [k, v] : s.metadata) os << "# " << k << ": " << v << "\n";
    os << "sample";
    for (int k = 0; k < nb; ++k) os << ",Theta_" << branch_label(k, s.n_qubits);
    for (int k = 0; k < nb; ++k) os << ",dTheta_" << branch_label(k, s.n_qubits);
    os << "\n";
    const auto prec = os.precision(17);
    for (int i = 0; i < s.size(); ++i) {
        os << i;
        for (double v : s.phases[i]) os << "," << v;
        for (double v : s.delta[i]) os << "," << v;
        os << "\n";
    }
    os.precision(prec);
}

std::string fidelity_json(const WorstCaseResult& r, const PhaseSampleSet& s)
{
    nlohmann::ordered_json j;
    j["fidelity"] = r.fidelity;
    j["infidelity"] = r.infidelity;
    j["order"] = to_string(r.order);
    j["echo"] = r.echo;
    if (!r.weights.empty()) j["worst_state_weights"] = r.weights;
    j["n_samples"] = s.size();
    j["temperature_K"] = s.ensemble.temperature;
    j["seed"] = s.ensemble.seed;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (int k = 0; k < s.branches(); ++k) m[branch_label(k, s.n_qubits)] = s.mean[k];
    j["mean_phase"] = m;
    return j.dump(2);
}

}  // namespace pushgate
