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


#include "pushgate/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "pushgate/config.hpp"
#include "pushgate/errors.hpp"
#include "pushgate/gate_synthesis.hpp"
#include "pushgate/phases.hpp"
#include "pushgate/statics.hpp"
#include "pushgate/sweep.hpp"
#include "pushgate/verification.hpp"

namespace pushgate {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;
const char* kModule = "cli";
constexpr double kCczTolerance = 0.05;  // rad

struct Common {
    std::string config, preset, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    bool strict = false;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--config", c.config, "JSON run configuration");
    app->add_option("--preset", c.preset, "fig3, fig4, two_ion_smalleps, linear_trap, toffoli");
    app->add_option("--seed", c.seed, "Monte Carlo seed");
    app->add_option("--samples", c.samples, "Monte Carlo ensemble size");
    app->add_option("--out", c.out, "output directory");
    app->add_flag("--strict", c.strict, "treat warnings and soft checks as failures");
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load(const Common& c)
{
    RunConfig rc = resolve_config(c.preset, c.config.empty() ? std::string() : read_text(c.config));
    if (c.seed) {
        if (rc.ensemble) rc.ensemble->seed = *c.seed;
        if (rc.sweep) rc.sweep->seed = *c.seed;
    }
    if (c.samples) {
        if (*c.samples < 0) throw ConfigError(kModule, "--samples must be >= 0");
        if (rc.ensemble) rc.ensemble->samples = *c.samples;
        if (rc.sweep) rc.sweep->samples = *c.samples;
    }
    if (!c.out.empty()) rc.output.dir = c.out;
    return rc;
}

std::string out_dir(const RunConfig& rc) { return rc.output.dir.empty() ? "pushgate_out" : rc.output.dir; }

std::string write_file(const std::string& dir, const std::string& name, const std::string& content)
{
    fs::create_directories(dir);
    const fs::path p = fs::path(dir) / name;
    std::ofstream os(p);
    if (!os) throw InputError(kModule, "cannot write '" + p.string() + "'");
    os << content;
    return p.string();
}

std::string num(double x, const char* f = "%.6g")
{
    char buf[48];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

int pushes_per_gate(const std::string& kind, bool pi_variant)
{
    if (kind == "single") return 1;
    if (kind == "toffoli") return pi_variant ? 2 : 1;
    return 2;
}

// Nearest-pair system used for design (two ions, same trap parameters).
SystemModel pair_system(const IonSpecies& species, TrapArray trap)
{
    trap.n_ions = 2;
    return make_system(species, trap);
}

double simulated_pair_phase(const SystemModel& sys, double xi, double omega_tau)
{
    ForcePulse p;
    p.xi = xi;
    p.tau = omega_tau / sys.trap.omega;
    return overall_phase_2q(simulate_phase_table(sys, {p}));
}

struct BudgetLine {
    bool available = false;
    InfidelityBreakdown b;
    std::string note;
};

BudgetLine budget(const RunConfig& rc, const IonSpecies& species, const SystemModel& pair, double vartheta_L,
                  double omega_tau)
{
    BudgetLine out;
    if (!rc.laser || !rc.ensemble) {
        out.note = "needs laser and ensemble blocks";
        return out;
    }
    const double omega = pair.trap.omega, eps = pair.pair.epsilon;
    const double T = rc.ensemble->temperature_K(omega);
    const LaserGeometry g = rc.laser->resolve(species);
    DynamicErrorParams ap;
    ap.temperature = T;
    ap.omega = omega;
    ap.a_over_d = pair.scales.a / pair.pair.d;
    ap.vartheta_L = vartheta_L;
    ap.omega_tau = omega_tau;
    double dynamic;
    if (std::abs(eps - 2) < 1e-9) {
        dynamic = closed_form_dynamic_infidelity(DynamicRegime::eps2, ap);
    }
    else if (eps <= 0.1) {
        dynamic = closed_form_dynamic_infidelity(DynamicRegime::small_eps, ap);
    }
    else {
        out.note = "closed-form dynamic term exists for epsilon = 2 or epsilon <= 0.1";
        return out;
    }
    out.b = total_infidelity(spatial_infidelity(g, species, omega, T), dynamic, photon_scattering(g, species, omega));
    out.available = true;
    return out;
}

json budget_json(const BudgetLine& b)
{
    if (!b.available) return json{{"available", false}, {"note", b.note}};
    return json{{"available", true},
                {"P_spatial", b.b.P_thermal_spatial},
                {"P_dynamic", b.b.P_thermal_dynamic},
                {"N", b.b.N_scattered},
                {"P_total", b.b.P_total},
                {"valid", b.b.valid}};
}

void print_budget(std::ostream& out, const BudgetLine& b)
{
    if (!b.available) {
        out << "infidelity budget: n/a (" << b.note << ")\n";
        return;
    }
    out << "infidelity budget: P_spatial " << num(b.b.P_thermal_spatial) << ", P_dynamic "
        << num(b.b.P_thermal_dynamic) << ", N " << num(b.b.N_scattered) << ", P_total " << num(b.b.P_total)
        << (b.b.valid ? "" : "  (outside the small-error regime)") << "\n";
}

json envelope(const RunConfig& rc, const std::string& command)
{
    json j;
    j["command"] = command;
    j["config"] = json::parse(config_json(rc));
    return j;
}

int cmd_design(const RunConfig& rc, bool strict, std::ostream& out, std::ostream& err)
{
    if (!rc.trap || !rc.pulse) throw ConfigError(kModule, "design needs trap and pulse blocks");
    const PulseConfig& pc = *rc.pulse;
    if (!pc.target_phase) throw ConfigError(kModule, "design needs pulse.target_phase");
    if (pc.xi.has_value() == pc.omega_tau.has_value())
        throw ConfigError(kModule, "design needs exactly one free variable: give pulse.xi or pulse.omega_tau");
    const double target = *pc.target_phase;
    if (!(target > 0) || !std::isfinite(target)) throw DesignError(kModule, "target phase must be > 0");

    const IonSpecies species = rc.species.resolve();
    const SystemModel sys = pair_system(species, rc.trap->resolve(species));
    const int n = pushes_per_gate(rc.sequence.kind, rc.sequence.pi_variant);
    const double per = target / n;
    const double eps = sys.pair.epsilon, omega = sys.trap.omega;

    double xi_a, xi_s, wt_a, wt_s, v_a, v_s;
    if (pc.xi) {
        xi_a = xi_s = *pc.xi;
        const GateDesign ga = design_gate_time(eps, *pc.xi, per, DesignModel::analytic);
        const GateDesign gs = design_gate_time(sys, *pc.xi, per, DesignModel::simulated);
        wt_a = ga.omega_tau;
        wt_s = gs.omega_tau;
        v_a = ga.vartheta_analytic;
        v_s = gs.vartheta_simulated;
    }
    else {
        wt_a = wt_s = *pc.omega_tau;
        if (wt_a < kMinOmegaTau) {
            const std::string msg = "omega tau = " + num(wt_a) + " is below the adiabatic limit " + num(kMinOmegaTau);
            if (strict) throw DesignError(kModule, msg);
            err << "warning: " << msg << "\n";
        }
        xi_a = std::sqrt(per / analytic_vartheta_general(eps, wt_a, 1.0));
        v_a = analytic_vartheta_general(eps, wt_a, xi_a);
        xi_s = xi_a;
        v_s = simulated_pair_phase(sys, xi_s, wt_s);
        for (int it = 0; it < 6 && std::abs(v_s / per - 1) > 1e-10; ++it) {
            if (!(v_s > 0))
                throw DesignError(kModule, "simulated phase is " + num(v_s) + " at omega tau = " + num(wt_s) +
                                               "; no force reaches the target");
            xi_s *= std::sqrt(per / v_s);
            v_s = simulated_pair_phase(sys, xi_s, wt_s);
        }
    }
    const double force_unit = sys.scales.force_unit();
    const BudgetLine bl = budget(rc, species, sys, target, wt_a);

    out << "design: " << rc.sequence.kind << ", target phase " << num(target) << " rad (" << n
        << (n == 1 ? " push" : " pushes") << " of " << num(per) << " rad)\n";
    out << "trap: epsilon " << num(eps) << ", omega " << num(omega) << " rad/s, a/d " << num(sys.scales.a / sys.pair.d)
        << ", d " << num(sys.pair.d) << " m\n";
    out << "analytic : xi " << num(xi_a) << " (F0 " << num(xi_a * force_unit) << " N), omega tau " << num(wt_a)
        << ", tau " << num(wt_a / omega) << " s, predicted vartheta " << num(v_a) << "\n";
    out << "simulated: xi " << num(xi_s) << " (F0 " << num(xi_s * force_unit) << " N), omega tau " << num(wt_s)
        << ", tau " << num(wt_s / omega) << " s, simulated vartheta " << num(v_s) << "\n";
    if (std::abs(eps - 2) < 1e-9) {
        const double tl = 3 * std::sqrt(kPi) / (omega * xi_a * xi_a * std::sqrt(2.0)) * (per / kPi);
        out << "leading order (shared trap): tau_L = 3 sqrt(pi)/(omega xi^2 sqrt 2) * (phase/pi) = " << num(tl)
            << " s\n";
    }
    print_budget(out, bl);

    json j = envelope(rc, "design");
    j["target_phase"] = target;
    j["pushes"] = n;
    j["epsilon"] = eps;
    j["omega"] = omega;
    j["a_over_d"] = sys.scales.a / sys.pair.d;
    j["analytic"] = {{"xi", xi_a}, {"F0_N", xi_a * force_unit}, {"omega_tau", wt_a}, {"tau_s", wt_a / omega},
                     {"vartheta", v_a}};
    j["simulated"] = {{"xi", xi_s}, {"F0_N", xi_s * force_unit}, {"omega_tau", wt_s}, {"tau_s", wt_s / omega},
                      {"vartheta", v_s}};
    j["budget"] = budget_json(bl);
    out << "wrote " << write_file(out_dir(rc), "design.json", j.dump(2) + "\n") << "\n";
    return kExitOk;
}

// Fills xi or omega tau from the target phase with the analytic law.
PulseConfig resolve_pulse(const RunConfig& rc, const SystemModel& pair)
{
    PulseConfig pc = *rc.pulse;
    if (pc.xi && pc.omega_tau) return pc;
    if (!pc.target_phase)
        throw ConfigError(kModule, "simulate needs pulse.xi and pulse.omega_tau, or pulse.target_phase with one of them");
    const double per = *pc.target_phase / pushes_per_gate(rc.sequence.kind, rc.sequence.pi_variant);
    const double eps = pair.pair.epsilon;
    if (pc.xi)
        pc.omega_tau = design_omega_tau(eps, *pc.xi, per);
    else if (pc.omega_tau)
        pc.xi = std::sqrt(per / analytic_vartheta_general(eps, *pc.omega_tau, 1.0));
    else
        throw ConfigError(kModule, "simulate needs pulse.xi or pulse.omega_tau");
    return pc;
}

int cmd_simulate(const RunConfig& rc, bool strict, std::ostream& out)
{
    if (!rc.trap || !rc.pulse) throw ConfigError(kModule, "simulate needs trap and pulse blocks");
    const IonSpecies species = rc.species.resolve();
    const TrapArray trap = rc.trap->resolve(species);
    const SystemModel sys = make_system(species, trap);
    const SystemModel pair = pair_system(species, trap);
    PulseConfig pc = resolve_pulse(rc, pair);
    const std::string& kind = rc.sequence.kind;
    if (kind == "toffoli" && rc.pulse->target_phase && !rc.pulse->xi && sys.n() == 3) {
        // The network needs theta on the nearest-neighbour pair, so tune xi
        // on the simulated pairwise phase.
        const double per = *rc.pulse->target_phase / pushes_per_gate(kind, rc.sequence.pi_variant);
        for (int it = 0; it < 4; ++it) {
            const double th = pairwise_phases_3q(simulate_phase_table(sys, {make_pulse(pc, sys)}))[0];
            if (std::abs(th / per - 1) < 1e-9) break;
            pc.xi = *pc.xi * std::sqrt(per / th);
        }
    }
    RunConfig echo = rc;
    echo.pulse = pc;
    const std::string dir = out_dir(rc);

    if (kind == "toffoli" ? sys.n() != 3 : sys.n() != 2)
        throw ConfigError(kModule, "sequence '" + kind + "' needs " + (kind == "toffoli" ? "3" : "2") + " ions");

    ForcePulse p = make_pulse(pc, sys);
    if (kind == "force_swap" && p.light_shift_sign == 0) p.light_shift_sign = p.sign;
    ForcePulse q = p;
    q.sign = -p.sign;

    std::vector<PhaseTable> tables;
    PulseSequence seq;
    if (kind == "single" || (kind == "toffoli" && !rc.sequence.pi_variant)) {
        tables = {simulate_phase_table(sys, {p})};
        seq.n_qubits = sys.n();
        seq.elements = {SequenceElement::push()};
    }
    else if (kind == "spin_echo" || kind == "toffoli") {
        const PhaseTable t = simulate_phase_table(sys, {p});
        tables = {t, t};
        seq = spin_echo_sequence(sys.n());
    }
    else {
        tables = {simulate_phase_table(sys, {p}), simulate_phase_table(sys, {q})};
        seq = swap_pair_sequence(2, kind == "force_swap" ? PushVariant::sign_flipped : PushVariant::detuning_flipped);
    }
    seq.elements.push_back(SequenceElement::local(calibrate_rotations(seq, tables)));
    const SequenceResult res = compose_sequence(seq, tables);

    json report = envelope(echo, "simulate");
    report["sequence"] = sequence_table(seq);
    report["gate"] = json::parse(gate_json(res.gate));
    const double wt = *pc.omega_tau, xi = *pc.xi;
    out << "simulate: " << kind << " on " << sys.n() << " ions, epsilon " << num(pair.pair.epsilon) << ", omega "
        << num(sys.trap.omega) << " rad/s, xi " << num(xi) << " (F0 " << num(xi * sys.scales.force_unit())
        << " N), omega tau " << num(wt) << " (tau " << num(wt / sys.trap.omega) << " s)\n";
    int code = kExitOk;

    if (kind == "toffoli") {
        const auto pw = pairwise_phases_3q(tables[0]);
        const double theta = rc.sequence.pi_variant ? 2 * pw[0] : pw[0];
        PulseSequence net = ccz_network_sequence(theta, rc.sequence.pi_variant);
        net.elements[0] = SequenceElement::diagonal(res.gate, "simulated stage");
        const SequenceResult nr = compose_sequence(net, {});
        const double dist = nr.diagonal ? gate_distance(nr.gate, ccz_gate()) : kPi;
        const auto it = rc.tolerances.find("ccz");
        const double tol = it == rc.tolerances.end() ? kCczTolerance : it->second;
        const bool pass = dist < tol;
        out << "pairwise phases (12, 13, 23): " << num(pw[0]) << ", " << num(pw[1]) << ", " << num(pw[2])
            << "; ratio 13/12 " << num(pw[1] / pw[0]) << "\n";
        out << "CCZ check: " << (pass ? "pass" : "FAIL") << " (distance " << num(dist) << " rad, tolerance "
            << num(tol) << ", theta " << num(theta) << ")\n";
        report["pairwise"] = pw;
        report["theta"] = theta;
        report["ccz"] = {{"distance", dist}, {"tolerance", tol}, {"passed", pass}};
        if (!pass && strict) code = kExitFailure;
    }
    else {
        const double single = overall_phase_2q(tables[0]);
        const double net = overall_phase_2q(make_table(res.gate.phases));
        const double theta = analytic_theta(pair.pair.epsilon, wt, xi);
        const double general = analytic_vartheta_general(pair.pair.epsilon, wt, xi);
        out << "per-push vartheta: simulated " << num(single, "%.8g") << ", theta law " << num(theta, "%.8g")
            << " (ratio " << num(single / theta, "%.6f") << "), general law " << num(general, "%.8g") << " (ratio "
            << num(single / general, "%.6f") << ")\n";
        out << "net gate vartheta " << num(net, "%.8g") << " rad\n";
        report["vartheta_push"] = single;
        report["vartheta_net"] = net;
        report["theta_law"] = theta;
        report["general_law"] = general;
        if (rc.pulse->target_phase) {
            const double d = gate_distance(res.gate, controlled_phase(2, 1, 2, *rc.pulse->target_phase));
            out << "distance to CP(" << num(*rc.pulse->target_phase) << "): " << num(d) << " rad\n";
            report["target_distance"] = d;
        }
    }

    json tj = envelope(echo, "simulate");
    tj["tables"] = json::array();
    for (const auto& t : tables) tj["tables"].push_back(json::parse(phase_table_json(t)));
    out << "wrote " << write_file(dir, "phase_tables.json", tj.dump(2) + "\n") << "\n";

    if (rc.ensemble && rc.ensemble->samples > 0) {
        ThermalEnsemble ens;
        ens.temperature = rc.ensemble->temperature_K(sys.trap.omega);
        ens.n_samples = rc.ensemble->samples;
        ens.seed = rc.ensemble->seed;
        const PhaseSampleSet s = monte_carlo_phase_samples(sys, {p}, ens);
        const bool echoed = kind != "single" && kind != "toffoli";
        const WorstCaseResult wc = worst_case_fidelity(s, echoed, fidelity_order_from_string(rc.ensemble->order));
        out << "thermal ensemble: T " << num(ens.temperature) << " K, " << ens.n_samples << " samples, seed "
            << ens.seed << ": " << (echoed ? "echo " : "") << "infidelity " << num(wc.infidelity) << "\n";
        std::ostringstream csv;
        csv << "# config: " << config_json(echo) << "\n";
        write_samples_csv(csv, s);
        out << "wrote " << write_file(dir, "samples.csv", csv.str()) << "\n";
        json fj = envelope(echo, "simulate");
        fj["fidelity"] = json::parse(fidelity_json(wc, s));
        out << "wrote " << write_file(dir, "fidelity.json", fj.dump(2) + "\n") << "\n";
        report["infidelity"] = wc.infidelity;
    }
    const double vartheta_L =
        rc.pulse->target_phase ? *rc.pulse->target_phase : (sys.n() == 2 ? overall_phase_2q(tables[0]) : 0.0);
    const BudgetLine bl = budget(rc, species, pair, vartheta_L, wt);
    if (bl.available) print_budget(out, bl);
    report["budget"] = budget_json(bl);

    if (rc.output.trajectories) {
        IntegrationOptions io;
        io.record_uniform = 1001;
        for (int k = 0; k < (1 << sys.n()); ++k) {
            const std::string label = branch_label(k, sys.n());
            std::ostringstream csv;
            write_trajectory_csv(csv, integrate_branch(sys, {p}, label, {}, io), {{"config", config_json(echo)}});
            write_file(dir, "trajectory_" + label + ".csv", csv.str());
        }
        out << "wrote " << (1 << sys.n()) << " trajectory CSVs\n";
    }
    out << "wrote " << write_file(dir, "gate_report.json", report.dump(2) + "\n") << "\n";
    return code;
}

void apply_range(SweepConfig& s, const std::string& axis, const std::string& range)
{
    if (!axis.empty()) s.axis = axis;
    if (range.empty()) return;
    std::vector<std::string> parts;
    std::stringstream ss(range);
    for (std::string x; std::getline(ss, x, ':');) parts.push_back(x);
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError(kModule, "--range must be start:stop:points[:linear|log]");
    try {
        s.start = std::stod(parts[0]);
        s.stop = std::stod(parts[1]);
        s.points = std::stoi(parts[2]);
    }
    catch (const std::exception&) {
        throw ConfigError(kModule, "--range must be start:stop:points[:linear|log]");
    }
    if (parts.size() == 4) s.spacing = parts[3];
}

struct SweepOutput {
    std::vector<std::string> files;
    std::vector<SweepCurveResult> curves;
};

SweepOutput write_sweep(const RunConfig& rc, std::ostream& out)
{
    const SweepSpec spec = rc.sweep->resolve(rc.species.resolve());
    SweepOutput o;
    o.curves = run_sweep(spec);
    const std::string echo = config_json(rc);
    for (const auto& c : o.curves) {
        std::ostringstream csv;
        write_sweep_csv(csv, spec, c, echo);
        o.files.push_back(write_file(out_dir(rc), spec.name + "_" + c.curve.id + ".csv", csv.str()));
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.rows.size(); ++i)
            if (c.rows[i].budget.P_total < c.rows[best].budget.P_total) best = i;
        out << spec.name << " " << c.curve.id << ": " << c.rows.size() << " rows, min P_total "
            << num(c.rows[best].budget.P_total) << " at " << to_string(spec.axis) << " = "
            << num(c.rows[best].axis_value) << (interior_minimum(c.rows) >= 0 ? " (interior)" : " (edge)") << " -> "
            << o.files.back() << "\n";
    }
    return o;
}

int cmd_sweep(RunConfig rc, const std::string& axis, const std::string& range, std::ostream& out)
{
    if (!rc.sweep) throw ConfigError(kModule, "sweep needs a sweep block (or --preset fig3/fig4)");
    apply_range(*rc.sweep, axis, range);
    write_sweep(rc, out);
    return kExitOk;
}

int cmd_figures_data(const Common& c, std::ostream& out)
{
    std::vector<std::string> names = {"fig3", "fig4"};
    if (!c.preset.empty()) {
        if (c.preset != "fig3" && c.preset != "fig4")
            throw ConfigError(kModule, "figures-data accepts --preset fig3 or fig4");
        names = {c.preset};
    }
    json manifest;
    manifest["schema"] = kSweepSchema;
    manifest["files"] = json::array();
    std::string dir;
    for (const auto& name : names) {
        Common one = c;
        one.preset = name;
        const RunConfig rc = load(one);
        dir = out_dir(rc);
        const SweepOutput o = write_sweep(rc, out);
        for (std::size_t i = 0; i < o.files.size(); ++i)
            manifest["files"].push_back({{"preset", name},
                                         {"curve", o.curves[i].curve.id},
                                         {"label", o.curves[i].curve.label},
                                         {"path", fs::path(o.files[i]).filename().string()}});
    }
    out << "wrote " << write_file(dir, "manifest.json", manifest.dump(2) + "\n") << "\n";
    return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, const std::vector<std::string>& tol_flags,
               std::ostream& out, std::ostream& err)
{
    VerifyOptions opt;
    std::string dir;
    if (!c.config.empty() || !c.preset.empty()) {
        const RunConfig rc = load(c);
        opt.tolerances = rc.tolerances;
        dir = rc.output.dir;
    }
    if (!c.out.empty()) dir = c.out;
    if (c.seed) opt.seed = *c.seed;
    if (c.samples) {
        if (*c.samples < 2) throw ConfigError(kModule, "--samples must be >= 2 for verify");
        opt.samples = *c.samples;
    }
    for (const auto& t : tol_flags) {
        const auto eq = t.find('=');
        double v = 0;
        try {
            if (eq == std::string::npos) throw std::invalid_argument(t);
            v = std::stod(t.substr(eq + 1));
        }
        catch (const std::exception&) {
            throw ConfigError(kModule, "--tolerance must look like c1=0.01");
        }
        if (!(v > 0)) throw ConfigError(kModule, "--tolerance values must be > 0");
        opt.tolerances[t.substr(0, eq)] = v;
    }
    const VerifySuite s = verify_suite_from_string(suite);
    double total = 0;
    const auto results = run_suite(s, opt, [&](const CriterionResult& r) {
        out << format_result(r) << "\n";
        out.flush();
        total += r.runtime;
    });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << "verify " << suite << ": " << results.size() - failed << "/" << results.size() << " passed (seed "
        << opt.seed << ")\n";
    err << "verify runtime " << num(total, "%.1f") << " s\n";
    if (!dir.empty()) out << "wrote " << write_file(dir, "verify_report.json", results_json(results, opt) + "\n") << "\n";
    return failed ? kExitFailure : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"pushgate: semiclassical simulator for state-selective pushing gates"};
    app.require_subcommand(1);
    Common c;
    std::string axis, range, suite = "fast";
    std::vector<std::string> tol_flags;

    CLI::App* design = app.add_subcommand("design", "gate time or force for a target phase");
    CLI::App* simulate = app.add_subcommand("simulate", "phase tables, gate report, optional ensemble");
    CLI::App* sweep = app.add_subcommand("sweep", "infidelity budget on a parameter grid (CSV)");
    CLI::App* verify = app.add_subcommand("verify", "acceptance checks (fast or full)");
    CLI::App* figures = app.add_subcommand("figures-data", "CSV data for the infidelity figures");
    for (CLI::App* s : {design, simulate, sweep, verify, figures}) add_common(s, c);
    sweep->add_option("--axis", axis, "omega, T, w, P, epsilon, xi");
    sweep->add_option("--range", range, "start:stop:points[:linear|log] in SI units");
    verify->add_option("suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--tolerance", tol_flags, "criterion tolerance override, e.g. c1=0.02");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*design) return cmd_design(load(c), c.strict, out, err);
        if (*simulate) return cmd_simulate(load(c), c.strict, out);
        if (*sweep) return cmd_sweep(load(c), axis, range, out);
        if (*figures) return cmd_figures_data(c, out);
        if (*verify) return cmd_verify(c, suite, tol_flags, out, err);
    }
    catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace pushgate
