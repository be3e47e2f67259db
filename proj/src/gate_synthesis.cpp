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

#include "pushgate/gate_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <bit>
#include <sstream>

#include <json.hpp>

#include "pushgate/errors.hpp"

namespace pushgate {

namespace {

constexpr double kPi = std::numbers::pi;
const char* kModule = "gate_synthesis";

int bit(int k, int q, int n) { return (k >> (n - q)) & 1; }

void require_qubits(const PhaseTable& t, int n, const char* what)
{
    t.validate();
    if (t.n_qubits != n)
        throw InputError(kModule, std::string(what) + " needs a " + std::to_string(n) +
                                      "-qubit table, got " + std::to_string(t.n_qubits));
}

void check_qubit(int n, int q)
{
    if (q < 1 || q > n)
        throw InputError(kModule, "qubit " + std::to_string(q) + " out of range 1.." + std::to_string(n));
}

Eigen::MatrixXcd hadamard_matrix(int n, int q)
{
    const int dim = 1 << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const double s = 1.0 / std::numbers::sqrt2;
    const int mask = 1 << (n - q);
    for (int k = 0; k < dim; ++k) {
        const int b = (k & mask) ? 1 : 0;
        h(k & ~mask, k) += s;
        h(k | mask, k) += b ? -s : s;
    }
    return h;
}

}  // namespace

double LocalRotationSet::phase(int k) const
{
    const int n = n_qubits();
    double s = 0.0;
    for (int q = 1; q <= n; ++q) s += angles[q - 1][bit(k, q, n)];
    return s;
}

DiagonalGate DiagonalGate::identity(int n_qubits)
{
    DiagonalGate g;
    g.n_qubits = n_qubits;
    g.phases.assign(std::size_t{1} << n_qubits, 0.0);
    return g;
}

void DiagonalGate::validate() const
{
    if (n_qubits < 1 || n_qubits > 4)
        throw InputError(kModule, "gate must act on 1 to 4 qubits");
    if (size() != (1 << n_qubits))
        throw InputError(kModule, "gate length is not 2^n");
    for (double p : phases)
        if (!std::isfinite(p)) throw InputError(kModule, "non-finite gate phase");
}

DiagonalGate compose(const DiagonalGate& first, const DiagonalGate& second)
{
    first.validate();
    second.validate();
    if (first.n_qubits != second.n_qubits) throw InputError(kModule, "gate size mismatch");
    DiagonalGate g = first;
    for (int k = 0; k < g.size(); ++k) g.phases[k] += second.phases[k];
    return g;
}

DiagonalGate gate_from_table(const PhaseTable& table)
{
    table.validate();
    DiagonalGate g;
    g.n_qubits = table.n_qubits;
    g.phases = table.phases;
    return g;
}

DiagonalGate gate_from_rotations(const LocalRotationSet& rotations)
{
    DiagonalGate g = DiagonalGate::identity(rotations.n_qubits());
    for (int k = 0; k < g.size(); ++k) g.phases[k] = rotations.phase(k);
    return g;
}

DiagonalGate controlled_phase(int n_qubits, int qi, int qj, double phi)
{
    check_qubit(n_qubits, qi);
    check_qubit(n_qubits, qj);
    if (qi == qj) throw InputError(kModule, "controlled phase needs two distinct qubits");
    DiagonalGate g = DiagonalGate::identity(n_qubits);
    for (int k = 0; k < g.size(); ++k)
        if (bit(k, qi, n_qubits) && bit(k, qj, n_qubits)) g.phases[k] = phi;
    return g;
}

DiagonalGate pauli_z(int n_qubits, int q)
{
    check_qubit(n_qubits, q);
    DiagonalGate g = DiagonalGate::identity(n_qubits);
    for (int k = 0; k < g.size(); ++k)
        if (bit(k, q, n_qubits)) g.phases[k] = kPi;
    return g;
}

DiagonalGate ccz_gate()
{
    DiagonalGate g = DiagonalGate::identity(3);
    g.phases[7] = kPi;
    return g;
}

double wrap_phase(double x)
{
    double y = std::remainder(x, 2 * kPi);
    if (y <= -kPi) y += 2 * kPi;
    return y;
}

double gate_distance(const DiagonalGate& a, const DiagonalGate& b)
{
    a.validate();
    b.validate();
    if (a.n_qubits != b.n_qubits) throw InputError(kModule, "gate size mismatch");
    // Half of the shortest arc covering all phase differences.
    std::vector<double> d(a.size());
    for (int k = 0; k < a.size(); ++k) d[k] = wrap_phase(a.phases[k] - b.phases[k]) + kPi;
    std::sort(d.begin(), d.end());
    double gap = d.front() + 2 * kPi - d.back();
    for (std::size_t k = 1; k < d.size(); ++k) gap = std::max(gap, d[k] - d[k - 1]);
    return std::max(0.0, (2 * kPi - gap) / 2);
}

double local_gate_distance(const DiagonalGate& a, const DiagonalGate& b)
{
    a.validate();
    b.validate();
    if (a.n_qubits != b.n_qubits) throw InputError(kModule, "gate size mismatch");
    const int n = a.n_qubits;
    std::vector<double> d(a.size());
    for (int k = 0; k < a.size(); ++k) d[k] = a.phases[k] - b.phases[k];
    double worst = 0.0;
    for (int k = 0; k < a.size(); ++k) {
        double r = d[k] - d[0];
        for (int q = 1; q <= n; ++q)
            if (bit(k, q, n)) r -= d[1 << (n - q)] - d[0];
        worst = std::max(worst, std::abs(wrap_phase(r)));
    }
    return worst;
}

PhaseTable echo_symmetrize(const PhaseTable& table)
{
    table.validate();
    const int mask = table.size() - 1;
    std::vector<double> p(table.size());
    for (int k = 0; k < table.size(); ++k) p[k] = table.phases[k] + table.phases[mask ^ k];
    PhaseTable t = make_table(p);
    t.xi = table.xi;
    t.a_over_d = table.a_over_d;
    t.epsilon = table.epsilon;
    t.omega_tau = table.omega_tau;
    t.metadata = table.metadata;
    t.metadata["echo"] = "symmetrized";
    return t;
}

namespace {

RotationSolution finish(LocalRotationSet rot, double vartheta, const PhaseTable& t)
{
    RotationSolution s;
    s.rotations = std::move(rot);
    s.vartheta = vartheta;
    s.gate = DiagonalGate::identity(t.n_qubits);
    s.residuals.resize(t.size());
    const int last = t.size() - 1;
    for (int k = 0; k < t.size(); ++k) {
        s.gate.phases[k] = s.rotations.phase(k) + t.phases[k];
        s.residuals[k] = s.gate.phases[k] - (k == last ? vartheta : 0.0);
    }
    return s;
}

}  // namespace

RotationSolution solve_rotations_2q(const PhaseTable& table)
{
    require_qubits(table, 2, "solve_rotations_2q");
    const auto& p = table.phases;
    LocalRotationSet r;
    r.gauge_choice = "A0 = -Theta00/2";
    const double a0 = -p[0] / 2;
    r.angles = {{a0, -p[2] + p[0] / 2}, {a0, -p[1] + p[0] / 2}};
    return finish(std::move(r), overall_phase_2q(table), table);
}

RotationSolution solve_rotations_3q(const PhaseTable& table, const Solve3qOptions& opt)
{
    require_qubits(table, 3, "solve_rotations_3q");
    if (!(opt.tol_compat >= 0)) throw InputError(kModule, "tol_compat must be non-negative");
    const PhaseTable t = opt.with_pi_pulses ? echo_symmetrize(table) : table;
    const auto& p = t.phases;
    const std::array<double, 3> compat = {p[0] + p[6] - p[4] - p[2], p[0] + p[5] - p[4] - p[1],
                                          p[0] + p[3] - p[2] - p[1]};
    if (!opt.allow_pairwise) {
        double worst = 0.0;
        for (double c : compat) worst = std::max(worst, std::abs(wrap_phase(c)));
        if (worst > opt.tol_compat) {
            std::ostringstream os;
            os.precision(6);
            os << "compatibility conditions violated: residuals " << compat[0] << ", " << compat[1]
               << ", " << compat[2] << " rad (tolerance " << opt.tol_compat << ")";
            throw SynthesisError(kModule, os.str());
        }
    }
    LocalRotationSet r;
    r.gauge_choice = opt.with_pi_pulses ? "A0' = B0' = -(Theta000 + Theta111)/3"
                                        : "A0 = B0 = -Theta000/3";
    const double x0 = -p[0] / 3;
    r.angles = {{x0, -p[4] + 2 * p[0] / 3}, {x0, -p[2] + 2 * p[0] / 3}, {x0, -p[1] + 2 * p[0] / 3}};
    const double vt = p[7] - p[4] - p[2] - p[1] + 2 * p[0];
    RotationSolution s = finish(std::move(r), vt, t);
    s.compatibility = compat;
    return s;
}

double rotation_system_residual(const LocalRotationSet& rotations, const PhaseTable& table,
                                double vartheta)
{
    table.validate();
    if (rotations.n_qubits() != table.n_qubits) throw InputError(kModule, "rotation size mismatch");
    const int last = table.size() - 1;
    double worst = 0.0;
    for (int k = 0; k < table.size(); ++k) {
        // Independent equations: weight <= 1 and the all-ones phase.
        if (k != last && std::popcount(static_cast<unsigned>(k)) > 1) continue;
        const double target = k == last ? vartheta : 0.0;
        worst = std::max(worst, std::abs(rotations.phase(k) + table.phases[k] - target));
    }
    return worst;
}

LocalRotationSet echo_rotations_2q(double vartheta)
{
    LocalRotationSet r;
    r.gauge_choice = "S'_i = diag(e^{-i vartheta/2}, e^{i vartheta/2})";
    r.angles = {{-vartheta / 2, vartheta / 2}, {-vartheta / 2, vartheta / 2}};
    return r;
}

SequenceElement SequenceElement::push(PushVariant v)
{
    SequenceElement e;
    e.kind = Kind::push;
    e.variant = v;
    e.label = v == PushVariant::normal ? "G" : v == PushVariant::sign_flipped ? "G(-F)" : "G(-Delta)";
    return e;
}

SequenceElement SequenceElement::pi_all()
{
    SequenceElement e;
    e.kind = Kind::pi_pulse_all;
    e.label = "R";
    return e;
}

SequenceElement SequenceElement::local(LocalRotationSet r)
{
    SequenceElement e;
    e.kind = Kind::local_rotations;
    e.rotations = std::move(r);
    e.label = "S";
    return e;
}

SequenceElement SequenceElement::diagonal(DiagonalGate g, std::string label)
{
    SequenceElement e;
    e.kind = Kind::diagonal;
    e.gate = std::move(g);
    e.label = label.empty() ? "D" : std::move(label);
    return e;
}

SequenceElement SequenceElement::hadamard(int qubit)
{
    SequenceElement e;
    e.kind = Kind::hadamard;
    e.qubit = qubit;
    e.label = "H" + std::to_string(qubit);
    return e;
}

int PulseSequence::push_count() const
{
    return static_cast<int>(std::count_if(elements.begin(), elements.end(), [](const SequenceElement& e) {
        return e.kind == SequenceElement::Kind::push;
    }));
}

void PulseSequence::validate() const
{
    if (n_qubits < 1 || n_qubits > 4) throw InputError(kModule, "sequence must act on 1 to 4 qubits");
    if (elements.empty()) throw InputError(kModule, "empty pulse sequence");
    for (const auto& e : elements) {
        switch (e.kind) {
        case SequenceElement::Kind::local_rotations:
            if (e.rotations.n_qubits() != n_qubits) throw InputError(kModule, "rotation size mismatch");
            break;
        case SequenceElement::Kind::diagonal:
            e.gate.validate();
            if (e.gate.n_qubits != n_qubits) throw InputError(kModule, "gate size mismatch");
            break;
        case SequenceElement::Kind::hadamard: check_qubit(n_qubits, e.qubit); break;
        default: break;
        }
    }
}

PulseSequence spin_echo_sequence(int n_qubits)
{
    PulseSequence s;
    s.n_qubits = n_qubits;
    s.elements = {SequenceElement::push(), SequenceElement::pi_all(), SequenceElement::push(),
                  SequenceElement::pi_all()};
    return s;
}

PulseSequence swap_pair_sequence(int n_qubits, PushVariant second)
{
    PulseSequence s;
    s.n_qubits = n_qubits;
    s.elements = {SequenceElement::push(), SequenceElement::push(second)};
    return s;
}

SequenceResult compose_sequence(const PulseSequence& seq, const std::vector<PhaseTable>& tables)
{
    seq.validate();
    if (static_cast<int>(tables.size()) != seq.push_count())
        throw InputError(kModule, "sequence has " + std::to_string(seq.push_count()) + " pushes but " +
                                      std::to_string(tables.size()) + " tables were given");
    for (const auto& t : tables) require_qubits(t, seq.n_qubits, "compose_sequence");
    double xi_ref = 0.0;
    {
        int i = 0;
        for (const auto& e : seq.elements) {
            if (e.kind != SequenceElement::Kind::push) continue;
            const double xi = tables[i++].xi;
            if (e.variant == PushVariant::normal && xi_ref == 0.0) xi_ref = xi;
        }
        i = 0;
        for (const auto& e : seq.elements) {
            if (e.kind != SequenceElement::Kind::push) continue;
            const double xi = tables[i++].xi;
            if (e.variant != PushVariant::normal && xi * xi_ref > 0)
                throw InputError(kModule, "flipped push paired with a table of the same force sign");
        }
    }

    const int dim = 1 << seq.n_qubits;
    const int mask = dim - 1;
    std::vector<int> cur(dim);
    std::vector<double> acc(dim, 0.0);
    for (int k = 0; k < dim; ++k) cur[k] = k;
    bool matrix = false;
    Eigen::MatrixXcd u;

    auto diag_apply = [&](auto&& phase_of) {
        if (!matrix) {
            for (int k = 0; k < dim; ++k) acc[k] += phase_of(cur[k]);
        } else {
            for (int r = 0; r < dim; ++r) u.row(r) *= std::polar(1.0, phase_of(r));
        }
    };

    int push_index = 0;
    for (const auto& e : seq.elements) {
        switch (e.kind) {
        case SequenceElement::Kind::push: {
            const auto& p = tables[push_index++].phases;
            diag_apply([&](int k) { return p[k]; });
            break;
        }
        case SequenceElement::Kind::pi_pulse_all:
            if (!matrix) {
                for (int k = 0; k < dim; ++k) cur[k] ^= mask;
            } else {
                u = u.colwise().reverse().eval();
            }
            break;
        case SequenceElement::Kind::local_rotations:
            diag_apply([&](int k) { return e.rotations.phase(k); });
            break;
        case SequenceElement::Kind::diagonal:
            diag_apply([&](int k) { return e.gate.phases[k]; });
            break;
        case SequenceElement::Kind::hadamard:
            if (!matrix) {
                u = Eigen::MatrixXcd::Zero(dim, dim);
                for (int k = 0; k < dim; ++k) u(cur[k], k) = std::polar(1.0, acc[k]);
                matrix = true;
            }
            u = hadamard_matrix(seq.n_qubits, e.qubit) * u;
            break;
        }
    }

    SequenceResult res;
    res.gate = DiagonalGate::identity(seq.n_qubits);
    if (!matrix) {
        res.unitary = Eigen::MatrixXcd::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) {
            res.unitary(cur[k], k) = std::polar(1.0, acc[k]);
            if (cur[k] != k) res.diagonal = false;
        }
        res.off_diagonal = res.diagonal ? 0.0 : 1.0;
        if (res.diagonal) res.gate.phases = acc;
    } else {
        res.unitary = u;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (r != c) res.off_diagonal = std::max(res.off_diagonal, std::abs(u(r, c)));
        res.diagonal = res.off_diagonal < 1e-12;
        if (res.diagonal)
            for (int k = 0; k < dim; ++k) res.gate.phases[k] = std::arg(u(k, k));
    }
    return res;
}

LocalRotationSet calibrate_rotations(const PulseSequence& seq, const std::vector<PhaseTable>& tables)
{
    const SequenceResult r = compose_sequence(seq, tables);
    if (!r.diagonal) throw SynthesisError(kModule, "net evolution is not diagonal");
    const PhaseTable net = make_table(r.gate.phases);
    if (seq.n_qubits == 2) return solve_rotations_2q(net).rotations;
    if (seq.n_qubits == 3) {
        Solve3qOptions o;
        o.allow_pairwise = true;
        return solve_rotations_3q(net, o).rotations;
    }
    throw InputError(kModule, "rotation calibration supports 2 or 3 qubits");
}

DiagonalGate toffoli_stage(double theta, bool pi_variant)
{
    if (!std::isfinite(theta)) throw InputError(kModule, "theta must be finite");
    // The echoed variant pushes twice for half as long.
    const auto half = analytic_phi3_table(pi_variant ? theta / 2 : theta);
    const PhaseTable t = make_table({half.begin(), half.end()});
    PulseSequence seq;
    std::vector<PhaseTable> tables;
    if (pi_variant) {
        seq = spin_echo_sequence(3);
        tables = {t, t};
    } else {
        seq.n_qubits = 3;
        seq.elements = {SequenceElement::push()};
        tables = {t};
    }
    seq.elements.push_back(SequenceElement::local(calibrate_rotations(seq, tables)));
    return compose_sequence(seq, tables).gate;
}

PulseSequence ccz_network_sequence(double theta, bool pi_variant)
{
    PulseSequence s;
    s.n_qubits = 3;
    const DiagonalGate cz12 = controlled_phase(3, 1, 2, kPi);
    s.elements = {SequenceElement::diagonal(toffoli_stage(theta, pi_variant), pi_variant ? "S'(RG)^2" : "SG"),
                  SequenceElement::hadamard(2),
                  SequenceElement::diagonal(cz12, "CZ12"),
                  SequenceElement::hadamard(2),
                  SequenceElement::diagonal(controlled_phase(3, 2, 3, 3 * theta / 8), "CP23(3theta/8)"),
                  SequenceElement::hadamard(2),
                  SequenceElement::diagonal(cz12, "CZ12"),
                  SequenceElement::hadamard(2),
                  SequenceElement::diagonal(controlled_phase(3, 2, 3, 5 * theta / 8), "CP23(5theta/8)")};
    return s;
}

DiagonalGate ccz_network(double theta, bool pi_variant)
{
    const SequenceResult r = compose_sequence(ccz_network_sequence(theta, pi_variant), {});
    if (!r.diagonal)
        throw NumericalError(kModule, "network output is not diagonal (off-diagonal " +
                                          std::to_string(r.off_diagonal) + ")");
    return r.gate;
}

StateVector StateVector::basis(int n_qubits, int k)
{
    if (n_qubits < 1 || n_qubits > 4) throw InputError(kModule, "state must have 1 to 4 qubits");
    if (k < 0 || k >= (1 << n_qubits)) throw InputError(kModule, "basis index out of range");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, 0.0);
    s.amplitudes[k] = 1.0;
    return s;
}

double StateVector::norm() const
{
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::validate() const
{
    if (n_qubits < 1 || n_qubits > 4) throw InputError(kModule, "state must have 1 to 4 qubits");
    if (static_cast<int>(amplitudes.size()) != (1 << n_qubits))
        throw InputError(kModule, "state length is not 2^n");
    if (std::abs(norm() - 1.0) > 1e-12) throw InputError(kModule, "state is not normalised");
}

namespace {

StateVector checked(StateVector s)
{
    if (std::abs(s.norm() - 1.0) > 1e-12) throw NumericalError(kModule, "norm not preserved");
    return s;
}

}  // namespace

StateVector apply_gate(const StateVector& state, const DiagonalGate& gate)
{
    state.validate();
    gate.validate();
    if (gate.n_qubits != state.n_qubits) throw InputError(kModule, "gate and state dimensions differ");
    StateVector s = state;
    for (int k = 0; k < gate.size(); ++k) s.amplitudes[k] *= gate.entry(k);
    return checked(std::move(s));
}

StateVector apply_gate(const StateVector& state, const Eigen::MatrixXcd& unitary)
{
    state.validate();
    const int dim = static_cast<int>(state.amplitudes.size());
    if (unitary.rows() != dim || unitary.cols() != dim)
        throw InputError(kModule, "gate and state dimensions differ");
    const Eigen::VectorXcd v = unitary * Eigen::Map<const Eigen::VectorXcd>(state.amplitudes.data(), dim);
    StateVector s = state;
    for (int k = 0; k < dim; ++k) s.amplitudes[k] = v[k];
    return checked(std::move(s));
}

StateVector apply_hadamard(const StateVector& state, int qubit)
{
    state.validate();
    check_qubit(state.n_qubits, qubit);
    return apply_gate(state, hadamard_matrix(state.n_qubits, qubit));
}

StateVector apply_pi_all(const StateVector& state)
{
    state.validate();
    StateVector s = state;
    std::reverse(s.amplitudes.begin(), s.amplitudes.end());
    return s;
}

std::string to_string(DfsGeometry g) { return g == DfsGeometry::linear_a ? "linear_a" : "symmetric_b"; }

DfsReport dfs_gate_check(DfsGeometry geometry, const PhaseTable& table)
{
    DfsReport r;
    r.geometry = geometry;
    const auto& p = table.phases;
    if (geometry == DfsGeometry::linear_a) {
        require_qubits(table, 4, "dfs_gate_check(linear_a)");
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                // Ions (1,2) encode a, ions (3,4) encode b.
                const int k = (a << 3) | ((1 - a) << 2) | (b << 1) | (1 - b);
                r.logical_phases[2 * a + b] = p[k];
            }
    } else {
        require_qubits(table, 2, "dfs_gate_check(symmetric_b)");
        r.logical_phases = {p[0] + p[3], p[1] + p[2], p[2] + p[1], p[3] + p[0]};
    }
    const auto& l = r.logical_phases;
    r.logical_vartheta = l[3] - l[2] - l[1] + l[0];
    r.physical_vartheta = geometry == DfsGeometry::linear_a ? -r.logical_vartheta : overall_phase_2q(table);
    r.logical_gate = DiagonalGate::identity(2);
    r.logical_gate.phases.assign(l.begin(), l.end());

    const DiagonalGate cz = controlled_phase(2, 1, 2, kPi);
    if (geometry == DfsGeometry::linear_a) {
        // Local logical rotations leave only the 01 entry.
        DiagonalGate d1 = DiagonalGate::identity(2);
        d1.phases[1] = r.physical_vartheta;
        DiagonalGate target = DiagonalGate::identity(2);
        target.phases[1] = kPi;
        r.dfs1_distance = gate_distance(d1, target);
        r.corrected_gate = compose(d1, pauli_z(2, 2));
    } else {
        r.corrected_gate = DiagonalGate::identity(2);
        r.corrected_gate.phases[3] = r.logical_vartheta;
    }
    r.cz_distance = gate_distance(r.corrected_gate, cz);
    r.leakage = 0.0;
    return r;
}

double dfs_leakage(const Eigen::MatrixXcd& unitary, double tol)
{
    if (unitary.rows() != 16 || unitary.cols() != 16)
        throw InputError(kModule, "DFS leakage needs a four-qubit operator");
    auto in_dfs = [](int k) { return bit(k, 1, 4) != bit(k, 2, 4) && bit(k, 3, 4) != bit(k, 4, 4); };
    double worst = 0.0;
    for (int c = 0; c < 16; ++c) {
        if (!in_dfs(c)) continue;
        double out = 0.0;
        for (int r = 0; r < 16; ++r)
            if (!in_dfs(r)) out += std::norm(unitary(r, c));
        worst = std::max(worst, std::sqrt(out));
    }
    if (worst > tol)
        throw EncodingError(kModule, "operator leaks out of the decoherence-free subspace (norm " +
                                         std::to_string(worst) + ")");
    return worst;
}

TimingReport timing_report(TimingMode mode, bool pi_variant)
{
    TimingReport r;
    r.mode = mode;
    r.pi_variant = pi_variant;
    const bool ff = mode == TimingMode::fixed_force;
    const double g = ff ? 4.0 : 1.0;
    if (pi_variant) {
        r.stages.emplace_back("G (first half)", g / 2);
        r.stages.emplace_back("G (second half)", g / 2);
    } else {
        r.stages.emplace_back("G", g);
    }
    r.stages.emplace_back("CNOT12", 1.0);
    r.stages.emplace_back("CP23(3theta/8)", ff ? 1.5 : 1.0);
    r.stages.emplace_back("CNOT12", 1.0);
    r.stages.emplace_back("CP23(5theta/8)", ff ? 0.5 : 1.0);
    for (const auto& s : r.stages) r.total_tau += s.second;
    return r;
}

std::string gate_json(const DiagonalGate& gate)
{
    gate.validate();
    nlohmann::ordered_json j;
    j["n_qubits"] = gate.n_qubits;
    nlohmann::ordered_json ph = nlohmann::ordered_json::object();
    for (int k = 0; k < gate.size(); ++k) ph[branch_label(k, gate.n_qubits)] = gate.phases[k];
    j["phases"] = ph;
    nlohmann::ordered_json wr = nlohmann::ordered_json::object();
    for (int k = 0; k < gate.size(); ++k)
        wr[branch_label(k, gate.n_qubits)] = wrap_phase(gate.phases[k] - gate.phases[0]);
    j["phases_relative_wrapped"] = wr;
    return j.dump(2);
}

std::string rotation_json(const RotationSolution& sol)
{
    nlohmann::ordered_json j;
    const char* names = "ABCD";
    for (int q = 0; q < sol.rotations.n_qubits(); ++q) {
        j[std::string(1, names[q]) + "0"] = sol.rotations.angles[q][0];
        j[std::string(1, names[q]) + "1"] = sol.rotations.angles[q][1];
    }
    j["gauge"] = sol.rotations.gauge_choice;
    j["vartheta"] = sol.vartheta;
    if (sol.rotations.n_qubits() == 3) j["compatibility_residuals"] = sol.compatibility;
    j["gate"] = nlohmann::ordered_json::parse(gate_json(sol.gate));
    return j.dump(2);
}

std::string dfs_report_json(const DfsReport& r)
{
    nlohmann::ordered_json j;
    j["geometry"] = to_string(r.geometry);
    j["logical_phases"] = r.logical_phases;
    j["logical_vartheta"] = r.logical_vartheta;
    j["physical_vartheta"] = r.physical_vartheta;
    if (r.geometry == DfsGeometry::linear_a) j["dfs1_distance"] = r.dfs1_distance;
    j["cz_distance"] = r.cz_distance;
    j["leakage"] = r.leakage;
    return j.dump(2);
}

std::string timing_json(const TimingReport& r)
{
    nlohmann::ordered_json j;
    j["mode"] = r.mode == TimingMode::fixed_force ? "fixed_force" : "fixed_duration";
    j["pi_variant"] = r.pi_variant;
    nlohmann::ordered_json st = nlohmann::ordered_json::array();
    for (const auto& s : r.stages) st.push_back({{"stage", s.first}, {"duration_tau", s.second}});
    j["stages"] = st;
    j["total_tau"] = r.total_tau;
    return j.dump(2);
}

std::string sequence_table(const PulseSequence& seq)
{
    std::ostringstream os;
    os << "# step  element\n";
    int i = 0;
    for (const auto& e : seq.elements) os << ++i << "  " << e.label << "\n";
    return os.str();
}

}  // namespace pushgate
