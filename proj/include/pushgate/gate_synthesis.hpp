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

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pushgate/phases.hpp"

namespace pushgate {

// Diagonal phases e^{i X_b} on qubit q in state b; angles[q] = {X0, X1}.
struct LocalRotationSet {
    std::vector<std::array<double, 2>> angles;
    std::string gauge_choice;

    int n_qubits() const { return static_cast<int>(angles.size()); }
    // Sum of the per-qubit angles for basis index k (qubit 1 = MSB).
    double phase(int k) const;
};

struct DiagonalGate {
    int n_qubits = 0;
    std::vector<double> phases;  // rad, not reduced

    static DiagonalGate identity(int n_qubits);
    int size() const { return static_cast<int>(phases.size()); }
    std::complex<double> entry(int k) const { return std::polar(1.0, phases[k]); }
    void validate() const;
};

// Product of two diagonal gates.
DiagonalGate compose(const DiagonalGate& first, const DiagonalGate& second);
DiagonalGate gate_from_table(const PhaseTable& table);
DiagonalGate gate_from_rotations(const LocalRotationSet& rotations);
// Qubits are numbered from 1.
DiagonalGate controlled_phase(int n_qubits, int qi, int qj, double phi);
DiagonalGate pauli_z(int n_qubits, int q);
DiagonalGate ccz_gate();

// Wraps into (-pi, pi].
double wrap_phase(double x);
// Largest entry-wise phase difference after the best global-phase alignment.
double gate_distance(const DiagonalGate& a, const DiagonalGate& b);
// As gate_distance, after also removing any local (single-qubit) diagonal part.
double local_gate_distance(const DiagonalGate& a, const DiagonalGate& b);

// Theta_k + Theta_{~k}: the phases left by (R G)^2 with the same G twice.
PhaseTable echo_symmetrize(const PhaseTable& table);

struct RotationSolution {
    LocalRotationSet rotations;
    double vartheta = 0.0;
    // Rotations plus phases, minus the target phase gate, per branch. Entries
    // for weight-two branches of a three-qubit table are the compatibility
    // residuals.
    std::vector<double> residuals;
    std::array<double, 3> compatibility{};  // three-qubit only, raw
    DiagonalGate gate;                      // rotations applied after the evolution
};

RotationSolution solve_rotations_2q(const PhaseTable& table);

struct Solve3qOptions {
    bool with_pi_pulses = false;
    double tol_compat = 1e-2;  // rad, compared after wrapping
    // Accept tables that carry pairwise controlled phases; the returned gate
    // then contains them.
    bool allow_pairwise = false;
};

RotationSolution solve_rotations_3q(const PhaseTable& table, const Solve3qOptions& opt = {});

// Largest violation of the independent equations of the defining system.
double rotation_system_residual(const LocalRotationSet& rotations, const PhaseTable& table,
                                double vartheta);

// Rotations S' completing the two-qubit spin echo.
LocalRotationSet echo_rotations_2q(double vartheta);

enum class PushVariant { normal, sign_flipped, detuning_flipped };

struct SequenceElement {
    enum class Kind { push, pi_pulse_all, local_rotations, diagonal, hadamard };
    Kind kind = Kind::push;
    PushVariant variant = PushVariant::normal;
    LocalRotationSet rotations;
    DiagonalGate gate;
    int qubit = 0;
    std::string label;

    static SequenceElement push(PushVariant v = PushVariant::normal);
    static SequenceElement pi_all();
    static SequenceElement local(LocalRotationSet r);
    static SequenceElement diagonal(DiagonalGate g, std::string label = {});
    static SequenceElement hadamard(int qubit);
};

// Elements in time order.
struct PulseSequence {
    int n_qubits = 0;
    std::vector<SequenceElement> elements;

    int push_count() const;
    void validate() const;
};

PulseSequence spin_echo_sequence(int n_qubits);
PulseSequence swap_pair_sequence(int n_qubits, PushVariant second);

struct SequenceResult {
    bool diagonal = true;
    DiagonalGate gate;          // valid when diagonal
    Eigen::MatrixXcd unitary;   // always filled
    double off_diagonal = 0.0;  // largest off-diagonal modulus
};

// Phases add exactly while only pushes, pi pulses and diagonal elements occur;
// a Hadamard switches to matrix products.
SequenceResult compose_sequence(const PulseSequence& seq, const std::vector<PhaseTable>& tables);

// Rotations that turn the net evolution of `seq` into a controlled phase.
LocalRotationSet calibrate_rotations(const PulseSequence& seq, const std::vector<PhaseTable>& tables);

// Simultaneous push followed by local rotations; tables from the three-ion law.
DiagonalGate toffoli_stage(double theta, bool pi_variant = false);
DiagonalGate ccz_network(double theta, bool pi_variant = false);
PulseSequence ccz_network_sequence(double theta, bool pi_variant = false);

struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amplitudes;

    static StateVector basis(int n_qubits, int k);
    double norm() const;
    void validate() const;
};

StateVector apply_gate(const StateVector& state, const DiagonalGate& gate);
StateVector apply_gate(const StateVector& state, const Eigen::MatrixXcd& unitary);
StateVector apply_hadamard(const StateVector& state, int qubit);
StateVector apply_pi_all(const StateVector& state);

enum class DfsGeometry { linear_a, symmetric_b };

std::string to_string(DfsGeometry g);

struct DfsReport {
    DfsGeometry geometry = DfsGeometry::linear_a;
    // Logical basis 00, 01, 10, 11; |0>_L = |01>, |1>_L = |10>.
    std::array<double, 4> logical_phases{};
    double logical_vartheta = 0.0;
    double physical_vartheta = 0.0;  // pushed pair
    DiagonalGate logical_gate;
    DiagonalGate corrected_gate;  // after local logical rotations (and sigma_Z for linear_a)
    double dfs1_distance = 0.0;   // linear_a only
    double cz_distance = 0.0;
    double leakage = 0.0;
};

DfsReport dfs_gate_check(DfsGeometry geometry, const PhaseTable& table);
// Norm of the part of U that leaves the two-pair DFS; throws EncodingError above tol.
double dfs_leakage(const Eigen::MatrixXcd& unitary, double tol = 1e-12);

enum class TimingMode { fixed_force, fixed_duration };

struct TimingReport {
    TimingMode mode = TimingMode::fixed_force;
    bool pi_variant = false;
    std::vector<std::pair<std::string, double>> stages;  // duration / tau
    double total_tau = 0.0;
};

TimingReport timing_report(TimingMode mode, bool pi_variant = false);

std::string gate_json(const DiagonalGate& gate);
std::string rotation_json(const RotationSolution& sol);
std::string dfs_report_json(const DfsReport& r);
std::string timing_json(const TimingReport& r);
// Plain-text listing, one element per line.
std::string sequence_table(const PulseSequence& seq);

}  // namespace pushgate
