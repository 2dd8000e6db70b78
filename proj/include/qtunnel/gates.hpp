// Copyright 2026 The qtunnel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtunnel/common.hpp"
#include "qtunnel/corestate.hpp"

namespace qtunnel {

// Qubit indices are 0-based with qubit 0 the most significant bit. The text
// format uses 1-based indices so that "H 1" is the usual H_1.

struct Hadamard {
    int qubit;
};

/// diag(1, 1, 1, e^{i angle}) on an unordered qubit pair.
struct ControlledPhase {
    double angle;
    int a;
    int b;
};

/// exp(i angle sigma_z): e^{+i angle} on |0>, e^{-i angle} on |1>.
struct ZPhase {
    double angle;
    int qubit;
};

/// exp(i angle diag(1, 1, 1, -1)) on an unordered qubit pair.
struct ZZPhase {
    double angle;
    int a;
    int b;
};

/// Explicit diagonal exp(i phases[s]) where s is the sub-index formed from the
/// listed qubits, first listed qubit most significant.
struct DiagonalPhase {
    std::vector<double> phases;
    std::vector<int> qubits;
};

using GateSpec = std::variant<Hadamard, ControlledPhase, ZPhase, ZZPhase, DiagonalPhase>;

std::vector<int> gate_targets(const GateSpec &gate);
bool is_diagonal(const GateSpec &gate);
GateSpec inverse(const GateSpec &gate);

/// Dense 2^m x 2^m matrix of the gate on its own targets (target order as listed).
Matrix local_matrix(const GateSpec &gate);

class Circuit {
  public:
    /// Throws IndexError if any gate targets a qubit outside [0, n_qubits).
    explicit Circuit(int n_qubits, std::vector<GateSpec> gates = {});

    int n_qubits() const { return n_qubits_; }
    const std::vector<GateSpec> &gates() const { return gates_; }

    Circuit &append(GateSpec gate);
    Circuit &append(const Circuit &other);
    Circuit inverse() const;

  private:
    int n_qubits_;
    std::vector<GateSpec> gates_;
};

/// In-place kernel, O(2^n) per gate.
void apply_gate_inplace(Vector &amps, int n_qubits, const GateSpec &gate);
void apply_circuit_inplace(Vector &amps, int n_qubits, const Circuit &circuit);

StateVector apply_gate(const StateVector &state, const GateSpec &gate);
StateVector apply_circuit(const StateVector &state, const Circuit &circuit);

/// Ordered product, later gates multiplying on the left. n_qubits <= 12.
Matrix circuit_unitary(const Circuit &circuit);

/// max_ij |a - c b| with |c| = 1 taken from the ratio at b's largest-magnitude entry.
double global_phase_residual(const Matrix &a, const Matrix &b);
bool unitaries_equal_up_to_global_phase(const Matrix &a, const Matrix &b, double tol);

/// One gate per line: "H 1", "CP pi/2 1 2", "ZP <angle> 2", "ZZ <angle> 1 2",
/// "DIAG <2^m phases> <m qubits>". Qubits may be written as "q1" or "1".
/// '#' starts a comment; an optional "QUBITS n" line fixes the register size,
/// otherwise it is the largest qubit index used.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string &path);
std::string format_circuit(const Circuit &circuit);

}  // namespace qtunnel
