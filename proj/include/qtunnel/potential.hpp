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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtunnel/common.hpp"
#include "qtunnel/gates.hpp"

namespace qtunnel {

enum class PotentialTag { DoubleWell, Free, Custom };

std::string to_string(PotentialTag tag);

/// Diagonal potential energies V(x_k), one per lattice site.
struct PotentialSpec {
    int n_qubits;
    std::vector<double> values;
    PotentialTag tag = PotentialTag::Custom;
    double v0 = 0.0;  // meaningful for DoubleWell only
};

/// V0 (I (x) sigma_z) on 2 qubits, V0 (I (x) sigma_z (x) I) on 3. V0 = 0 gives
/// the free particle. Throws UnsupportedSizeError for other n and DomainError for V0 < 0.
PotentialSpec double_well(int n_qubits, double v0);
PotentialSpec free_potential(int n_qubits);
/// Throws InvalidSizeError unless values.size() is 2^n with n >= 1.
PotentialSpec custom_potential(std::vector<double> values);
/// One real per line; blank lines and '#' comments are ignored.
PotentialSpec load_potential_file(const std::string &path);

/// Coefficients over {I, Z}^n strings, character i referring to qubit i.
struct PauliZDecomposition {
    int n_qubits;
    std::map<std::string, double> coefficients;

    std::map<std::string, double> nonzero(double tol = 1e-12) const;
    std::vector<double> reconstruct() const;
};

/// c_s = 2^-n sum_k V_k sign_s(k), via an in-place Walsh-Hadamard transform.
PauliZDecomposition pauli_decompose(const PotentialSpec &pot);

/// Q = exp(-i V dt) as a gate. Potentials of the form c Z_q collapse to a
/// single ZPhase(-c dt) on q; everything else is a full-register DiagonalPhase.
GateSpec potential_propagator(const PotentialSpec &pot, double dt);

/// (qubit, c) when V = c Z_qubit exactly.
std::optional<std::pair<int, double>> single_qubit_z_factor(const PotentialSpec &pot, double tol = 1e-12);

}  // namespace qtunnel
