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

#include <cstdint>
#include <vector>

#include "qtunnel/common.hpp"
#include "qtunnel/corestate.hpp"
#include "qtunnel/gates.hpp"

namespace qtunnel {

/// How momenta above the Nyquist index are assigned.
enum class MomentumConvention {
    /// p_j = 2 pi (j - 2^n) / 2^n for j > 2^{n-1}: ordinary DFT negative frequencies.
    Standard,
    /// p_j = 2 pi (2^{n-1} - j) / 2^n for j > 2^{n-1}: mirrors the upper band.
    /// Kept to show that it does not reproduce the 3-qubit gate decomposition.
    LiteralBranch,
};

struct MomentumGrid {
    int n_qubits;
    std::vector<double> p;
};

MomentumGrid momentum_grid(int n_qubits, MomentumConvention convention = MomentumConvention::Standard);

/// sigma(k) = k with its n-bit string reversed.
std::vector<std::size_t> bit_reversal_permutation(int n_qubits);
std::size_t reverse_bits(std::size_t k, int n_qubits);

/// Hadamard/controlled-phase ladder without the terminal swaps:
/// for each qubit i, H_i then CP(pi / 2^{j-i}) on (i, j) for every j > i.
Circuit qft_circuit(int n_qubits);

/// Dense bit-swapped transform from its closed form,
/// F[bitrev(j), k] = 2^{-n/2} e^{2 pi i j k / 2^n}.
Matrix qft_matrix(int n_qubits);

/// Fused ladder: each qubit's H plus its controlled phases in one O(2^n) pass,
/// O(n 2^n) overall.
void qft_inplace(Vector &amps, int n_qubits);
void inverse_qft_inplace(Vector &amps, int n_qubits);
StateVector qft_apply(const StateVector &state);
StateVector inverse_qft_apply(const StateVector &state);

/// Kinetic phases in the bit-reversed momentum register:
/// entry k = exp(-i p_{bitrev(k)}^2 dt / (2 m)).
struct KineticDiag {
    int n_qubits;
    double dt;
    double mass;
    std::vector<cplx> phases;
};

/// Throws DomainError for mass <= 0.
KineticDiag kinetic_diag(int n_qubits, double dt, double mass,
                         MomentumConvention convention = MomentumConvention::Standard);

Matrix diagonal_matrix(const std::vector<cplx> &entries);

/// Diagonal-gate construction of the kinetic propagator with m = 1/2 for a
/// 2- or 3-qubit register; equals kinetic_diag up to a global phase.
///   n = 2: ZP(pi^2/8 dt) on q1, ZP(pi^2/2 dt) on q2, ZZ(-pi^2/2 dt) on (q1, q2)
///   n = 3: ZP(pi^2/32 dt, pi^2/8 dt, pi^2/2 dt) on q1..q3,
///          ZZ(-pi^2/2 dt) on (q2, q3), ZZ(-pi^2/4 dt) on (q1, q3), ZZ(+pi^2/8 dt) on (q1, q2)
/// Throws UnsupportedSizeError for other n.
Circuit methods_decomposition_D(int n_qubits, double dt);

}  // namespace qtunnel
