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

#include <span>
#include <string_view>
#include <vector>

#include "qtunnel/common.hpp"

namespace qtunnel {

/// Periodic 1-D lattice of 2^n sites with unit spacing; site k sits at x_k = k + 1/2.
struct LatticeSpec {
    int n_qubits = 1;

    explicit LatticeSpec(int n);

    static constexpr double spacing = 1.0;
    std::size_t sites() const { return dim_of(n_qubits); }
    double length() const { return spacing * static_cast<double>(sites()); }
    double site_coord(std::size_t k) const { return (static_cast<double>(k) + 0.5) * spacing; }
    std::vector<double> site_coords() const;
};

/// Unit-norm amplitudes over the lattice basis. Index k is the binary label with
/// qubit 0 as the most significant bit, so |01> is index 1 and |110> is index 6.
class StateVector {
  public:
    struct Unchecked {};

    /// Validates size 2^n and unit norm within 1e-12.
    StateVector(int n_qubits, Vector amplitudes);
    /// Skips the norm check; used by kernels that are unitary by construction.
    StateVector(int n_qubits, Vector amplitudes, Unchecked);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector &amplitudes() const { return amps_; }
    std::span<const cplx> view() const { return {amps_.data(), dim()}; }
    cplx operator[](std::size_t k) const { return amps_[static_cast<Eigen::Index>(k)]; }
    double norm_squared() const { return amps_.squaredNorm(); }

  private:
    int n_qubits_;
    Vector amps_;
};

/// Hermitian, unit-trace, positive semidefinite 2^n x 2^n matrix.
class DensityMatrix {
  public:
    /// Throws DomainError when the matrix is not a valid density matrix.
    DensityMatrix(int n_qubits, Matrix entries);

    static DensityMatrix pure(const StateVector &state);

    int n_qubits() const { return n_qubits_; }
    const Matrix &entries() const { return rho_; }

  private:
    int n_qubits_;
    Matrix rho_;
};

StateVector basis_state(int n_qubits, std::string_view label);
StateVector basis_state(int n_qubits, std::size_t index);
StateVector uniform_state(int n_qubits);

std::vector<double> probabilities(const StateVector &state);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/// Measures every n-qubit Pauli string expectation of |psi><psi| and rebuilds
/// rho = 2^-n sum_P <P> P. Limited to 10 qubits (4^n strings).
DensityMatrix pauli_tomography_roundtrip(const StateVector &state);

/// "0110"-style label of index k on n qubits.
std::string basis_label(std::size_t index, int n_qubits);

}  // namespace qtunnel
