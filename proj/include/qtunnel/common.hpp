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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace qtunnel {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

// Largest register held as a flat statevector.
inline constexpr int kMaxStateQubits = 24;
// Largest register for which dense 2^n x 2^n matrices are built.
inline constexpr int kMaxDenseQubits = 12;

inline constexpr std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

// Qubit 0 is the most significant bit of a basis index.
inline constexpr int bit_shift(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

inline constexpr int bit_of(std::size_t index, int n_qubits, int qubit) {
    return static_cast<int>((index >> bit_shift(n_qubits, qubit)) & 1U);
}

}  // namespace qtunnel
