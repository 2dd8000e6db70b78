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

#include "qtunnel/spectral.hpp"

#include <cmath>

#include "qtunnel/errors.hpp"

namespace qtunnel {

namespace {

void check_n(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw InvalidSizeError("register size must be in [1, " + std::to_string(kMaxStateQubits) + "]");
    }
}

void check_amps(const Vector &amps, int n_qubits) {
    if (static_cast<std::size_t>(amps.size()) != dim_of(n_qubits)) {
        throw ShapeError("amplitude count does not match register size");
    }
}

// Applies H on `qubit` followed by exp(sign * i pi tail / 2^{shift}) on indices
// with that bit set, where tail is the integer value of all less significant bits.
void fused_stage_forward(Vector &amps, int n_qubits, int qubit) {
    const int shift = bit_shift(n_qubits, qubit);
    const std::size_t stride = std::size_t{1} << shift;
    const std::size_t dim = dim_of(n_qubits);
    const double r = 1.0 / std::sqrt(2.0);
    const double unit = kPi / static_cast<double>(stride);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t tail = 0; tail < stride; ++tail) {
            const auto lo = static_cast<Eigen::Index>(block + tail);
            const auto hi = static_cast<Eigen::Index>(block + tail + stride);
            const cplx a = amps[lo];
            const cplx b = amps[hi];
            amps[lo] = r * (a + b);
            amps[hi] = r * (a - b) * std::polar(1.0, unit * static_cast<double>(tail));
        }
    }
}

void fused_stage_inverse(Vector &amps, int n_qubits, int qubit) {
    const int shift = bit_shift(n_qubits, qubit);
    const std::size_t stride = std::size_t{1} << shift;
    const std::size_t dim = dim_of(n_qubits);
    const double r = 1.0 / std::sqrt(2.0);
    const double unit = kPi / static_cast<double>(stride);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t tail = 0; tail < stride; ++tail) {
            const auto lo = static_cast<Eigen::Index>(block + tail);
            const auto hi = static_cast<Eigen::Index>(block + tail + stride);
            const cplx a = amps[lo];
            const cplx b = amps[hi] * std::polar(1.0, -unit * static_cast<double>(tail));
            amps[lo] = r * (a + b);
            amps[hi] = r * (a - b);
        }
    }
}

}  // namespace

MomentumGrid momentum_grid(int n_qubits, MomentumConvention convention) {
    if (n_qubits < 1) {
        throw InvalidSizeError("momentum grid needs at least one qubit");
    }
    check_n(n_qubits);
    const std::size_t dim = dim_of(n_qubits);
    const std::size_t half = dim / 2;
    const double unit = 2.0 * kPi / static_cast<double>(dim);
    MomentumGrid grid{n_qubits, std::vector<double>(dim)};
    for (std::size_t j = 0; j < dim; ++j) {
        const auto jd = static_cast<double>(j);
        if (j <= half) {
            grid.p[j] = unit * jd;
        } else if (convention == MomentumConvention::Standard) {
            grid.p[j] = unit * (jd - static_cast<double>(dim));
        } else {
            grid.p[j] = unit * (static_cast<double>(half) - jd);
        }
    }
    return grid;
}

std::size_t reverse_bits(std::size_t k, int n_qubits) {
    std::size_t r = 0;
    for (int b = 0; b < n_qubits; ++b) {
        r = (r << 1) | ((k >> b) & 1U);
    }
    return r;
}

std::vector<std::size_t> bit_reversal_permutation(int n_qubits) {
    check_n(n_qubits);
    std::vector<std::size_t> perm(dim_of(n_qubits));
    for (std::size_t k = 0; k < perm.size(); ++k) {
        perm[k] = reverse_bits(k, n_qubits);
    }
    return perm;
}

Circuit qft_circuit(int n_qubits) {
    check_n(n_qubits);
    Circuit c(n_qubits);
    for (int i = 0; i < n_qubits; ++i) {
        c.append(Hadamard{i});
        for (int j = i + 1; j < n_qubits; ++j) {
            c.append(ControlledPhase{kPi / static_cast<double>(dim_of(j - i)), i, j});
        }
    }
    return c;
}

Matrix qft_matrix(int n_qubits) {
    check_n(n_qubits);
    if (n_qubits > kMaxDenseQubits) {
        throw CapacityError("dense QFT is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    const std::size_t dim = dim_of(n_qubits);
    const auto d = static_cast<Eigen::Index>(dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    Matrix f(d, d);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto row = static_cast<Eigen::Index>(reverse_bits(j, n_qubits));
        for (std::size_t k = 0; k < dim; ++k) {
            // Reduce jk mod 2^n before scaling to keep the angle exact.
            const std::size_t jk = (j * k) & (dim - 1);
            const double angle = 2.0 * kPi * static_cast<double>(jk) / static_cast<double>(dim);
            f(row, static_cast<Eigen::Index>(k)) = norm * std::polar(1.0, angle);
        }
    }
    return f;
}

void qft_inplace(Vector &amps, int n_qubits) {
    check_amps(amps, n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        fused_stage_forward(amps, n_qubits, q);
    }
}

void inverse_qft_inplace(Vector &amps, int n_qubits) {
    check_amps(amps, n_qubits);
    for (int q = n_qubits - 1; q >= 0; --q) {
        fused_stage_inverse(amps, n_qubits, q);
    }
}

StateVector qft_apply(const StateVector &state) {
    Vector a = state.amplitudes();
    qft_inplace(a, state.n_qubits());
    return StateVector(state.n_qubits(), std::move(a), StateVector::Unchecked{});
}

StateVector inverse_qft_apply(const StateVector &state) {
    Vector a = state.amplitudes();
    inverse_qft_inplace(a, state.n_qubits());
    return StateVector(state.n_qubits(), std::move(a), StateVector::Unchecked{});
}

KineticDiag kinetic_diag(int n_qubits, double dt, double mass, MomentumConvention convention) {
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    const MomentumGrid grid = momentum_grid(n_qubits, convention);
    KineticDiag kd{n_qubits, dt, mass, std::vector<cplx>(grid.p.size())};
    for (std::size_t k = 0; k < kd.phases.size(); ++k) {
        const double p = grid.p[reverse_bits(k, n_qubits)];
        kd.phases[k] = std::polar(1.0, -p * p * dt / (2.0 * mass));
    }
    return kd;
}

Matrix diagonal_matrix(const std::vector<cplx> &entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = entries[i];
    }
    return v.asDiagonal();
}

Circuit methods_decomposition_D(int n_qubits, double dt) {
    const double pi2 = kPi * kPi;
    if (n_qubits == 2) {
        return Circuit(2, {
                              ZPhase{pi2 / 8.0 * dt, 0},
                              ZPhase{pi2 / 2.0 * dt, 1},
                              ZZPhase{-pi2 / 2.0 * dt, 0, 1},
                          });
    }
    if (n_qubits == 3) {
        return Circuit(3, {
                              ZPhase{pi2 / 32.0 * dt, 0},
                              ZPhase{pi2 / 8.0 * dt, 1},
                              ZPhase{pi2 / 2.0 * dt, 2},
                              ZZPhase{-pi2 / 2.0 * dt, 1, 2},
                              ZZPhase{-pi2 / 4.0 * dt, 0, 2},
                              ZZPhase{pi2 / 8.0 * dt, 0, 1},
                          });
    }
    throw UnsupportedSizeError("gate decomposition of D exists only for 2 and 3 qubits");
}

}  // namespace qtunnel
