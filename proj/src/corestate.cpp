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

#include "qtunnel/corestate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qtunnel/errors.hpp"

namespace qtunnel {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr int kMaxTomographyQubits = 10;

void check_register_size(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw InvalidSizeError("register size must be in [1, " + std::to_string(kMaxStateQubits) +
                               "], got " + std::to_string(n_qubits));
    }
}

Matrix psd_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

LatticeSpec::LatticeSpec(int n) : n_qubits(n) { check_register_size(n); }

std::vector<double> LatticeSpec::site_coords() const {
    std::vector<double> xs(sites());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        xs[k] = site_coord(k);
    }
    return xs;
}

StateVector::StateVector(int n_qubits, Vector amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_register_size(n_qubits);
    if (static_cast<std::size_t>(amps_.size()) != dim_of(n_qubits)) {
        throw ShapeError("expected " + std::to_string(dim_of(n_qubits)) + " amplitudes, got " +
                         std::to_string(amps_.size()));
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
        throw DomainError("state is not normalized");
    }
}

StateVector::StateVector(int n_qubits, Vector amplitudes, Unchecked)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {}

DensityMatrix::DensityMatrix(int n_qubits, Matrix entries) : n_qubits_(n_qubits), rho_(std::move(entries)) {
    check_register_size(n_qubits);
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    if (rho_.rows() != d || rho_.cols() != d) {
        throw ShapeError("density matrix has wrong dimensions");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw DomainError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - cplx{1.0}) > kTraceTol) {
        throw DomainError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw DomainError("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    const Vector &a = state.amplitudes();
    return DensityMatrix(state.n_qubits(), a * a.adjoint());
}

StateVector basis_state(int n_qubits, std::string_view label) {
    if (label.size() != static_cast<std::size_t>(n_qubits)) {
        throw InvalidLabelError("label '" + std::string(label) + "' does not have " +
                                std::to_string(n_qubits) + " bits");
    }
    std::size_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw InvalidLabelError("label '" + std::string(label) + "' is not a bitstring");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return basis_state(n_qubits, index);
}

StateVector basis_state(int n_qubits, std::size_t index) {
    check_register_size(n_qubits);
    if (index >= dim_of(n_qubits)) {
        throw IndexError("basis index out of range");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n_qubits, std::move(amps), StateVector::Unchecked{});
}

StateVector uniform_state(int n_qubits) {
    check_register_size(n_qubits);
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return StateVector(n_qubits, Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))),
                       StateVector::Unchecked{});
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p(state.dim());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::norm(state[k]);
    }
    return p;
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("fidelity of density matrices with different sizes");
    }
    // A rank-one argument gives F = <psi|other|psi> exactly; the square-root
    // route loses ~sqrt(eps) there because of the zero eigenvalues.
    for (const auto *pair : {&a, &b}) {
        const Matrix &m = pair->entries();
        if (std::abs((m * m).trace().real() - 1.0) < 1e-12) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(m);
            const Vector psi = es.eigenvectors().col(es.eigenvectors().cols() - 1);
            const Matrix &other = pair == &a ? b.entries() : a.entries();
            return std::clamp(psi.dot(other * psi).real(), 0.0, 1.0);
        }
    }
    const Matrix sa = psd_sqrt(a.entries());
    const Matrix inner = sa * b.entries() * sa;
    const Matrix herm = 0.5 * (inner + inner.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

DensityMatrix pauli_tomography_roundtrip(const StateVector &state) {
    const int n = state.n_qubits();
    if (n > kMaxTomographyQubits) {
        throw CapacityError("tomography is limited to " + std::to_string(kMaxTomographyQubits) + " qubits");
    }
    const std::size_t d = dim_of(n);
    const Vector &psi = state.amplitudes();
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));

    // A Pauli string is X^x Z^z up to a phase i^{popcount(x & z)}: it maps |k> to
    // phase(k) |k ^ x> with phase(k) = i^{|x&z|} (-1)^{|k&z|}.
    const cplx i_pow[4] = {1.0, cplx{0, 1}, -1.0, cplx{0, -1}};
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t z = 0; z < d; ++z) {
            const cplx base = i_pow[std::popcount(x & z) % 4];
            auto phase = [&](std::size_t k) {
                return (std::popcount(k & z) % 2 == 0) ? base : -base;
            };
            // <P> = sum_k conj(psi[k ^ x]) phase(k) psi[k]
            cplx expect = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                expect += std::conj(psi[static_cast<Eigen::Index>(k ^ x)]) * phase(k) *
                          psi[static_cast<Eigen::Index>(k)];
            }
            // Expectations of Hermitian strings are real.
            const double e = expect.real();
            for (std::size_t k = 0; k < d; ++k) {
                rho(static_cast<Eigen::Index>(k ^ x), static_cast<Eigen::Index>(k)) += e * phase(k);
            }
        }
    }
    rho /= static_cast<double>(d);
    return DensityMatrix(n, std::move(rho));
}

std::string basis_label(std::size_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (bit_of(index, n_qubits, q)) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

}  // namespace qtunnel
