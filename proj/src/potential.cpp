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

#include "qtunnel/potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qtunnel/errors.hpp"

namespace qtunnel {

namespace {

int log2_exact(std::size_t size) {
    int n = 0;
    while ((std::size_t{1} << n) < size) {
        ++n;
    }
    if ((std::size_t{1} << n) != size || n < 1) {
        throw InvalidSizeError("potential needs 2^n values with n >= 1, got " + std::to_string(size));
    }
    return n;
}

std::string pauli_label(std::size_t zmask, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
        if (bit_of(zmask, n_qubits, q)) {
            s[static_cast<std::size_t>(q)] = 'Z';
        }
    }
    return s;
}

}  // namespace

std::string to_string(PotentialTag tag) {
    switch (tag) {
        case PotentialTag::DoubleWell:
            return "double_well";
        case PotentialTag::Free:
            return "free";
        case PotentialTag::Custom:
            return "custom";
    }
    return "custom";
}

PotentialSpec double_well(int n_qubits, double v0) {
    if (n_qubits != 2 && n_qubits != 3) {
        throw UnsupportedSizeError("double well is defined for 2 or 3 qubits; use a custom potential");
    }
    if (!(v0 >= 0.0) || !std::isfinite(v0)) {
        throw DomainError("double well amplitude V0 must be finite and non-negative");
    }
    PotentialSpec pot{n_qubits, std::vector<double>(dim_of(n_qubits)), PotentialTag::DoubleWell, v0};
    for (std::size_t k = 0; k < pot.values.size(); ++k) {
        pot.values[k] = bit_of(k, n_qubits, 1) ? -v0 : v0;
    }
    return pot;
}

PotentialSpec free_potential(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw InvalidSizeError("register size out of range");
    }
    return PotentialSpec{n_qubits, std::vector<double>(dim_of(n_qubits), 0.0), PotentialTag::Free, 0.0};
}

PotentialSpec custom_potential(std::vector<double> values) {
    const int n = log2_exact(values.size());
    if (n > kMaxStateQubits) {
        throw InvalidSizeError("potential larger than the register cap");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError("potential values must be finite");
        }
    }
    return PotentialSpec{n, std::move(values), PotentialTag::Custom, 0.0};
}

PotentialSpec load_potential_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read potential file '" + path + "'");
    }
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        double v = 0.0;
        if (!(ls >> v)) {
            std::string rest;
            if (std::istringstream(line) >> rest) {
                throw ParseError(path + ":" + std::to_string(line_no) + ": expected a number");
            }
            continue;
        }
        std::string extra;
        if (ls >> extra) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": one value per line");
        }
        values.push_back(v);
    }
    return custom_potential(std::move(values));
}

std::map<std::string, double> PauliZDecomposition::nonzero(double tol) const {
    std::map<std::string, double> out;
    for (const auto &[label, c] : coefficients) {
        if (std::abs(c) > tol) {
            out.emplace(label, c);
        }
    }
    return out;
}

std::vector<double> PauliZDecomposition::reconstruct() const {
    std::vector<double> values(dim_of(n_qubits), 0.0);
    for (const auto &[label, c] : coefficients) {
        for (std::size_t k = 0; k < values.size(); ++k) {
            int parity = 0;
            for (int q = 0; q < n_qubits; ++q) {
                if (label[static_cast<std::size_t>(q)] == 'Z') {
                    parity ^= bit_of(k, n_qubits, q);
                }
            }
            values[k] += parity ? -c : c;
        }
    }
    return values;
}

PauliZDecomposition pauli_decompose(const PotentialSpec &pot) {
    std::vector<double> c = pot.values;
    const std::size_t dim = c.size();
    for (std::size_t h = 1; h < dim; h <<= 1) {
        for (std::size_t block = 0; block < dim; block += 2 * h) {
            for (std::size_t i = block; i < block + h; ++i) {
                const double a = c[i];
                const double b = c[i + h];
                c[i] = a + b;
                c[i + h] = a - b;
            }
        }
    }
    PauliZDecomposition dec{pot.n_qubits, {}};
    const double scale = 1.0 / static_cast<double>(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        dec.coefficients.emplace(pauli_label(s, pot.n_qubits), c[s] * scale);
    }
    return dec;
}

std::optional<std::pair<int, double>> single_qubit_z_factor(const PotentialSpec &pot, double tol) {
    const auto nz = pauli_decompose(pot).nonzero(tol);
    if (nz.size() != 1) {
        return std::nullopt;
    }
    const auto &[label, c] = *nz.begin();
    int qubit = -1;
    for (int q = 0; q < pot.n_qubits; ++q) {
        if (label[static_cast<std::size_t>(q)] == 'Z') {
            if (qubit >= 0) {
                return std::nullopt;
            }
            qubit = q;
        }
    }
    if (qubit < 0) {
        return std::nullopt;
    }
    return std::pair{qubit, c};
}

GateSpec potential_propagator(const PotentialSpec &pot, double dt) {
    if (auto z = single_qubit_z_factor(pot)) {
        return ZPhase{-z->second * dt, z->first};
    }
    DiagonalPhase g;
    g.phases.resize(pot.values.size());
    for (std::size_t k = 0; k < pot.values.size(); ++k) {
        g.phases[k] = -pot.values[k] * dt;
    }
    for (int q = 0; q < pot.n_qubits; ++q) {
        g.qubits.push_back(q);
    }
    return g;
}

}  // namespace qtunnel
