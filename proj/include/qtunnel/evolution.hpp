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

#include <optional>
#include <string>
#include <vector>

#include "qtunnel/common.hpp"
#include "qtunnel/corestate.hpp"
#include "qtunnel/potential.hpp"
#include "qtunnel/spectral.hpp"

namespace qtunnel {

enum class EvolutionMode { Trotter, Exact, Free };

/// FirstOrder is F^-1 D F Q. Strang is Q(dt/2) F^-1 D F Q(dt/2), an extension.
enum class Splitting { FirstOrder, Strang };

std::string to_string(EvolutionMode mode);
EvolutionMode parse_mode(const std::string &text);

struct TrotterConfig {
    double dt = 0.1;
    int steps = 1;
    double mass = 0.5;
    EvolutionMode mode = EvolutionMode::Trotter;
    Splitting splitting = Splitting::FirstOrder;
    MomentumConvention convention = MomentumConvention::Standard;

    /// Throws DomainError unless dt > 0, steps >= 1, mass > 0.
    void validate() const;
};

/// Row t holds the site probabilities after t steps; row 0 is the initial state.
struct ProbabilityTrace {
    int n_qubits;
    std::vector<std::vector<double>> rows;

    std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
    double row_sum(std::size_t t) const;
};

struct EvolutionResult {
    ProbabilityTrace trace;
    StateVector final_state;
    std::vector<StateVector> states;  // filled when requested, index = step
};

/// One F^-1 D F Q step (Q omitted in Free mode). Any finite dt is accepted,
/// including 0 and negative values. Exact mode is rejected; use exact_propagator.
StateVector trotter_step(const StateVector &state, const PotentialSpec &pot, const TrotterConfig &cfg);

/// Inverse of trotter_step: Q(-dt) F^-1 D(-dt) F. Undoes one step exactly.
StateVector reverse_trotter_step(const StateVector &state, const PotentialSpec &pot, const TrotterConfig &cfg);

EvolutionResult evolve(const StateVector &initial, const PotentialSpec &pot, const TrotterConfig &cfg,
                       bool keep_states = false);

/// H = F^-1 diag(p^2 / 2m) F + diag(V), dense. n <= 12.
Matrix hamiltonian(const PotentialSpec &pot, double mass,
                   MomentumConvention convention = MomentumConvention::Standard);

/// exp(-i H dt) through the Hermitian eigendecomposition of H.
Matrix exact_propagator(int n_qubits, const PotentialSpec &pot, double dt, double mass,
                        MomentumConvention convention = MomentumConvention::Standard);

double energy(const StateVector &state, const Matrix &h);

/// Per-step |<psi_exact(t dt)|psi_trotter(t)>|^2, row 0 included.
struct OverlapReport {
    std::vector<double> overlaps;
    double final_overlap() const { return overlaps.back(); }
};

OverlapReport trotter_vs_exact_report(const PotentialSpec &pot, const TrotterConfig &cfg,
                                      const StateVector &initial);

}  // namespace qtunnel
