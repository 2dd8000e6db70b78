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

#include "qtunnel/evolution.hpp"

#include <cmath>

#include "qtunnel/errors.hpp"
#include "qtunnel/gates.hpp"

namespace qtunnel {

namespace {

constexpr double kHermitianTol = 1e-12;

void check_dims(const StateVector &state, const PotentialSpec &pot) {
    if (state.n_qubits() != pot.n_qubits || state.dim() != pot.values.size()) {
        throw ShapeError("state has " + std::to_string(state.n_qubits()) + " qubits but potential has " +
                         std::to_string(pot.n_qubits));
    }
}

void apply_phases(Vector &amps, const std::vector<cplx> &phases) {
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps[i] *= phases[static_cast<std::size_t>(i)];
    }
}

void apply_potential(Vector &amps, const PotentialSpec &pot, double dt) {
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps[i] *= std::polar(1.0, -pot.values[static_cast<std::size_t>(i)] * dt);
    }
}

void apply_kinetic(Vector &amps, int n, const std::vector<cplx> &d) {
    qft_inplace(amps, n);
    apply_phases(amps, d);
    inverse_qft_inplace(amps, n);
}

void step_inplace(Vector &amps, const PotentialSpec &pot, const TrotterConfig &cfg, const KineticDiag &kd) {
    const bool with_potential = cfg.mode != EvolutionMode::Free;
    if (with_potential && cfg.splitting == Splitting::Strang) {
        apply_potential(amps, pot, cfg.dt / 2.0);
        apply_kinetic(amps, pot.n_qubits, kd.phases);
        apply_potential(amps, pot, cfg.dt / 2.0);
        return;
    }
    if (with_potential) {
        apply_potential(amps, pot, cfg.dt);
    }
    apply_kinetic(amps, pot.n_qubits, kd.phases);
}

}  // namespace

std::string to_string(EvolutionMode mode) {
    switch (mode) {
        case EvolutionMode::Trotter:
            return "trotter";
        case EvolutionMode::Exact:
            return "exact";
        case EvolutionMode::Free:
            return "free";
    }
    return "trotter";
}

EvolutionMode parse_mode(const std::string &text) {
    if (text == "trotter") return EvolutionMode::Trotter;
    if (text == "exact") return EvolutionMode::Exact;
    if (text == "free") return EvolutionMode::Free;
    throw ParseError("unknown evolution mode '" + text + "'");
}

void TrotterConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
}

double ProbabilityTrace::row_sum(std::size_t t) const {
    double s = 0.0;
    for (double p : rows.at(t)) s += p;
    return s;
}

StateVector trotter_step(const StateVector &state, const PotentialSpec &pot, const TrotterConfig &cfg) {
    check_dims(state, pot);
    if (cfg.mode == EvolutionMode::Exact) {
        throw DomainError("trotter_step does not run in exact mode");
    }
    const KineticDiag kd = kinetic_diag(pot.n_qubits, cfg.dt, cfg.mass, cfg.convention);
    Vector amps = state.amplitudes();
    step_inplace(amps, pot, cfg, kd);
    return StateVector(state.n_qubits(), std::move(amps), StateVector::Unchecked{});
}

StateVector reverse_trotter_step(const StateVector &state, const PotentialSpec &pot, const TrotterConfig &cfg) {
    check_dims(state, pot);
    if (cfg.mode == EvolutionMode::Exact) {
        throw DomainError("reverse_trotter_step does not run in exact mode");
    }
    const KineticDiag kd = kinetic_diag(pot.n_qubits, -cfg.dt, cfg.mass, cfg.convention);
    Vector amps = state.amplitudes();
    const bool with_potential = cfg.mode != EvolutionMode::Free;
    if (with_potential && cfg.splitting == Splitting::Strang) {
        apply_potential(amps, pot, -cfg.dt / 2.0);
        apply_kinetic(amps, pot.n_qubits, kd.phases);
        apply_potential(amps, pot, -cfg.dt / 2.0);
    } else {
        apply_kinetic(amps, pot.n_qubits, kd.phases);
        if (with_potential) {
            apply_potential(amps, pot, -cfg.dt);
        }
    }
    return StateVector(state.n_qubits(), std::move(amps), StateVector::Unchecked{});
}

EvolutionResult evolve(const StateVector &initial, const PotentialSpec &pot, const TrotterConfig &cfg,
                       bool keep_states) {
    cfg.validate();
    check_dims(initial, pot);
    const int n = initial.n_qubits();

    EvolutionResult result{ProbabilityTrace{n, {}}, initial, {}};
    result.trace.rows.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    result.trace.rows.push_back(probabilities(initial));
    if (keep_states) {
        result.states.push_back(initial);
    }

    Vector amps = initial.amplitudes();
    Matrix u;
    KineticDiag kd{};
    if (cfg.mode == EvolutionMode::Exact) {
        u = exact_propagator(n, pot, cfg.dt, cfg.mass, cfg.convention);
    } else {
        kd = kinetic_diag(n, cfg.dt, cfg.mass, cfg.convention);
    }
    for (int t = 0; t < cfg.steps; ++t) {
        if (cfg.mode == EvolutionMode::Exact) {
            amps = u * amps;
        } else {
            step_inplace(amps, pot, cfg, kd);
        }
        StateVector s(n, amps, StateVector::Unchecked{});
        result.trace.rows.push_back(probabilities(s));
        if (keep_states) {
            result.states.push_back(s);
        }
    }
    result.final_state = StateVector(n, std::move(amps), StateVector::Unchecked{});
    return result;
}

Matrix hamiltonian(const PotentialSpec &pot, double mass, MomentumConvention convention) {
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    const int n = pot.n_qubits;
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense Hamiltonian is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    const Matrix f = qft_matrix(n);
    const MomentumGrid grid = momentum_grid(n, convention);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    Eigen::VectorXd kinetic(d);
    Eigen::VectorXd v(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double p = grid.p[reverse_bits(static_cast<std::size_t>(k), n)];
        kinetic[k] = p * p / (2.0 * mass);
        v[k] = pot.values[static_cast<std::size_t>(k)];
    }
    Matrix h = f.adjoint() * kinetic.cast<cplx>().asDiagonal() * f;
    h.diagonal() += v.cast<cplx>();
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * (1.0 + h.cwiseAbs().maxCoeff())) {
        throw DomainError("Hamiltonian is not Hermitian");
    }
    return 0.5 * (h + h.adjoint());
}

Matrix exact_propagator(int n_qubits, const PotentialSpec &pot, double dt, double mass,
                        MomentumConvention convention) {
    if (n_qubits != pot.n_qubits) {
        throw ShapeError("potential register size does not match");
    }
    if (n_qubits > kMaxDenseQubits) {
        throw CapacityError("exact propagator is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    const Matrix h = hamiltonian(pot, mass, convention);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw DomainError("eigendecomposition failed");
    }
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::polar(1.0, -es.eigenvalues()[i] * dt);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double energy(const StateVector &state, const Matrix &h) {
    const Vector &a = state.amplitudes();
    return a.dot(h * a).real();
}

OverlapReport trotter_vs_exact_report(const PotentialSpec &pot, const TrotterConfig &cfg,
                                      const StateVector &initial) {
    TrotterConfig trotter = cfg;
    if (trotter.mode == EvolutionMode::Exact) {
        trotter.mode = EvolutionMode::Trotter;
    }
    TrotterConfig exact = cfg;
    exact.mode = EvolutionMode::Exact;
    // Free mode compares against the exact free evolution.
    const PotentialSpec free = free_potential(pot.n_qubits);
    const PotentialSpec &target = cfg.mode == EvolutionMode::Free ? free : pot;
    const auto a = evolve(initial, target, trotter, true);
    const auto b = evolve(initial, target, exact, true);
    OverlapReport report;
    for (std::size_t t = 0; t < a.states.size(); ++t) {
        report.overlaps.push_back(std::norm(b.states[t].amplitudes().dot(a.states[t].amplitudes())));
    }
    return report;
}

}  // namespace qtunnel
