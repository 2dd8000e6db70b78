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
#include <random>

#include "gtest/gtest.h"
#include "qtunnel/errors.hpp"
#include "test_util.hpp"

using namespace qtunnel;

namespace {

TrotterConfig config(double dt, int steps, EvolutionMode mode = EvolutionMode::Trotter) {
    TrotterConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    cfg.mode = mode;
    return cfg;
}

double vmax_diff(const Vector &a, const Vector &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(trotter_step, one_step_from_site_two_matches_oracle) {
    const auto pot = double_well(2, 10.0);
    const auto s = trotter_step(basis_state(2, "01"), pot, config(0.1, 1));
    const auto p = probabilities(s);
    const Vector o = oracle::trotter_step(2, pot.values, 0.1) * oracle::basis(2, 1);
    const auto po = oracle::probs(o);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], po[k], 1e-12);
    // Independently computed values; sites 1 and 3 are mirror images around site 2.
    EXPECT_NEAR(p[0], 0.0561, 1e-3);
    EXPECT_NEAR(p[1], 0.8709, 1e-3);
    EXPECT_NEAR(p[2], 0.0561, 1e-3);
    EXPECT_NEAR(p[3], 0.0169, 1e-3);
    EXPECT_NEAR(p[0], p[2], 1e-12);
}

TEST(trotter_step, mismatched_transform_pairing_breaks_reflection_symmetry) {
    // The plain DFT combined with the bit-reversed kinetic diagonal is not the
    // kinetic propagator; it gives a lopsided distribution instead.
    const auto pot = double_well(2, 10.0);
    const Matrix w = oracle::dft(2);
    const Matrix bad = w.adjoint() * diagonal_matrix(kinetic_diag(2, 0.1, 0.5).phases) * w *
                       oracle::potential_propagator(pot.values, 0.1);
    const auto p = oracle::probs(bad * oracle::basis(2, 1));
    EXPECT_NEAR(p[0], 0.0259, 1e-4);
    EXPECT_NEAR(p[1], 0.8709, 1e-4);
    EXPECT_NEAR(p[2], 0.0470, 1e-4);
    EXPECT_NEAR(p[3], 0.0561, 1e-4);
    EXPECT_GT(std::abs(p[0] - p[2]), 0.01);
}

TEST(trotter_step, basis_states_do_not_feel_the_first_potential_step) {
    for (int n : {2, 3}) {
        const auto dw = double_well(n, n == 2 ? 10.0 : 100.0);
        const auto fr = free_potential(n);
        const double dt = n == 2 ? 0.1 : 0.4;
        for (std::size_t k = 0; k < dim_of(n); ++k) {
            const auto a = probabilities(trotter_step(basis_state(n, k), dw, config(dt, 1)));
            const auto b = probabilities(trotter_step(basis_state(n, k), fr, config(dt, 1, EvolutionMode::Free)));
            for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
        }
    }
}

TEST(trotter_step, zero_dt_is_identity_and_shapes_checked) {
    std::mt19937_64 rng(5);
    const auto s = testutil::random_state(3, rng);
    const auto out = trotter_step(s, double_well(3, 100.0), config(0.0, 1));
    EXPECT_LT(vmax_diff(out.amplitudes(), s.amplitudes()), 1e-14);
    EXPECT_THROW(trotter_step(s, double_well(2, 1.0), config(0.1, 1)), ShapeError);
    EXPECT_THROW(trotter_step(s, double_well(3, 1.0), config(0.1, 1, EvolutionMode::Exact)), DomainError);
}

TEST(trotter_step, random_potentials_match_oracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int n = 1; n <= 7; ++n) {
        std::vector<double> v(dim_of(n));
        for (double &x : v) x = u(rng);
        const auto s = testutil::random_state(n, rng);
        const auto out = trotter_step(s, custom_potential(v), config(0.13, 1));
        const Vector o = oracle::trotter_step(n, v, 0.13) * s.amplitudes();
        EXPECT_LT(vmax_diff(out.amplitudes(), o), 1e-11) << "n=" << n;
    }
}

TEST(trotter_step, strang_splitting_matches_symmetric_product) {
    const auto pot = double_well(3, 100.0);
    auto cfg = config(0.05, 1);
    cfg.splitting = Splitting::Strang;
    std::mt19937_64 rng(2);
    const auto s = testutil::random_state(3, rng);
    const Matrix half = oracle::potential_propagator(pot.values, 0.025);
    const Vector o = half * oracle::kinetic_propagator(3, 0.05, 0.5) * half * s.amplitudes();
    EXPECT_LT(vmax_diff(trotter_step(s, pot, cfg).amplitudes(), o), 1e-11);
}

TEST(evolve, two_qubit_trace_matches_oracle) {
    const auto pot = double_well(2, 10.0);
    const auto res = evolve(basis_state(2, "01"), pot, config(0.1, 9));
    ASSERT_EQ(res.trace.steps(), 9u);
    const Matrix u = oracle::trotter_step(2, pot.values, 0.1);
    Vector v = oracle::basis(2, 1);
    for (std::size_t t = 0; t <= 9; ++t) {
        const auto po = oracle::probs(v);
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(res.trace.rows[t][k], po[k], 1e-10);
        EXPECT_NEAR(res.trace.row_sum(t), 1.0, 1e-12);
        v = u * v;
    }
}

TEST(evolve, two_qubit_tunnelling_shape) {
    const auto res = evolve(basis_state(2, "01"), double_well(2, 10.0), config(0.1, 9));
    const auto &first = res.trace.rows.front();
    const auto &last = res.trace.rows.back();
    EXPECT_LT(last[1], first[1]);
    int best = 0;
    for (int k = 1; k < 4; ++k) {
        if (last[k] - first[k] > last[best] - first[best]) best = k;
    }
    EXPECT_EQ(best, 3);
    for (const auto &row : res.trace.rows) EXPECT_LT(row[0] + row[2], 0.25);
}

TEST(evolve, three_qubit_exact_moves_weight_between_wells) {
    const auto pot = double_well(3, 100.0);
    const auto res = evolve(basis_state(3, "110"), pot, config(0.4, 5, EvolutionMode::Exact));
    const Matrix u = oracle::exact_propagator(3, pot.values, 0.4);
    Vector v = oracle::basis(3, 6);
    for (std::size_t t = 0; t <= 5; ++t) {
        const auto po = oracle::probs(v);
        for (int k = 0; k < 8; ++k) EXPECT_NEAR(res.trace.rows[t][k], po[k], 1e-10);
        v = u * v;
    }
    const auto &a = res.trace.rows.front();
    const auto &b = res.trace.rows.back();
    EXPECT_GT(b[2] + b[3], a[2] + a[3]);
    EXPECT_LT(b[6] + b[7], a[6] + a[7]);
    bool pos = false, neg = false;
    for (const auto &row : res.trace.rows) {
        pos |= row[6] - row[7] > 1e-9;
        neg |= row[6] - row[7] < -1e-9;
    }
    EXPECT_TRUE(pos && neg);
}

TEST(evolve, keep_states_and_config_validation) {
    const auto res = evolve(basis_state(2, 0), double_well(2, 1.0), config(0.1, 3), true);
    EXPECT_EQ(res.states.size(), 4u);
    EXPECT_LT(vmax_diff(res.states.back().amplitudes(), res.final_state.amplitudes()), 0.0 + 1e-15);
    EXPECT_THROW(evolve(basis_state(2, 0), double_well(2, 1.0), config(0.0, 3)), DomainError);
    EXPECT_THROW(evolve(basis_state(2, 0), double_well(2, 1.0), config(0.1, 0)), DomainError);
    auto cfg = config(0.1, 1);
    cfg.mass = 0;
    EXPECT_THROW(evolve(basis_state(2, 0), double_well(2, 1.0), cfg), DomainError);
}

TEST(evolve, norm_is_conserved_for_long_runs) {
    std::mt19937_64 rng(9);
    for (int n = 2; n <= 8; ++n) {
        std::vector<double> v(dim_of(n));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = 7.0 * std::cos(double(k));
        const auto res = evolve(testutil::random_state(n, rng), custom_potential(v), config(0.05, 200));
        for (std::size_t t = 0; t <= res.trace.steps(); ++t) EXPECT_NEAR(res.trace.row_sum(t), 1.0, 1e-10);
    }
}

TEST(hamiltonian, matches_oracle_and_is_hermitian) {
    for (int n = 1; n <= 5; ++n) {
        std::vector<double> v(dim_of(n));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(double(k) + 0.3) * 4;
        const Matrix h = hamiltonian(custom_potential(v), 0.5);
        EXPECT_LT(testutil::max_abs_diff(h, oracle::hamiltonian(n, v)), 1e-12);
        EXPECT_LT(testutil::max_abs_diff(h, h.adjoint()), 1e-15);
    }
}

TEST(exact_propagator, matches_series_oracle) {
    for (int n : {2, 3}) {
        const auto pot = double_well(n, n == 2 ? 10.0 : 100.0);
        const double dt = n == 2 ? 0.1 : 0.4;
        EXPECT_LT(testutil::max_abs_diff(exact_propagator(n, pot, dt, 0.5), oracle::exact_propagator(n, pot.values, dt)),
                  1e-10);
    }
    EXPECT_THROW(exact_propagator(3, double_well(2, 1.0), 0.1, 0.5), ShapeError);
}

TEST(exact_propagator, zero_potential_is_kinetic_propagator) {
    for (int n = 1; n <= 6; ++n) {
        const Matrix f = qft_matrix(n);
        const Matrix k = f.adjoint() * diagonal_matrix(kinetic_diag(n, 0.4, 0.5).phases) * f;
        EXPECT_LT(testutil::max_abs_diff(exact_propagator(n, free_potential(n), 0.4, 0.5), k), 1e-10);
    }
}

TEST(energy, conserved_by_exact_evolution) {
    for (int n : {2, 3}) {
        const auto pot = double_well(n, n == 2 ? 10.0 : 100.0);
        const Matrix h = hamiltonian(pot, 0.5);
        const auto res = evolve(basis_state(n, n == 2 ? "01" : "110"), pot,
                                config(n == 2 ? 0.1 : 0.4, 20, EvolutionMode::Exact), true);
        const double e0 = energy(res.states.front(), h);
        for (const auto &s : res.states) EXPECT_NEAR(energy(s, h), e0, 1e-9 * std::max(1.0, std::abs(e0)));
    }
}

TEST(reverse_trotter_step, undoes_forward_steps) {
    std::mt19937_64 rng(13);
    for (Splitting sp : {Splitting::FirstOrder, Splitting::Strang}) {
        for (int n : {2, 3}) {
            const auto pot = double_well(n, n == 2 ? 10.0 : 100.0);
            auto cfg = config(n == 2 ? 0.1 : 0.4, 1);
            cfg.splitting = sp;
            const auto s0 = testutil::random_state(n, rng);
            auto s = s0;
            for (int t = 0; t < 9; ++t) s = trotter_step(s, pot, cfg);
            for (int t = 0; t < 9; ++t) s = reverse_trotter_step(s, pot, cfg);
            EXPECT_LT(vmax_diff(s.amplitudes(), s0.amplitudes()), 1e-10);
        }
    }
}

TEST(trotter_vs_exact, single_halving_improves_overlap) {
    struct Case {
        int n;
        const char *label;
        double v0, dt;
        int steps;
    };
    for (const Case c : {Case{2, "01", 10.0, 0.1, 9}, Case{3, "110", 100.0, 0.4, 5}}) {
        const auto pot = double_well(c.n, c.v0);
        const auto init = basis_state(c.n, c.label);
        const double coarse = trotter_vs_exact_report(pot, config(c.dt, c.steps), init).final_overlap();
        const double fine = trotter_vs_exact_report(pot, config(c.dt / 2, c.steps * 2), init).final_overlap();
        EXPECT_GT(fine, coarse) << "n=" << c.n;
    }
    const auto pot2 = double_well(2, 10.0);
    EXPECT_NEAR(trotter_vs_exact_report(pot2, config(0.1, 9), basis_state(2, "01")).final_overlap(), 0.9429, 1e-3);
    EXPECT_NEAR(trotter_vs_exact_report(pot2, config(0.05, 18), basis_state(2, "01")).final_overlap(), 0.9898, 1e-3);
}

TEST(trotter_vs_exact, repeated_halving_is_not_monotone_at_three_qubits) {
    // V0 dt is large here (40 at the preset step), so a single halving helps but
    // the sequence of overlaps is only monotone asymptotically.
    const auto pot = double_well(3, 100.0);
    const auto init = basis_state(3, "110");
    std::vector<double> lib, ref;
    for (int k = 0; k < 4; ++k) {
        const double dt = 0.4 / double(1 << k);
        const int steps = 5 << k;
        lib.push_back(trotter_vs_exact_report(pot, config(dt, steps), init).final_overlap());
        const Matrix ut = oracle::trotter_step(3, pot.values, dt);
        const Matrix ue = oracle::exact_propagator(3, pot.values, dt);
        Vector a = oracle::basis(3, 6), b = a;
        for (int t = 0; t < steps; ++t) {
            a = ut * a;
            b = ue * b;
        }
        ref.push_back(std::norm(b.dot(a)));
    }
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(lib[k], ref[k], 1e-9);
    EXPECT_GT(lib[1], lib[0]);
    EXPECT_LT(lib[2], lib[1]);
    EXPECT_GT(lib[3], lib[2]);
}

TEST(trotter_vs_exact, zero_potential_has_unit_overlap) {
    for (int n : {2, 3, 5}) {
        std::mt19937_64 rng(n);
        const auto rep = trotter_vs_exact_report(free_potential(n), config(0.3, 10), testutil::random_state(n, rng));
        for (double o : rep.overlaps) EXPECT_NEAR(o, 1.0, 1e-10);
    }
}

TEST(parse_mode, names) {
    EXPECT_EQ(parse_mode("trotter"), EvolutionMode::Trotter);
    EXPECT_EQ(parse_mode("exact"), EvolutionMode::Exact);
    EXPECT_EQ(parse_mode("free"), EvolutionMode::Free);
    EXPECT_THROW(parse_mode("magic"), ParseError);
    EXPECT_EQ(to_string(EvolutionMode::Exact), "exact");
}
