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

#include "qtunnel/nmrpulse.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qtunnel/errors.hpp"
#include "qtunnel/potential.hpp"
#include "qtunnel/spectral.hpp"
#include "test_util.hpp"

using namespace qtunnel;
using namespace qtunnel::nmr;

namespace {

// exp(-i a P) for a Pauli string P (P^2 = I).
Matrix pauli_exp(double a, const std::vector<int> &ops) {
    const Matrix p = oracle::pauli_string(ops);
    const Matrix id = Matrix::Identity(p.rows(), p.cols());
    return std::cos(a) * id - cplx{0, std::sin(a)} * p;
}

Matrix q_target(double v0, double dt) {
    return circuit_unitary(Circuit(2, {potential_propagator(double_well(2, v0), dt)}));
}

Matrix d_target(double dt) { return diagonal_matrix(kinetic_diag(2, dt, 0.5).phases); }

}  // namespace

TEST(nmr_hamiltonian, coupling_and_offset_terms) {
    SpinSystem sys = make_spin_system(2);
    sys.j(0, 1) = sys.j(1, 0) = 215.15;
    const Matrix h = nmr_hamiltonian(sys);
    const double a = kPi * 215.15 / 2;
    const std::vector<double> expect{a, -a, -a, a};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(h(k, k).real(), expect[k], 1e-9);
    EXPECT_LT(testutil::max_abs_diff(h, Matrix(h.diagonal().asDiagonal())), 1e-15);

    SpinSystem one = make_spin_system(1);
    one.nu[0] = 100;
    const Matrix h1 = nmr_hamiltonian(one);
    EXPECT_NEAR(h1(0, 0).real(), -100 * kPi, 1e-9);
    EXPECT_NEAR(h1(1, 1).real(), 100 * kPi, 1e-9);
}

TEST(simulate_sequence, single_pulses) {
    const SpinSystem sys = make_spin_system(1);
    PulseSequence y;
    y.pulse(0, Axis::Y, kPi / 2);
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, y), pauli_exp(kPi / 4, {2})), 1e-14);
    PulseSequence mx;
    mx.pulse(0, Axis::MinusX, 0.7);
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, mx), pauli_exp(-0.35, {1})), 1e-14);
    PulseSequence my;
    my.pulse(0, Axis::MinusY, 1.1);
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, my), pauli_exp(-0.55, {2})), 1e-14);
}

TEST(simulate_sequence, pulses_act_on_the_named_spin) {
    const SpinSystem sys = make_spin_system(2);
    PulseSequence s;
    s.pulse(1, Axis::X, 0.4).pulse(0, Axis::Y, 0.9);
    // Later events multiply on the left.
    const Matrix expect = pauli_exp(0.45, {2, 0}) * pauli_exp(0.2, {0, 1});
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, s), expect), 1e-14);
}

TEST(simulate_sequence, t1_delay_is_a_sixteenth_turn_of_zz) {
    const SpinSystem sys = chloroform();
    PulseSequence s;
    s.delay(timing_constants(sys.j(0, 1)).t1);
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, s), pauli_exp(kPi / 16, {3, 3})), 1e-12);
}

TEST(simulate_sequence, empty_and_composed_delays) {
    SpinSystem sys = make_spin_system(2);
    sys.nu = {120.0, -35.0};
    sys.j(0, 1) = sys.j(1, 0) = 50.0;
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, PulseSequence{}), Matrix::Identity(4, 4)), 0.0 + 1e-300);
    PulseSequence two, one;
    two.delay(1e-3).delay(2.5e-3);
    one.delay(3.5e-3);
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, two), simulate_sequence(sys, one)), 1e-12);
    const Matrix full = simulate_sequence(sys, one);
    Matrix expect = Matrix::Zero(4, 4);
    const Matrix h = nmr_hamiltonian(sys);
    for (int k = 0; k < 4; ++k) expect(k, k) = std::polar(1.0, -h(k, k).real() * 3.5e-3);
    EXPECT_LT(testutil::max_abs_diff(full, expect), 1e-12);
}

TEST(simulate_sequence, delay_active_terms) {
    SpinSystem sys = make_spin_system(2);
    sys.nu = {120.0, -35.0};
    sys.j(0, 1) = sys.j(1, 0) = 50.0;
    PulseSequence none;
    none.delay(1e-3, std::vector<std::pair<int, int>>{});
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, none), Matrix::Identity(4, 4)), 1e-15);
    PulseSequence jonly;
    jonly.delay(1e-3, std::vector<std::pair<int, int>>{{0, 1}});
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, jonly), pauli_exp(kPi / 2 * 50 * 1e-3, {3, 3})), 1e-12);
    PulseSequence offs;
    offs.delay(1e-3, std::vector<std::pair<int, int>>{}, true);
    const Matrix expect = pauli_exp(-kPi * 120 * 1e-3, {3, 0}) * pauli_exp(kPi * 35 * 1e-3, {0, 3});
    EXPECT_LT(testutil::max_abs_diff(simulate_sequence(sys, offs), expect), 1e-12);
}

TEST(simulate_sequence, unitary_for_random_sequences) {
    SpinSystem sys = make_spin_system(3);
    sys.nu = {10.0, -20.0, 5.0};
    sys.j(0, 1) = sys.j(1, 0) = 30;
    sys.j(1, 2) = sys.j(2, 1) = 12;
    PulseSequence s;
    const Axis axes[] = {Axis::X, Axis::Y, Axis::MinusX, Axis::MinusY};
    for (int i = 0; i < 30; ++i) {
        s.pulse(i % 3, axes[i % 4], 0.3 * i).delay(1e-4 * (i % 5));
    }
    const Matrix u = simulate_sequence(sys, s);
    EXPECT_LT(testutil::max_abs_diff(u.adjoint() * u, Matrix::Identity(8, 8)), 1e-12);
}

TEST(simulate_sequence, invalid_events) {
    const SpinSystem sys = chloroform();
    PulseSequence far;
    far.pulse(2, Axis::X, 1.0);
    EXPECT_THROW(simulate_sequence(sys, far), IndexError);
    PulseSequence neg;
    neg.delay(-1.0);
    EXPECT_THROW(simulate_sequence(sys, neg), InvalidEventError);
    PulseSequence self;
    self.delay(1.0, std::vector<std::pair<int, int>>{{0, 0}});
    EXPECT_THROW(simulate_sequence(sys, self), InvalidEventError);
    EXPECT_THROW(verify_sequence(sys, PulseSequence{}, Matrix::Identity(8, 8), 1e-8), ShapeError);
}

TEST(timing, chloroform_constants) {
    const auto t = timing_constants(kChloroformJHz);
    EXPECT_NEAR(t.t1 * 1e6, 580.9, 0.1);
    EXPECT_NEAR(t.t2 * 1e6, 365.0, 0.2);
    // J recovered from the delays rounded to 0.1 us.
    EXPECT_LT(std::abs(1.0 / (8 * 580.9e-6) - 215.15) / 215.15, 1e-3);
    EXPECT_LT(std::abs(kPi / (40 * 365.0e-6) - 215.15) / 215.15, 1e-3);
    EXPECT_NEAR(timing_constants(125.0).t1, 1e-3, 1e-15);
    EXPECT_THROW(timing_constants(0.0), DomainError);
    EXPECT_THROW(timing_constants(-1.0), DomainError);
}

TEST(building_blocks, hadamard_z_and_zz) {
    const SpinSystem sys = chloroform();
    const SpinSystem one = make_spin_system(1);
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EXPECT_LT(global_phase_residual(simulate_sequence(one, hadamard_pulses(0)), h), 1e-12);
    for (double th : {0.3, -1.2, 2.0}) {
        EXPECT_LT(testutil::max_abs_diff(simulate_sequence(one, z_rotation_pulses(0, th)), pauli_exp(th / 2, {3})),
                  1e-12);
    }
    for (double phi : {kPi / 8, -0.4}) {
        EXPECT_LT(global_phase_residual(simulate_sequence(sys, zz_phase_pulses(sys, 0, 1, phi)),
                                        pauli_exp(-phi, {3, 3})),
                  1e-10);
    }
    EXPECT_THROW(zz_phase_pulses(diethyl_fluoromalonate(), 0, 1, 0.1), DomainError);
}

TEST(reference_sequences, realize_the_two_qubit_gates) {
    const SpinSystem sys = chloroform();
    EXPECT_TRUE(verify_sequence(sys, reference_sequence_F(sys), qft_matrix(2), 1e-8).ok);
    for (double dt : {0.1, 0.37}) {
        EXPECT_TRUE(verify_sequence(sys, reference_sequence_D(sys, dt), d_target(dt), 1e-8).ok) << dt;
    }
    EXPECT_LT(verify_sequence(sys, reference_sequence_Q(1.0), q_target(10.0, 0.1), 1e-10).residual, 1e-10);
    const auto wrong = verify_sequence(sys, reference_sequence_Q(1.0), Matrix::Identity(4, 4), 1e-8);
    EXPECT_FALSE(wrong.ok);
    EXPECT_GT(wrong.residual, 0.1);
}

TEST(pulse_files, shipped_sequences_verify) {
    const SpinSystem sys = load_spin_system(QTUNNEL_DATA_DIR "/pulses/chloroform.spin");
    EXPECT_EQ(sys.n_spins, 2);
    EXPECT_DOUBLE_EQ(sys.j(0, 1), 215.15);
    const auto vars = timing_variables(sys);
    const std::string dir = QTUNNEL_DATA_DIR "/pulses/";
    EXPECT_TRUE(verify_sequence(sys, load_pulse_sequence(dir + "f_2q.pulse", vars), qft_matrix(2), 1e-8).ok);
    EXPECT_TRUE(verify_sequence(sys, load_pulse_sequence(dir + "d_2q.pulse", vars), d_target(0.1), 1e-8).ok);
    EXPECT_TRUE(verify_sequence(sys, load_pulse_sequence(dir + "q_2q.pulse", vars), q_target(10.0, 0.1), 1e-10).ok);
    const SpinSystem dfm = load_spin_system(dir + "diethyl_fluoromalonate.spin");
    EXPECT_EQ(dfm.n_spins, 3);
}

TEST(pulse_files, parsing) {
    const auto seq = parse_pulse_sequence("# c\nP 1 +x pi/2\nP 2 -y 2*t\nD t 1-2,offsets\nD 0.5 none\nD 1 all\n",
                                          {{"t", 0.25}});
    ASSERT_EQ(seq.events.size(), 5u);
    const auto &p0 = std::get<Pulse>(seq.events[0]);
    EXPECT_EQ(p0.spin, 0);
    EXPECT_EQ(p0.axis, Axis::X);
    EXPECT_DOUBLE_EQ(p0.angle, kPi / 2);
    const auto &p1 = std::get<Pulse>(seq.events[1]);
    EXPECT_EQ(p1.axis, Axis::MinusY);
    EXPECT_DOUBLE_EQ(p1.angle, 0.5);
    const auto &d0 = std::get<Delay>(seq.events[2]);
    ASSERT_TRUE(d0.couplings.has_value());
    EXPECT_EQ(d0.couplings->size(), 1u);
    EXPECT_TRUE(d0.offsets);
    EXPECT_TRUE(std::get<Delay>(seq.events[3]).couplings->empty());
    EXPECT_FALSE(std::get<Delay>(seq.events[4]).couplings.has_value());

    EXPECT_THROW(parse_pulse_sequence("P 1 z pi\n"), InvalidEventError);
    EXPECT_THROW(parse_pulse_sequence("Q 1\n"), InvalidEventError);
    EXPECT_THROW(parse_pulse_sequence("P 1 x\n"), InvalidEventError);
    EXPECT_THROW(parse_pulse_sequence("D -1\n"), InvalidEventError);
    EXPECT_THROW(parse_pulse_sequence("P 1 x undefined_var\n"), ParseError);
    EXPECT_THROW(parse_pulse_sequence("P 0 x pi\n"), ParseError);
    EXPECT_THROW(load_pulse_sequence("/nonexistent.pulse"), IoError);
}

TEST(spin_files, parsing_and_validation) {
    const auto sys = parse_spin_system("spins 3\nnu 2 12.5\nJ 1 3 7\n");
    EXPECT_EQ(sys.n_spins, 3);
    EXPECT_DOUBLE_EQ(sys.nu[1], 12.5);
    EXPECT_DOUBLE_EQ(sys.j(2, 0), 7.0);
    EXPECT_THROW(parse_spin_system("spins 2\nJ 1 1 3\n"), ParseError);
    EXPECT_THROW(parse_spin_system("spins 2\nJ 1 3 3\n"), IndexError);
    EXPECT_THROW(parse_spin_system("spins 9\n"), InvalidSizeError);
    EXPECT_THROW(parse_spin_system("spins 2\nfoo 1\n"), ParseError);
    SpinSystem bad = make_spin_system(2);
    bad.j(0, 1) = 3;
    EXPECT_THROW(bad.validate(), DomainError);
}
