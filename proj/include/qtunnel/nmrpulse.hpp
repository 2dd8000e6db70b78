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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qtunnel/common.hpp"

namespace qtunnel::nmr {

inline constexpr int kMaxSpins = 4;

/// J(1H-13C) of chloroform, recovered from t1 = 1/(8J) = 580.9 us.
inline constexpr double kChloroformJHz = 215.15;

/// Chemical shifts nu_i and scalar couplings J_ij in Hz. Spins are 0-based.
struct SpinSystem {
    int n_spins = 0;
    std::vector<double> nu;
    Eigen::MatrixXd j;

    /// Throws DomainError for asymmetric/non-finite couplings or a nonzero diagonal.
    void validate() const;
    double coupling(int a, int b) const { return j(a, b); }
};

SpinSystem make_spin_system(int n_spins);
/// 1H, 13C; on resonance.
SpinSystem chloroform();
/// 1H, 13C, 19F. Shifts and couplings are zero placeholders until supplied.
SpinSystem diethyl_fluoromalonate();

/// Lines "nu <i> <Hz>", "J <i> <j> <Hz>", optionally "spins <n>"; spins 1-based.
SpinSystem parse_spin_system(std::string_view text);
SpinSystem load_spin_system(const std::string &path);

enum class Axis { X, Y, MinusX, MinusY };

/// Ideal rotation exp(-i angle/2 sigma_axis) on one spin.
struct Pulse {
    int spin;
    Axis axis;
    double angle;
};

/// Free evolution. When `couplings` is empty-optional every coupling and every
/// offset evolves; otherwise only the listed couplings do, plus offsets when
/// `offsets` is set. Anything not listed is taken as refocused.
struct Delay {
    double duration;
    std::optional<std::vector<std::pair<int, int>>> couplings;
    bool offsets = false;
};

using Event = std::variant<Pulse, Delay>;

struct PulseSequence {
    std::vector<Event> events;

    PulseSequence &pulse(int spin, Axis axis, double angle);
    PulseSequence &delay(double duration, std::optional<std::vector<std::pair<int, int>>> couplings = std::nullopt,
                         bool offsets = false);
    PulseSequence &append(const PulseSequence &other);
};

/// -sum_i pi nu_i Z_i + sum_{i<j} (pi/2) J_ij Z_i Z_j.
Matrix nmr_hamiltonian(const SpinSystem &sys);

/// Events applied in order; later events multiply on the left.
Matrix simulate_sequence(const SpinSystem &sys, const PulseSequence &seq);

struct SequenceCheck {
    bool ok;
    double residual;
};

SequenceCheck verify_sequence(const SpinSystem &sys, const PulseSequence &seq, const Matrix &target, double tol);

struct TimingConstants {
    double t1;  // 1/(8J), seconds
    double t2;  // pi/(40J), seconds
};

/// Throws DomainError for J <= 0.
TimingConstants timing_constants(double j_hz);

/// "P <spin> <axis> <angle>" or "D <seconds> [i-j,...|all|none|offsets]".
/// Angles and durations are expressions; `variables` typically carries t1, t2.
PulseSequence parse_pulse_sequence(std::string_view text, const std::map<std::string, double> &variables = {});
PulseSequence load_pulse_sequence(const std::string &path, const std::map<std::string, double> &variables = {});

/// t1, t2 and J from the (0, 1) coupling when it is positive.
std::map<std::string, double> timing_variables(const SpinSystem &sys);

// Gate-level building blocks, ideal pulses only.

/// H up to phase: y(pi/2) then x(pi).
PulseSequence hadamard_pulses(int spin);
/// exp(-i angle/2 Z) as -x(pi/2), y(angle), x(pi/2); negative angles use -y.
PulseSequence z_rotation_pulses(int spin, double angle);
/// exp(i phi Z_a Z_b) from J evolution; phi > 0 is inverted by pi pulses on spin a.
PulseSequence zz_phase_pulses(const SpinSystem &sys, int a, int b, double phi);

/// Reconstructed 2-qubit sequences for F, D and Q on a two-spin system.
PulseSequence reference_sequence_F(const SpinSystem &sys);
PulseSequence reference_sequence_D(const SpinSystem &sys, double dt);
PulseSequence reference_sequence_Q(double v0_dt);

}  // namespace qtunnel::nmr
