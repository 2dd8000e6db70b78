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
#include <fstream>
#include <sstream>

#include "qtunnel/errors.hpp"
#include "qtunnel/expr.hpp"

namespace qtunnel::nmr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_spin(const SpinSystem &sys, int spin) {
    if (spin < 0 || spin >= sys.n_spins) {
        throw IndexError("spin " + std::to_string(spin + 1) + " out of range");
    }
}

int z_of(std::size_t k, int n, int spin) { return bit_of(k, n, spin) ? -1 : 1; }

Eigen::VectorXd delay_energies(const SpinSystem &sys, const Delay &d) {
    const int n = sys.n_spins;
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    const bool all = !d.couplings.has_value();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        double h = 0.0;
        if (all || d.offsets) {
            for (int i = 0; i < n; ++i) {
                h -= kPi * sys.nu[static_cast<std::size_t>(i)] * z_of(kk, n, i);
            }
        }
        if (all) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    h += 0.5 * kPi * sys.j(i, j) * z_of(kk, n, i) * z_of(kk, n, j);
                }
            }
        } else {
            for (auto [i, j] : *d.couplings) {
                h += 0.5 * kPi * sys.j(i, j) * z_of(kk, n, i) * z_of(kk, n, j);
            }
        }
        e[k] = h;
    }
    return e;
}

Eigen::Matrix2cd pulse_matrix(const Pulse &p) {
    const double c = std::cos(p.angle / 2.0);
    const double s = std::sin(p.angle / 2.0);
    const cplx mi{0.0, -1.0};
    Eigen::Matrix2cd m;
    switch (p.axis) {
        case Axis::X:
        case Axis::MinusX: {
            const double sg = p.axis == Axis::X ? 1.0 : -1.0;
            m << c, mi * s * sg, mi * s * sg, c;
            break;
        }
        case Axis::Y:
        case Axis::MinusY: {
            const double sg = p.axis == Axis::Y ? 1.0 : -1.0;
            m << c, -s * sg, s * sg, c;
            break;
        }
    }
    return m;
}

void apply_single_spin(Matrix &u, int n, int spin, const Eigen::Matrix2cd &m) {
    const std::size_t stride = std::size_t{1} << bit_shift(n, spin);
    const std::size_t dim = dim_of(n);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
            const auto lo = static_cast<Eigen::Index>(i);
            const auto hi = static_cast<Eigen::Index>(i + stride);
            const Eigen::RowVectorXcd a = u.row(lo);
            const Eigen::RowVectorXcd b = u.row(hi);
            u.row(lo) = m(0, 0) * a + m(0, 1) * b;
            u.row(hi) = m(1, 0) * a + m(1, 1) * b;
        }
    }
}

Axis parse_axis(const std::string &tok) {
    if (tok == "x" || tok == "+x") return Axis::X;
    if (tok == "y" || tok == "+y") return Axis::Y;
    if (tok == "-x") return Axis::MinusX;
    if (tok == "-y") return Axis::MinusY;
    throw InvalidEventError("unknown pulse axis '" + tok + "'");
}

int parse_spin_index(const std::string &tok) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::logic_error &) {
        throw ParseError("bad spin index '" + tok + "'");
    }
    if (used != tok.size() || v < 1) {
        throw ParseError("bad spin index '" + tok + "'");
    }
    return v - 1;
}

std::string read_file(const std::string &path, const char *what) {
    std::ifstream f(path);
    if (!f) {
        throw IoError(std::string("cannot read ") + what + " file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        lines.push_back(std::move(tok));
    }
    return lines;
}

}  // namespace

void SpinSystem::validate() const {
    if (n_spins < 1 || n_spins > kMaxSpins) {
        throw InvalidSizeError("spin systems hold 1 to " + std::to_string(kMaxSpins) + " spins");
    }
    if (nu.size() != static_cast<std::size_t>(n_spins) || j.rows() != n_spins || j.cols() != n_spins) {
        throw ShapeError("spin system arrays do not match n_spins");
    }
    for (double v : nu) {
        if (!std::isfinite(v)) throw DomainError("chemical shifts must be finite");
    }
    for (int a = 0; a < n_spins; ++a) {
        if (j(a, a) != 0.0) throw DomainError("J diagonal must be zero");
        for (int b = 0; b < n_spins; ++b) {
            if (!std::isfinite(j(a, b))) throw DomainError("J couplings must be finite");
            if (j(a, b) != j(b, a)) throw DomainError("J matrix must be symmetric");
        }
    }
}

SpinSystem make_spin_system(int n_spins) {
    SpinSystem sys{n_spins, std::vector<double>(static_cast<std::size_t>(std::max(n_spins, 0)), 0.0),
                   Eigen::MatrixXd::Zero(std::max(n_spins, 0), std::max(n_spins, 0))};
    sys.validate();
    return sys;
}

SpinSystem chloroform() {
    SpinSystem sys = make_spin_system(2);
    sys.j(0, 1) = sys.j(1, 0) = kChloroformJHz;
    return sys;
}

SpinSystem diethyl_fluoromalonate() { return make_spin_system(3); }

SpinSystem parse_spin_system(std::string_view text) {
    struct Entry {
        bool is_j;
        int a;
        int b;
        double hz;
    };
    std::vector<Entry> entries;
    int declared = 0;
    int max_spin = -1;
    for (const auto &tok : tokenize_lines(text)) {
        if (tok.empty()) continue;
        if (tok[0] == "spins" && tok.size() == 2) {
            declared = parse_spin_index(tok[1]) + 1;
        } else if (tok[0] == "nu" && tok.size() == 3) {
            const int a = parse_spin_index(tok[1]);
            entries.push_back({false, a, a, eval_expression(tok[2])});
            max_spin = std::max(max_spin, a);
        } else if (tok[0] == "J" && tok.size() == 4) {
            const int a = parse_spin_index(tok[1]);
            const int b = parse_spin_index(tok[2]);
            if (a == b) throw ParseError("J line couples a spin to itself");
            entries.push_back({true, a, b, eval_expression(tok[3])});
            max_spin = std::max({max_spin, a, b});
        } else {
            throw ParseError("unrecognized spin-system line starting with '" + tok[0] + "'");
        }
    }
    const int n = declared > 0 ? declared : max_spin + 1;
    if (max_spin >= n) {
        throw IndexError("spin index exceeds declared spin count");
    }
    SpinSystem sys = make_spin_system(n);
    for (const auto &e : entries) {
        if (e.is_j) {
            sys.j(e.a, e.b) = sys.j(e.b, e.a) = e.hz;
        } else {
            sys.nu[static_cast<std::size_t>(e.a)] = e.hz;
        }
    }
    sys.validate();
    return sys;
}

SpinSystem load_spin_system(const std::string &path) { return parse_spin_system(read_file(path, "spin-system")); }

PulseSequence &PulseSequence::pulse(int spin, Axis axis, double angle) {
    events.emplace_back(Pulse{spin, axis, angle});
    return *this;
}

PulseSequence &PulseSequence::delay(double duration, std::optional<std::vector<std::pair<int, int>>> couplings,
                                    bool offsets) {
    events.emplace_back(Delay{duration, std::move(couplings), offsets});
    return *this;
}

PulseSequence &PulseSequence::append(const PulseSequence &other) {
    events.insert(events.end(), other.events.begin(), other.events.end());
    return *this;
}

Matrix nmr_hamiltonian(const SpinSystem &sys) {
    sys.validate();
    const Eigen::VectorXd e = delay_energies(sys, Delay{0.0, std::nullopt, true});
    return e.cast<cplx>().asDiagonal();
}

Matrix simulate_sequence(const SpinSystem &sys, const PulseSequence &seq) {
    sys.validate();
    const int n = sys.n_spins;
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &ev : seq.events) {
        std::visit(overloaded{
                       [&](const Pulse &p) {
                           check_spin(sys, p.spin);
                           if (!std::isfinite(p.angle)) throw InvalidEventError("pulse angle must be finite");
                           apply_single_spin(u, n, p.spin, pulse_matrix(p));
                       },
                       [&](const Delay &d) {
                           if (!(d.duration >= 0.0) || !std::isfinite(d.duration)) {
                               throw InvalidEventError("delay duration must be finite and non-negative");
                           }
                           if (d.couplings) {
                               for (auto [a, b] : *d.couplings) {
                                   check_spin(sys, a);
                                   check_spin(sys, b);
                                   if (a == b) throw InvalidEventError("coupling of a spin with itself");
                               }
                           }
                           const Eigen::VectorXd e = delay_energies(sys, d);
                           for (Eigen::Index k = 0; k < dim; ++k) {
                               u.row(k) *= std::polar(1.0, -e[k] * d.duration);
                           }
                       },
                   },
                   ev);
    }
    return u;
}

SequenceCheck verify_sequence(const SpinSystem &sys, const PulseSequence &seq, const Matrix &target, double tol) {
    const Matrix u = simulate_sequence(sys, seq);
    if (u.rows() != target.rows() || u.cols() != target.cols()) {
        throw ShapeError("target dimensions do not match the spin system");
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    target.cwiseAbs().maxCoeff(&r, &c);
    const cplx ratio = u(r, c) / target(r, c);
    const cplx phase = std::abs(ratio) > 0.0 ? ratio / std::abs(ratio) : cplx{1.0};
    const double residual = (u - phase * target).cwiseAbs().maxCoeff();
    return {residual <= tol, residual};
}

TimingConstants timing_constants(double j_hz) {
    if (!(j_hz > 0.0) || !std::isfinite(j_hz)) {
        throw DomainError("J must be positive");
    }
    return {1.0 / (8.0 * j_hz), kPi / (40.0 * j_hz)};
}

std::map<std::string, double> timing_variables(const SpinSystem &sys) {
    std::map<std::string, double> vars;
    if (sys.n_spins >= 2 && sys.j(0, 1) > 0.0) {
        const auto t = timing_constants(sys.j(0, 1));
        vars["t1"] = t.t1;
        vars["t2"] = t.t2;
        vars["J"] = sys.j(0, 1);
    }
    return vars;
}

PulseSequence parse_pulse_sequence(std::string_view text, const std::map<std::string, double> &variables) {
    PulseSequence seq;
    int line_no = 0;
    for (const auto &tok : tokenize_lines(text)) {
        ++line_no;
        if (tok.empty()) continue;
        const std::string where = "pulse line " + std::to_string(line_no) + ": ";
        if (tok[0] == "P") {
            if (tok.size() != 4) throw InvalidEventError(where + "P takes spin, axis and angle");
            seq.pulse(parse_spin_index(tok[1]), parse_axis(tok[2]), eval_expression(tok[3], variables));
        } else if (tok[0] == "D") {
            if (tok.size() < 2 || tok.size() > 3) throw InvalidEventError(where + "D takes a duration and couplings");
            const double duration = eval_expression(tok[1], variables);
            if (duration < 0.0) throw InvalidEventError(where + "negative delay");
            std::optional<std::vector<std::pair<int, int>>> couplings;
            bool offsets = false;
            if (tok.size() == 3 && tok[2] != "all") {
                couplings.emplace();
                if (tok[2] != "none") {
                    std::istringstream items(tok[2]);
                    for (std::string item; std::getline(items, item, ',');) {
                        if (item == "offsets") {
                            offsets = true;
                            continue;
                        }
                        const auto dash = item.find('-');
                        if (dash == std::string::npos) throw InvalidEventError(where + "bad coupling '" + item + "'");
                        couplings->emplace_back(parse_spin_index(item.substr(0, dash)),
                                                parse_spin_index(item.substr(dash + 1)));
                    }
                }
            }
            seq.delay(duration, std::move(couplings), offsets);
        } else {
            throw InvalidEventError(where + "unknown event '" + tok[0] + "'");
        }
    }
    return seq;
}

PulseSequence load_pulse_sequence(const std::string &path, const std::map<std::string, double> &variables) {
    return parse_pulse_sequence(read_file(path, "pulse-sequence"), variables);
}

PulseSequence hadamard_pulses(int spin) {
    PulseSequence s;
    s.pulse(spin, Axis::Y, kPi / 2.0).pulse(spin, Axis::X, kPi);
    return s;
}

PulseSequence z_rotation_pulses(int spin, double angle) {
    PulseSequence s;
    s.pulse(spin, Axis::MinusX, kPi / 2.0)
        .pulse(spin, angle >= 0.0 ? Axis::Y : Axis::MinusY, std::abs(angle))
        .pulse(spin, Axis::X, kPi / 2.0);
    return s;
}

PulseSequence zz_phase_pulses(const SpinSystem &sys, int a, int b, double phi) {
    check_spin(sys, a);
    check_spin(sys, b);
    const double j = sys.j(a, b);
    if (!(j > 0.0)) {
        throw DomainError("ZZ phase needs a positive coupling between the spins");
    }
    PulseSequence s;
    if (phi == 0.0) {
        return s;
    }
    // Free evolution gives exp(-i (pi/2) J T ZZ).
    const double duration = 2.0 * std::abs(phi) / (kPi * j);
    const std::vector<std::pair<int, int>> active{{a, b}};
    if (phi > 0.0) {
        s.pulse(a, Axis::X, kPi).delay(duration, active).pulse(a, Axis::MinusX, kPi);
    } else {
        s.delay(duration, active);
    }
    return s;
}

PulseSequence reference_sequence_F(const SpinSystem &sys) {
    // diag(1,1,1,i) = e^{i pi/8} exp(-i pi/8 Z1) exp(-i pi/8 Z2) exp(i pi/8 Z1 Z2)
    PulseSequence s = hadamard_pulses(0);
    s.append(z_rotation_pulses(0, kPi / 4.0));
    s.append(z_rotation_pulses(1, kPi / 4.0));
    s.append(zz_phase_pulses(sys, 0, 1, kPi / 8.0));
    s.append(hadamard_pulses(1));
    return s;
}

PulseSequence reference_sequence_D(const SpinSystem &sys, double dt) {
    const double pi2 = kPi * kPi;
    // Z1, Z2, then the local and coupled parts of Phi_pi.
    PulseSequence s = z_rotation_pulses(0, -pi2 * dt / 4.0);
    s.append(z_rotation_pulses(1, -pi2 * dt));
    s.append(z_rotation_pulses(0, pi2 * dt / 2.0));
    s.append(z_rotation_pulses(1, pi2 * dt / 2.0));
    s.append(zz_phase_pulses(sys, 0, 1, pi2 * dt / 4.0));
    return s;
}

PulseSequence reference_sequence_Q(double v0_dt) { return z_rotation_pulses(1, 2.0 * v0_dt); }

}  // namespace qtunnel::nmr
