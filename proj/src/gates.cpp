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

#include "qtunnel/gates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qtunnel/errors.hpp"
#include "qtunnel/expr.hpp"

namespace qtunnel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

cplx expi(double angle) { return std::polar(1.0, angle); }

void check_qubit(int qubit, int n_qubits) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n_qubits) +
                         "-qubit register");
    }
}

void check_distinct(const std::vector<int> &qs) {
    std::vector<int> sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw IndexError("gate targets repeat a qubit");
    }
}

void validate(const GateSpec &gate, int n_qubits) {
    auto targets = gate_targets(gate);
    for (int q : targets) {
        check_qubit(q, n_qubits);
    }
    check_distinct(targets);
    if (const auto *d = std::get_if<DiagonalPhase>(&gate)) {
        if (d->phases.size() != dim_of(static_cast<int>(d->qubits.size()))) {
            throw ShapeError("DIAG gate needs 2^m phases for m qubits");
        }
    }
}

std::size_t mask_of(int n_qubits, int qubit) { return std::size_t{1} << bit_shift(n_qubits, qubit); }

void apply_hadamard(Vector &amps, int n_qubits, int qubit) {
    const std::size_t stride = mask_of(n_qubits, qubit);
    const std::size_t dim = static_cast<std::size_t>(amps.size());
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
            const auto lo = static_cast<Eigen::Index>(i);
            const auto hi = static_cast<Eigen::Index>(i + stride);
            const cplx a = amps[lo];
            const cplx b = amps[hi];
            amps[lo] = r * (a + b);
            amps[hi] = r * (a - b);
        }
    }
}

template <class PhaseOf>
void apply_diagonal(Vector &amps, PhaseOf &&phase_of) {
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps[i] *= phase_of(static_cast<std::size_t>(i));
    }
}

int parse_qubit(const std::string &tok) {
    std::string digits = tok;
    if (!digits.empty() && (digits[0] == 'q' || digits[0] == 'Q')) {
        digits.erase(0, 1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        throw ParseError("bad qubit '" + tok + "'");
    }
    int q = std::stoi(digits);
    if (q < 1) {
        throw ParseError("qubits are numbered from 1, got '" + tok + "'");
    }
    return q - 1;
}

std::string fmt_angle(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

std::vector<int> gate_targets(const GateSpec &gate) {
    return std::visit(overloaded{
                          [](const Hadamard &g) { return std::vector<int>{g.qubit}; },
                          [](const ControlledPhase &g) { return std::vector<int>{g.a, g.b}; },
                          [](const ZPhase &g) { return std::vector<int>{g.qubit}; },
                          [](const ZZPhase &g) { return std::vector<int>{g.a, g.b}; },
                          [](const DiagonalPhase &g) { return g.qubits; },
                      },
                      gate);
}

bool is_diagonal(const GateSpec &gate) { return !std::holds_alternative<Hadamard>(gate); }

GateSpec inverse(const GateSpec &gate) {
    return std::visit(overloaded{
                          [](const Hadamard &g) -> GateSpec { return g; },
                          [](const ControlledPhase &g) -> GateSpec { return ControlledPhase{-g.angle, g.a, g.b}; },
                          [](const ZPhase &g) -> GateSpec { return ZPhase{-g.angle, g.qubit}; },
                          [](const ZZPhase &g) -> GateSpec { return ZZPhase{-g.angle, g.a, g.b}; },
                          [](const DiagonalPhase &g) -> GateSpec {
                              DiagonalPhase inv = g;
                              for (double &p : inv.phases) {
                                  p = -p;
                              }
                              return inv;
                          },
                      },
                      gate);
}

Matrix local_matrix(const GateSpec &gate) {
    const int m = static_cast<int>(gate_targets(gate).size());
    const auto d = static_cast<Eigen::Index>(dim_of(m));
    Matrix u = Matrix::Identity(d, d);
    // Targets relabelled 0..m-1 in listed order.
    std::vector<int> local(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        local[static_cast<std::size_t>(i)] = i;
    }
    GateSpec relabelled = std::visit(
        overloaded{
            [](const Hadamard &) -> GateSpec { return Hadamard{0}; },
            [](const ControlledPhase &g) -> GateSpec { return ControlledPhase{g.angle, 0, 1}; },
            [](const ZPhase &g) -> GateSpec { return ZPhase{g.angle, 0}; },
            [](const ZZPhase &g) -> GateSpec { return ZZPhase{g.angle, 0, 1}; },
            [&](const DiagonalPhase &g) -> GateSpec { return DiagonalPhase{g.phases, local}; },
        },
        gate);
    for (Eigen::Index c = 0; c < d; ++c) {
        Vector col = u.col(c);
        apply_gate_inplace(col, m, relabelled);
        u.col(c) = col;
    }
    return u;
}

Circuit::Circuit(int n_qubits, std::vector<GateSpec> gates) : n_qubits_(n_qubits), gates_(std::move(gates)) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw InvalidSizeError("circuit register size out of range");
    }
    for (const auto &g : gates_) {
        validate(g, n_qubits_);
    }
}

Circuit &Circuit::append(GateSpec gate) {
    validate(gate, n_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_qubits() != n_qubits_) {
        throw ShapeError("appending circuit of a different register size");
    }
    gates_.insert(gates_.end(), other.gates().begin(), other.gates().end());
    return *this;
}

Circuit Circuit::inverse() const {
    std::vector<GateSpec> inv;
    inv.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        inv.push_back(qtunnel::inverse(*it));
    }
    return Circuit(n_qubits_, std::move(inv));
}

void apply_gate_inplace(Vector &amps, int n_qubits, const GateSpec &gate) {
    if (static_cast<std::size_t>(amps.size()) != dim_of(n_qubits)) {
        throw ShapeError("amplitude count does not match register size");
    }
    validate(gate, n_qubits);
    std::visit(overloaded{
                   [&](const Hadamard &g) { apply_hadamard(amps, n_qubits, g.qubit); },
                   [&](const ControlledPhase &g) {
                       const std::size_t both = mask_of(n_qubits, g.a) | mask_of(n_qubits, g.b);
                       const cplx ph = expi(g.angle);
                       apply_diagonal(amps, [&](std::size_t i) { return (i & both) == both ? ph : cplx{1.0}; });
                   },
                   [&](const ZPhase &g) {
                       const std::size_t m = mask_of(n_qubits, g.qubit);
                       const cplx p0 = expi(g.angle);
                       const cplx p1 = std::conj(p0);
                       apply_diagonal(amps, [&](std::size_t i) { return (i & m) ? p1 : p0; });
                   },
                   [&](const ZZPhase &g) {
                       const std::size_t both = mask_of(n_qubits, g.a) | mask_of(n_qubits, g.b);
                       const cplx p = expi(g.angle);
                       const cplx pm = std::conj(p);
                       apply_diagonal(amps, [&](std::size_t i) { return (i & both) == both ? pm : p; });
                   },
                   [&](const DiagonalPhase &g) {
                       std::vector<cplx> table(g.phases.size());
                       for (std::size_t s = 0; s < table.size(); ++s) {
                           table[s] = expi(g.phases[s]);
                       }
                       std::vector<std::size_t> masks;
                       for (int q : g.qubits) {
                           masks.push_back(mask_of(n_qubits, q));
                       }
                       apply_diagonal(amps, [&](std::size_t i) {
                           std::size_t s = 0;
                           for (std::size_t m : masks) {
                               s = (s << 1) | ((i & m) ? 1U : 0U);
                           }
                           return table[s];
                       });
                   },
               },
               gate);
}

void apply_circuit_inplace(Vector &amps, int n_qubits, const Circuit &circuit) {
    if (circuit.n_qubits() != n_qubits) {
        throw ShapeError("circuit and state register sizes differ");
    }
    for (const auto &g : circuit.gates()) {
        apply_gate_inplace(amps, n_qubits, g);
    }
}

StateVector apply_gate(const StateVector &state, const GateSpec &gate) {
    Vector amps = state.amplitudes();
    apply_gate_inplace(amps, state.n_qubits(), gate);
    return StateVector(state.n_qubits(), std::move(amps), StateVector::Unchecked{});
}

StateVector apply_circuit(const StateVector &state, const Circuit &circuit) {
    Vector amps = state.amplitudes();
    apply_circuit_inplace(amps, state.n_qubits(), circuit);
    return StateVector(state.n_qubits(), std::move(amps), StateVector::Unchecked{});
}

Matrix circuit_unitary(const Circuit &circuit) {
    const int n = circuit.n_qubits();
    if (n > kMaxDenseQubits) {
        throw CapacityError("dense export is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    Matrix u = Matrix::Identity(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        Vector col = u.col(c);
        apply_circuit_inplace(col, n, circuit);
        u.col(c) = col;
    }
    return u;
}

double global_phase_residual(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("matrices have different dimensions");
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    const double bmax = b.cwiseAbs().maxCoeff(&r, &c);
    if (bmax == 0.0 || a.cwiseAbs().maxCoeff() == 0.0) {
        throw DomainError("global phase comparison of a zero matrix");
    }
    cplx ratio = a(r, c) / b(r, c);
    const double mag = std::abs(ratio);
    const cplx phase = mag > 0.0 ? ratio / mag : cplx{1.0};
    return (a - phase * b).cwiseAbs().maxCoeff();
}

bool unitaries_equal_up_to_global_phase(const Matrix &a, const Matrix &b, double tol) {
    return global_phase_residual(a, b) <= tol;
}

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<GateSpec> gates;
    int declared = 0;
    int max_qubit = -1;
    int line_no = 0;
    auto fail = [&](const std::string &what) -> void {
        throw ParseError("circuit line " + std::to_string(line_no) + ": " + what);
    };
    auto use = [&](int q) {
        max_qubit = std::max(max_qubit, q);
        return q;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const std::string &op = tok[0];
        try {
            if (op == "QUBITS") {
                if (tok.size() != 2) fail("QUBITS takes one count");
                declared = std::stoi(tok[1]);
            } else if (op == "H") {
                if (tok.size() != 2) fail("H takes one qubit");
                gates.emplace_back(Hadamard{use(parse_qubit(tok[1]))});
            } else if (op == "CP" || op == "ZZ") {
                if (tok.size() != 4) fail(op + " takes an angle and two qubits");
                const double angle = eval_expression(tok[1]);
                const int a = use(parse_qubit(tok[2]));
                const int b = use(parse_qubit(tok[3]));
                if (op == "CP") {
                    gates.emplace_back(ControlledPhase{angle, a, b});
                } else {
                    gates.emplace_back(ZZPhase{angle, a, b});
                }
            } else if (op == "ZP") {
                if (tok.size() != 3) fail("ZP takes an angle and one qubit");
                gates.emplace_back(ZPhase{eval_expression(tok[1]), use(parse_qubit(tok[2]))});
            } else if (op == "DIAG") {
                const std::size_t args = tok.size() - 1;
                int m = 0;
                while (dim_of(m) + static_cast<std::size_t>(m) < args) {
                    ++m;
                }
                if (m == 0 || dim_of(m) + static_cast<std::size_t>(m) != args) {
                    fail("DIAG needs 2^m phases followed by m qubits");
                }
                DiagonalPhase g;
                for (std::size_t i = 0; i < dim_of(m); ++i) {
                    g.phases.push_back(eval_expression(tok[1 + i]));
                }
                for (int i = 0; i < m; ++i) {
                    g.qubits.push_back(use(parse_qubit(tok[1 + dim_of(m) + static_cast<std::size_t>(i)])));
                }
                gates.emplace_back(std::move(g));
            } else {
                fail("unknown gate '" + op + "'");
            }
        } catch (const ParseError &e) {
            if (std::string(e.what()).rfind("circuit line", 0) == 0) throw;
            fail(e.what());
        } catch (const std::logic_error &e) {
            fail(e.what());
        }
    }
    const int n = declared > 0 ? declared : max_qubit + 1;
    if (n < 1) {
        throw ParseError("circuit has no gates and no QUBITS line");
    }
    return Circuit(n, std::move(gates));
}

Circuit load_circuit(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read circuit file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_circuit(ss.str());
}

std::string format_circuit(const Circuit &circuit) {
    std::ostringstream os;
    os << "QUBITS " << circuit.n_qubits() << "\n";
    for (const auto &gate : circuit.gates()) {
        std::visit(overloaded{
                       [&](const Hadamard &g) { os << "H " << g.qubit + 1; },
                       [&](const ControlledPhase &g) {
                           os << "CP " << fmt_angle(g.angle) << ' ' << g.a + 1 << ' ' << g.b + 1;
                       },
                       [&](const ZPhase &g) { os << "ZP " << fmt_angle(g.angle) << ' ' << g.qubit + 1; },
                       [&](const ZZPhase &g) {
                           os << "ZZ " << fmt_angle(g.angle) << ' ' << g.a + 1 << ' ' << g.b + 1;
                       },
                       [&](const DiagonalPhase &g) {
                           os << "DIAG";
                           for (double p : g.phases) os << ' ' << fmt_angle(p);
                           for (int q : g.qubits) os << ' ' << q + 1;
                       },
                   },
                   gate);
        os << "\n";
    }
    return os.str();
}

}  // namespace qtunnel
