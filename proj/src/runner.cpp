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

#include "qtunnel/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "qtunnel/corestate.hpp"
#include "qtunnel/errors.hpp"
#include "qtunnel/gates.hpp"
#include "qtunnel/nmrpulse.hpp"
#include "qtunnel/spectral.hpp"

namespace qtunnel {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(v);
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    double v = 0.0;
    const char *first = value.data();
    const char *last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw ConfigError(key, "expected a real number, got '" + value + "'");
    }
    return v;
}

long long parse_int(const std::string &key, const std::string &value) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
    return v;
}

std::string convention_name(MomentumConvention c) {
    return c == MomentumConvention::Standard ? "standard" : "mirrored";
}

std::string splitting_name(Splitting s) { return s == Splitting::FirstOrder ? "first_order" : "strang"; }

std::string potential_name(PotentialKind k) {
    switch (k) {
        case PotentialKind::DoubleWell:
            return "double_well";
        case PotentialKind::Free:
            return "free";
        case PotentialKind::File:
            return "file";
    }
    return "file";
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    f << content;
    if (!f) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace

std::vector<std::string> preset_names() { return {"doublewell-2q", "free-2q", "doublewell-3q"}; }

ExperimentConfig preset(const std::string &name) {
    ExperimentConfig cfg;
    cfg.name = name;
    if (name == "doublewell-2q") {
        cfg.n_qubits = 2;
        cfg.initial_label = "01";
        cfg.potential = PotentialKind::DoubleWell;
        cfg.v0 = 10.0;
        cfg.dt = 0.1;
        cfg.steps = 9;
        cfg.modes = {EvolutionMode::Trotter};
    } else if (name == "free-2q") {
        cfg.n_qubits = 2;
        cfg.initial_label = "01";
        cfg.potential = PotentialKind::Free;
        cfg.v0 = 0.0;
        cfg.dt = 0.1;
        cfg.steps = 9;
        cfg.modes = {EvolutionMode::Free};
    } else if (name == "doublewell-3q") {
        cfg.n_qubits = 3;
        cfg.initial_label = "110";
        cfg.potential = PotentialKind::DoubleWell;
        cfg.v0 = 100.0;
        cfg.dt = 0.4;
        cfg.steps = 5;
        cfg.modes = {EvolutionMode::Trotter, EvolutionMode::Exact};
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    return cfg;
}

void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "preset") {
        const std::string out = cfg.out_dir;
        const bool svg = cfg.write_svg;
        cfg = preset(value);
        cfg.out_dir = out;
        cfg.write_svg = svg;
    } else if (key == "name") {
        if (value.empty() || value.find_first_of("/\\") != std::string::npos) {
            throw ConfigError(key, "name must be a plain file stem");
        }
        cfg.name = value;
    } else if (key == "n_qubits") {
        cfg.n_qubits = static_cast<int>(parse_int(key, value));
    } else if (key == "initial") {
        cfg.initial_label = value;
    } else if (key == "potential") {
        if (value == "double_well") {
            cfg.potential = PotentialKind::DoubleWell;
        } else if (value == "free") {
            cfg.potential = PotentialKind::Free;
        } else if (value == "file") {
            cfg.potential = PotentialKind::File;
        } else {
            throw ConfigError(key, "expected double_well, free or file");
        }
    } else if (key == "v0") {
        cfg.v0 = parse_double(key, value);
    } else if (key == "potential_file") {
        cfg.potential_file = value;
        cfg.potential = PotentialKind::File;
    } else if (key == "dt") {
        cfg.dt = parse_double(key, value);
    } else if (key == "steps") {
        cfg.steps = static_cast<int>(parse_int(key, value));
    } else if (key == "mass") {
        cfg.mass = parse_double(key, value);
    } else if (key == "mode") {
        std::vector<EvolutionMode> modes;
        std::istringstream items(value);
        for (std::string item; std::getline(items, item, ',');) {
            try {
                modes.push_back(parse_mode(trim(item)));
            } catch (const ParseError &) {
                throw ConfigError(key, "expected trotter, exact or free, got '" + item + "'");
            }
        }
        if (modes.empty()) throw ConfigError(key, "no modes given");
        cfg.modes = modes;
    } else if (key == "splitting") {
        if (value == "first_order") {
            cfg.splitting = Splitting::FirstOrder;
        } else if (value == "strang") {
            cfg.splitting = Splitting::Strang;
        } else {
            throw ConfigError(key, "expected first_order or strang");
        }
    } else if (key == "convention") {
        if (value == "standard") {
            cfg.convention = MomentumConvention::Standard;
        } else if (value == "mirrored") {
            cfg.convention = MomentumConvention::LiteralBranch;
        } else {
            throw ConfigError(key, "expected standard or mirrored");
        }
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "svg") {
        if (value == "true" || value == "1") {
            cfg.write_svg = true;
        } else if (value == "false" || value == "0") {
            cfg.write_svg = false;
        } else {
            throw ConfigError(key, "expected true or false");
        }
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
        throw ConfigError(key, "unknown key");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "line " + std::to_string(line_no) + " is not key=value");
        }
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    ExperimentConfig cfg;
    for (const auto &[k, v] : kv) {
        if (k == "preset") apply_setting(cfg, k, v);
    }
    for (const auto &[k, v] : kv) {
        if (k != "preset") apply_setting(cfg, k, v);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    ExperimentConfig cfg = parse_config(ss.str());
    // Relative potential files are relative to the config file.
    if (!cfg.potential_file.empty() && std::filesystem::path(cfg.potential_file).is_relative()) {
        cfg.potential_file = (std::filesystem::path(path).parent_path() / cfg.potential_file).lexically_normal().string();
    }
    return cfg;
}

void validate(const ExperimentConfig &cfg) {
    if (cfg.n_qubits < 1 || cfg.n_qubits > kMaxStateQubits) {
        throw ConfigError("n_qubits", "must be in [1, " + std::to_string(kMaxStateQubits) + "]");
    }
    if (cfg.initial_label.size() != static_cast<std::size_t>(cfg.n_qubits) ||
        cfg.initial_label.find_first_not_of("01") != std::string::npos) {
        throw ConfigError("initial", "must be a bitstring of length n_qubits");
    }
    if (!(cfg.dt > 0.0)) throw ConfigError("dt", "must be positive");
    if (cfg.steps < 1) throw ConfigError("steps", "must be at least 1");
    if (!(cfg.mass > 0.0)) throw ConfigError("mass", "must be positive");
    if (cfg.modes.empty()) throw ConfigError("mode", "no modes given");
    for (auto m : cfg.modes) {
        if (m == EvolutionMode::Exact && cfg.n_qubits > kMaxDenseQubits) {
            throw ConfigError("mode", "exact mode is limited to " + std::to_string(kMaxDenseQubits) + " qubits");
        }
    }
    switch (cfg.potential) {
        case PotentialKind::DoubleWell:
            if (cfg.n_qubits != 2 && cfg.n_qubits != 3) {
                throw ConfigError("potential", "double_well needs 2 or 3 qubits");
            }
            if (!(cfg.v0 >= 0.0)) throw ConfigError("v0", "must be non-negative");
            break;
        case PotentialKind::Free:
            break;
        case PotentialKind::File:
            if (cfg.potential_file.empty()) throw ConfigError("potential_file", "missing path");
            break;
    }
}

PotentialSpec build_potential(const ExperimentConfig &cfg) {
    switch (cfg.potential) {
        case PotentialKind::DoubleWell:
            return double_well(cfg.n_qubits, cfg.v0);
        case PotentialKind::Free:
            return free_potential(cfg.n_qubits);
        case PotentialKind::File: {
            PotentialSpec pot;
            try {
                pot = load_potential_file(cfg.potential_file);
            } catch (const std::exception &e) {
                throw ConfigError("potential_file", e.what());
            }
            if (pot.n_qubits != cfg.n_qubits) {
                throw ConfigError("potential_file", "file has " + std::to_string(pot.values.size()) +
                                                        " values, register needs " +
                                                        std::to_string(dim_of(cfg.n_qubits)));
            }
            return pot;
        }
    }
    throw ConfigError("potential", "unknown kind");
}

TrotterConfig trotter_config(const ExperimentConfig &cfg, EvolutionMode mode) {
    TrotterConfig t;
    t.dt = cfg.dt;
    t.steps = cfg.steps;
    t.mass = cfg.mass;
    t.mode = mode;
    t.splitting = cfg.splitting;
    t.convention = cfg.convention;
    return t;
}

const ModeRun &RunResult::run(EvolutionMode mode) const {
    for (const auto &r : runs) {
        if (r.mode == mode) return r;
    }
    throw ConfigError("mode", "run has no " + to_string(mode) + " result");
}

RunResult compute_experiment(const ExperimentConfig &cfg) {
    validate(cfg);
    const PotentialSpec pot = build_potential(cfg);
    const StateVector initial = basis_state(cfg.n_qubits, cfg.initial_label);
    RunResult result{cfg, {}, {}};
    for (auto mode : cfg.modes) {
        result.runs.push_back({mode, evolve(initial, pot, trotter_config(cfg, mode))});
    }
    return result;
}

RunResult run_experiment(const ExperimentConfig &cfg) {
    RunResult result = compute_experiment(cfg);
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + cfg.out_dir + "'");
    }
    for (const auto &r : result.runs) {
        const fs::path p = dir / (cfg.name + "_" + to_string(r.mode) + ".csv");
        write_file(p, trace_csv(r.result.trace));
        result.files.push_back(p.string());
    }
    const fs::path manifest = dir / (cfg.name + "_manifest.txt");
    write_file(manifest, manifest_text(cfg));
    result.files.push_back(manifest.string());
    if (cfg.write_svg) {
        const fs::path svg = dir / (cfg.name + ".svg");
        write_file(svg, trace_svg(result));
        result.files.push_back(svg.string());
    }
    return result;
}

std::string trace_csv(const ProbabilityTrace &trace) {
    std::ostringstream os;
    os << "step,site_index_1_based,basis_label,probability\n";
    os << std::fixed << std::setprecision(12);
    for (std::size_t t = 0; t < trace.rows.size(); ++t) {
        for (std::size_t k = 0; k < trace.rows[t].size(); ++k) {
            os << t << ',' << k + 1 << ',' << basis_label(k, trace.n_qubits) << ',' << trace.rows[t][k] << '\n';
        }
    }
    return os.str();
}

std::string manifest_text(const ExperimentConfig &cfg) {
    std::ostringstream os;
    os << "name = " << cfg.name << "\n";
    os << "n_qubits = " << cfg.n_qubits << "\n";
    os << "initial = " << cfg.initial_label << "\n";
    os << "potential = " << potential_name(cfg.potential) << "\n";
    os << "v0 = " << shortest(cfg.v0) << "\n";
    if (cfg.potential == PotentialKind::File) {
        os << "potential_file = " << cfg.potential_file << "\n";
    }
    os << "dt = " << shortest(cfg.dt) << "\n";
    os << "steps = " << cfg.steps << "\n";
    os << "mass = " << shortest(cfg.mass) << "\n";
    os << "mode = ";
    for (std::size_t i = 0; i < cfg.modes.size(); ++i) {
        os << (i ? "," : "") << to_string(cfg.modes[i]);
    }
    os << "\n";
    os << "splitting = " << splitting_name(cfg.splitting) << "\n";
    os << "convention = " << convention_name(cfg.convention) << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

std::string trace_svg(const RunResult &result) {
    static const char *kColors[] = {"#1f77b4", "#2ca02c", "#ffbf00", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    const auto &cfg = result.config;
    const int sites = static_cast<int>(dim_of(cfg.n_qubits));
    const int groups = cfg.steps + 1;
    const int bar = std::max(2, 48 / sites);
    const int group_w = bar * sites + 12;
    const int left = 48;
    const int panel_h = 220;
    const int plot_h = 160;
    const int width = left + groups * group_w + 16;
    const int height = static_cast<int>(result.runs.size()) * panel_h + 8;

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t panel = 0; panel < result.runs.size(); ++panel) {
        const auto &run = result.runs[panel];
        const int top = static_cast<int>(panel) * panel_h + 20;
        const int base = top + plot_h;
        os << "<text x=\"" << left << "\" y=\"" << top - 6 << "\">" << cfg.name << " (" << to_string(run.mode)
           << ")</text>\n";
        os << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << width - 8 << "\" y2=\"" << base
           << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << base
           << "\" stroke=\"black\"/>\n";
        for (int tick = 0; tick <= 4; ++tick) {
            const double y = base - plot_h * tick / 4.0;
            os << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick * 0.25
               << "</text>\n";
        }
        const auto &rows = run.result.trace.rows;
        for (int t = 0; t < groups; ++t) {
            const int gx = left + 6 + t * group_w;
            for (int k = 0; k < sites; ++k) {
                const double p = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
                const double h = p * plot_h;
                os << "<rect x=\"" << gx + k * bar << "\" y=\"" << base - h << "\" width=\"" << bar
                   << "\" height=\"" << h << "\" fill=\"" << kColors[k % 8] << "\"/>\n";
            }
            os << "<text x=\"" << gx + bar * sites / 2 << "\" y=\"" << base + 14 << "\" text-anchor=\"middle\">"
               << t << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

std::string VerifyReport::table() const {
    std::size_t width = 0;
    for (const auto &c : checks) width = std::max(width, c.name.size());
    std::ostringstream os;
    for (const auto &c : checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
           << c.detail << "\n";
    }
    os << (all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
    return os.str();
}

namespace {

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

StateVector random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector a(static_cast<Eigen::Index>(dim_of(n)));
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = cplx{g(rng), g(rng)};
    a.normalize();
    return StateVector(n, a, StateVector::Unchecked{});
}

Matrix dense_step(const PotentialSpec &pot, const TrotterConfig &cfg) {
    const Matrix f = qft_matrix(pot.n_qubits);
    const Matrix d = diagonal_matrix(kinetic_diag(pot.n_qubits, cfg.dt, cfg.mass, cfg.convention).phases);
    std::vector<cplx> q(pot.values.size());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = std::polar(1.0, -pot.values[k] * cfg.dt);
    return f.adjoint() * d * f * diagonal_matrix(q);
}

}  // namespace

VerifyReport verify_all(const VerifyOptions &options) {
    VerifyReport report;
    std::mt19937_64 rng(options.seed);
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    {
        double worst = 0.0;
        double unit = 0.0;
        for (int n = 1; n <= 6; ++n) {
            const Matrix ladder = circuit_unitary(qft_circuit(n));
            worst = std::max(worst, (ladder - qft_matrix(n)).cwiseAbs().maxCoeff());
            const auto d = ladder.rows();
            unit = std::max(unit, (ladder.adjoint() * ladder - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
        }
        add("qft ladder == closed form (n=1..6)", worst < 1e-12, "max dev " + sci(worst));
        add("qft unitarity (n=1..6)", unit < 1e-12, "max dev " + sci(unit));
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n) {
            const StateVector s = random_state(n, rng);
            const StateVector fused = qft_apply(s);
            const StateVector gates = apply_circuit(s, qft_circuit(n));
            worst = std::max(worst, (fused.amplitudes() - gates.amplitudes()).cwiseAbs().maxCoeff());
        }
        add("fused qft == gate ladder", worst < 1e-12, "max dev " + sci(worst));
    }
    {
        double worst2 = 0.0;
        for (double dt : {0.05, 0.1, 0.7}) {
            const Matrix lhs = circuit_unitary(methods_decomposition_D(2, dt));
            const Matrix rhs = diagonal_matrix(kinetic_diag(2, dt, 0.5, options.convention).phases);
            worst2 = std::max(worst2, global_phase_residual(lhs, rhs));
        }
        add("D decomposition n=2", worst2 < 1e-10, "residual " + sci(worst2));
        double worst3 = 0.0;
        for (double dt : {0.1, 0.4}) {
            const Matrix lhs = circuit_unitary(methods_decomposition_D(3, dt));
            const Matrix rhs = diagonal_matrix(kinetic_diag(3, dt, 0.5, options.convention).phases);
            worst3 = std::max(worst3, global_phase_residual(lhs, rhs));
        }
        add("D decomposition n=3", worst3 < 1e-10, "residual " + sci(worst3));
    }

    for (const auto &name : preset_names()) {
        ExperimentConfig cfg = preset(name);
        cfg.dt *= options.dt_scale;
        const PotentialSpec pot = build_potential(cfg);
        const StateVector init = basis_state(cfg.n_qubits, cfg.initial_label);
        for (auto mode : cfg.modes) {
            const TrotterConfig tc = trotter_config(cfg, mode);
            const auto res = evolve(init, pot, tc, true);
            double norm_dev = 0.0;
            for (std::size_t t = 0; t < res.trace.rows.size(); ++t) {
                norm_dev = std::max(norm_dev, std::abs(res.trace.row_sum(t) - 1.0));
            }
            const std::string tag = name + " " + to_string(mode);
            add("norm " + tag, norm_dev < 1e-10, "max dev " + sci(norm_dev));
            if (mode == EvolutionMode::Exact) {
                const Matrix h = hamiltonian(pot, tc.mass, tc.convention);
                const double e0 = energy(init, h);
                double dev = 0.0;
                for (const auto &s : res.states) dev = std::max(dev, std::abs(energy(s, h) - e0));
                add("energy " + tag, dev < 1e-9, "max dev " + sci(dev));
            } else {
                const Matrix u = mode == EvolutionMode::Free
                                     ? dense_step(free_potential(cfg.n_qubits), tc)
                                     : dense_step(pot, tc);
                Vector ref = init.amplitudes();
                double dev = 0.0;
                for (std::size_t t = 1; t < res.states.size(); ++t) {
                    ref = u * ref;
                    dev = std::max(dev, (ref - res.states[t].amplitudes()).cwiseAbs().maxCoeff());
                }
                add("dense oracle " + tag, dev < 1e-10, "max dev " + sci(dev));
                StateVector back = res.final_state;
                for (int t = 0; t < cfg.steps; ++t) back = reverse_trotter_step(back, pot, tc);
                const double rev = (back.amplitudes() - init.amplitudes()).cwiseAbs().maxCoeff();
                add("time reversal " + tag, rev < 1e-10, "max dev " + sci(rev));
            }
        }
    }

    {
        double worst = 0.0;
        for (int n : {2, 3}) {
            const PotentialSpec dw = double_well(n, n == 2 ? 10.0 : 100.0);
            const PotentialSpec fr = free_potential(n);
            TrotterConfig tc;
            tc.dt = (n == 2 ? 0.1 : 0.4) * options.dt_scale;
            tc.convention = options.convention;
            TrotterConfig tf = tc;
            tf.mode = EvolutionMode::Free;
            for (std::size_t k = 0; k < dim_of(n); ++k) {
                const auto a = probabilities(trotter_step(basis_state(n, k), dw, tc));
                const auto b = probabilities(trotter_step(basis_state(n, k), fr, tf));
                for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
            }
        }
        add("basis-state first step ignores Q", worst < 1e-12, "max dev " + sci(worst));
    }

    for (const char *name : {"doublewell-2q", "doublewell-3q"}) {
        ExperimentConfig cfg = preset(name);
        const PotentialSpec pot = build_potential(cfg);
        const StateVector init = basis_state(cfg.n_qubits, cfg.initial_label);
        TrotterConfig coarse = trotter_config(cfg, EvolutionMode::Trotter);
        coarse.dt *= options.dt_scale;
        TrotterConfig fine = coarse;
        fine.dt /= 2.0;
        fine.steps *= 2;
        const double a = trotter_vs_exact_report(pot, coarse, init).final_overlap();
        const double b = trotter_vs_exact_report(pot, fine, init).final_overlap();
        std::ostringstream d;
        d << std::fixed << std::setprecision(6) << "overlap " << a << " -> " << b;
        add(std::string("trotter refinement ") + name, b > a, d.str());
    }

    {
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const Matrix u = exact_propagator(n, free_potential(n), 0.3, 0.5, options.convention);
            const Matrix f = qft_matrix(n);
            const Matrix k = f.adjoint() * diagonal_matrix(kinetic_diag(n, 0.3, 0.5, options.convention).phases) * f;
            worst = std::max(worst, (u - k).cwiseAbs().maxCoeff());
        }
        add("exact propagator, V=0 == kinetic", worst < 1e-10, "max dev " + sci(worst));
    }
    {
        const StateVector s = random_state(3, rng);
        const DensityMatrix rho = pauli_tomography_roundtrip(s);
        const double dev = (rho.entries() - DensityMatrix::pure(s).entries()).cwiseAbs().maxCoeff();
        add("pauli tomography round trip (n=3)", dev < 1e-10, "max dev " + sci(dev));
    }
    {
        const auto t = nmr::timing_constants(nmr::kChloroformJHz);
        const bool ok = std::abs(t.t1 * 1e6 - 580.9) <= 0.2 && std::abs(t.t2 * 1e6 - 365.0) <= 0.2;
        std::ostringstream d;
        d << std::fixed << std::setprecision(2) << "t1 " << t.t1 * 1e6 << " us, t2 " << t.t2 * 1e6 << " us";
        add("pulse timing constants", ok, d.str());

        const nmr::SpinSystem sys = nmr::chloroform();
        const auto q = nmr::verify_sequence(sys, nmr::reference_sequence_Q(1.0),
                                            circuit_unitary(Circuit(2, {potential_propagator(double_well(2, 10.0), 0.1)})),
                                            1e-10);
        add("pulse sequence Q", q.ok, "residual " + sci(q.residual));
        const auto f = nmr::verify_sequence(sys, nmr::reference_sequence_F(sys), qft_matrix(2), 1e-8);
        add("pulse sequence F", f.ok, "residual " + sci(f.residual));
        const auto dd = nmr::verify_sequence(sys, nmr::reference_sequence_D(sys, 0.1),
                                             diagonal_matrix(kinetic_diag(2, 0.1, 0.5, options.convention).phases),
                                             1e-8);
        add("pulse sequence D", dd.ok, "residual " + sci(dd.residual));
    }
    return report;
}

}  // namespace qtunnel
