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

// qtunnel command-line entry point.
//
// Exit codes: 0 success, 1 check failure, 2 usage or configuration error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtunnel/corestate.hpp"
#include "qtunnel/errors.hpp"
#include "qtunnel/evolution.hpp"
#include "qtunnel/gates.hpp"
#include "qtunnel/nmrpulse.hpp"
#include "qtunnel/potential.hpp"
#include "qtunnel/runner.hpp"
#include "qtunnel/spectral.hpp"

namespace {

using namespace qtunnel;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct ConfigSource {
    std::string preset;
    std::string config;
    std::vector<std::string> sets;
};

void add_config_options(CLI::App *cmd, ConfigSource &src) {
    auto *p = cmd->add_option("--preset", src.preset, "Canned experiment")
                  ->check(CLI::IsMember(preset_names()));
    auto *c = cmd->add_option("--config", src.config, "key=value config file")->check(CLI::ExistingFile);
    p->excludes(c);
    cmd->add_option("--set", src.sets, "Override one key, e.g. --set dt=0.05 (repeatable)");
}

ExperimentConfig resolve_config(const ConfigSource &src) {
    ExperimentConfig cfg;
    if (!src.preset.empty()) {
        cfg = preset(src.preset);
    } else if (!src.config.empty()) {
        cfg = load_config(src.config);
    } else {
        throw ConfigError("preset", "give --preset or --config");
    }
    for (const auto &kv : src.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(kv, "--set expects key=value");
        }
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

int cmd_run(const ConfigSource &src, const std::string &out, bool svg) {
    ExperimentConfig cfg = resolve_config(src);
    if (!out.empty()) cfg.out_dir = out;
    if (svg) cfg.write_svg = true;
    const RunResult result = run_experiment(cfg);
    std::cout << std::fixed << std::setprecision(6);
    for (const auto &r : result.runs) {
        const auto &rows = r.result.trace.rows;
        std::cout << cfg.name << " [" << to_string(r.mode) << "] step " << rows.size() - 1 << ":";
        for (double p : rows.back()) std::cout << ' ' << p;
        std::cout << '\n';
    }
    for (const auto &f : result.files) std::cout << "wrote " << f << '\n';
    return kExitOk;
}

int cmd_compare(const ConfigSource &src) {
    const ExperimentConfig cfg = resolve_config(src);
    validate(cfg);
    const PotentialSpec pot = build_potential(cfg);
    const StateVector init = basis_state(cfg.n_qubits, cfg.initial_label);
    const EvolutionMode mode =
        cfg.potential == PotentialKind::Free ? EvolutionMode::Free : EvolutionMode::Trotter;
    const OverlapReport rep = trotter_vs_exact_report(pot, trotter_config(cfg, mode), init);
    std::cout << "step,time,overlap\n" << std::fixed;
    for (std::size_t t = 0; t < rep.overlaps.size(); ++t) {
        std::cout << t << ',' << std::setprecision(4) << static_cast<double>(t) * cfg.dt << ','
                  << std::setprecision(6) << rep.overlaps[t] << '\n';
    }
    std::cout << "final overlap " << std::setprecision(6) << rep.final_overlap() << '\n';
    return kExitOk;
}

int cmd_decompose(const std::string &path, double tol) {
    const PotentialSpec pot = load_potential_file(path);
    const auto dec = pauli_decompose(pot);
    std::cout << "qubits " << pot.n_qubits << '\n' << std::setprecision(15);
    for (const auto &[label, c] : dec.nonzero(tol)) std::cout << label << ' ' << c << '\n';
    return kExitOk;
}

int cmd_verify(const std::string &convention, double dt_scale, std::uint64_t seed, const std::string &circuit,
               const std::string &target, double dt, double tol) {
    if (!circuit.empty()) {
        const Circuit c = load_circuit(circuit);
        Matrix expected;
        if (target == "qft") {
            expected = qft_matrix(c.n_qubits());
        } else if (target == "kinetic") {
            expected = diagonal_matrix(kinetic_diag(c.n_qubits(), dt, 0.5).phases);
        } else {
            const auto d = static_cast<Eigen::Index>(dim_of(c.n_qubits()));
            expected = Matrix::Identity(d, d);
        }
        const double residual = global_phase_residual(circuit_unitary(c), expected);
        const bool ok = residual <= tol;
        std::cout << (ok ? "PASS" : "FAIL") << "  circuit " << circuit << " vs " << target << "  residual "
                  << std::scientific << std::setprecision(2) << residual << '\n';
        return ok ? kExitOk : kExitCheckFailed;
    }
    VerifyOptions opt;
    opt.convention = convention == "mirrored" ? MomentumConvention::LiteralBranch : MomentumConvention::Standard;
    opt.dt_scale = dt_scale;
    opt.seed = seed;
    const VerifyReport report = verify_all(opt);
    std::cout << report.table();
    return report.all_passed() ? kExitOk : kExitCheckFailed;
}

int cmd_verify_pulse(const std::string &system, const std::string &sequence, const std::string &target, double dt,
                     double v0, double tol) {
    const nmr::SpinSystem sys = system.empty() ? nmr::chloroform() : nmr::load_spin_system(system);
    const nmr::PulseSequence seq = nmr::load_pulse_sequence(sequence, nmr::timing_variables(sys));
    Matrix expected;
    if (target == "identity") {
        const auto d = static_cast<Eigen::Index>(dim_of(sys.n_spins));
        expected = Matrix::Identity(d, d);
    } else {
        if (sys.n_spins != 2) {
            throw ConfigError("target", "F, D and Q targets need a two-spin system");
        }
        if (target == "F") {
            expected = qft_matrix(2);
        } else if (target == "D") {
            expected = diagonal_matrix(kinetic_diag(2, dt, 0.5).phases);
        } else {
            expected = circuit_unitary(Circuit(2, {potential_propagator(double_well(2, v0), dt)}));
        }
    }
    const auto check = nmr::verify_sequence(sys, seq, expected, tol);
    std::cout << (check.ok ? "PASS" : "FAIL") << "  " << sequence << " vs " << target << "  residual "
              << std::scientific << std::setprecision(2) << check.residual << '\n';
    return check.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Digital simulation of 1-D quantum tunneling on a qubit register"};
    app.require_subcommand(1);

    ConfigSource run_src;
    std::string run_out;
    bool run_svg = false;
    auto *run = app.add_subcommand("run", "Evolve a preset or configured experiment and write traces");
    add_config_options(run, run_src);
    run->add_option("--out", run_out, "Output directory");
    run->add_flag("--svg", run_svg, "Also write an SVG bar chart");

    std::string convention = "standard";
    double dt_scale = 1.0;
    std::uint64_t seed = 2013;
    std::string circuit;
    std::string circuit_target = "qft";
    double circuit_dt = 0.1;
    double circuit_tol = 1e-10;
    auto *verify = app.add_subcommand("verify", "Run the gate, decomposition and invariant checks");
    verify->add_option("--convention", convention, "Momentum convention")
        ->check(CLI::IsMember({"standard", "mirrored"}));
    verify->add_option("--dt-scale", dt_scale, "Scale the preset time steps")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Seed for randomized checks");
    verify->add_option("--circuit", circuit, "Check a circuit file instead")->check(CLI::ExistingFile);
    verify->add_option("--target", circuit_target, "Circuit target")
        ->check(CLI::IsMember({"qft", "kinetic", "identity"}));
    verify->add_option("--dt", circuit_dt, "Time step for the kinetic target");
    verify->add_option("--tol", circuit_tol, "Tolerance for the circuit check");

    std::string system;
    std::string sequence;
    std::string pulse_target = "identity";
    double pulse_dt = 0.1;
    double pulse_v0 = 10.0;
    double pulse_tol = 1e-8;
    auto *vp = app.add_subcommand("verify-pulse", "Check a pulse sequence against a gate");
    vp->add_option("--system", system, "Spin-system file (default: chloroform)")->check(CLI::ExistingFile);
    vp->add_option("--sequence", sequence, "Pulse-sequence file")->required()->check(CLI::ExistingFile);
    vp->add_option("--target", pulse_target, "Target gate")->check(CLI::IsMember({"F", "D", "Q", "identity"}));
    vp->add_option("--dt", pulse_dt, "Time step for D and Q");
    vp->add_option("--v0", pulse_v0, "Double-well amplitude for Q");
    vp->add_option("--tol", pulse_tol, "Tolerance");

    std::string potential_file;
    double decompose_tol = 1e-12;
    auto *dec = app.add_subcommand("decompose", "Print the {I,Z} Pauli decomposition of a potential");
    dec->add_option("--potential-file", potential_file, "One value per line")->required()->check(CLI::ExistingFile);
    dec->add_option("--tol", decompose_tol, "Drop coefficients below this magnitude");

    ConfigSource cmp_src;
    auto *cmp = app.add_subcommand("compare", "Per-step overlap of Trotter and exact evolution");
    add_config_options(cmp, cmp_src);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_src, run_out, run_svg);
        if (*verify) {
            return cmd_verify(convention, dt_scale, seed, circuit, circuit_target, circuit_dt, circuit_tol);
        }
        if (*vp) return cmd_verify_pulse(system, sequence, pulse_target, pulse_dt, pulse_v0, pulse_tol);
        if (*dec) return cmd_decompose(potential_file, decompose_tol);
        if (*cmp) return cmd_compare(cmp_src);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
