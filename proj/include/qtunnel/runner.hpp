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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtunnel/evolution.hpp"
#include "qtunnel/potential.hpp"

namespace qtunnel {

enum class PotentialKind { DoubleWell, Free, File };

struct ExperimentConfig {
    std::string name = "run";
    int n_qubits = 2;
    std::string initial_label = "01";
    PotentialKind potential = PotentialKind::DoubleWell;
    double v0 = 10.0;
    std::string potential_file;
    double dt = 0.1;
    int steps = 9;
    double mass = 0.5;
    std::vector<EvolutionMode> modes{EvolutionMode::Trotter};
    Splitting splitting = Splitting::FirstOrder;
    MomentumConvention convention = MomentumConvention::Standard;
    std::string out_dir = ".";
    bool write_svg = false;
    std::uint64_t seed = 2013;
};

std::vector<std::string> preset_names();
/// doublewell-2q, free-2q, doublewell-3q. Throws ConfigError.
ExperimentConfig preset(const std::string &name);

/// Sets one key from its text value; throws ConfigError naming the key.
void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value);
/// Flat "key = value" lines, '#' comments. A "preset" key, if present, is applied first.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string &path);
/// Throws ConfigError for the first inconsistent key.
void validate(const ExperimentConfig &cfg);

PotentialSpec build_potential(const ExperimentConfig &cfg);
TrotterConfig trotter_config(const ExperimentConfig &cfg, EvolutionMode mode);

struct ModeRun {
    EvolutionMode mode;
    EvolutionResult result;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<ModeRun> runs;
    std::vector<std::string> files;

    const ModeRun &run(EvolutionMode mode) const;
};

/// Evolution only, no files.
RunResult compute_experiment(const ExperimentConfig &cfg);
/// Evolution plus <name>_<mode>.csv per mode, <name>_manifest.txt and
/// optionally <name>.svg in cfg.out_dir. Throws IoError if a file cannot be written.
RunResult run_experiment(const ExperimentConfig &cfg);

/// step,site_index_1_based,basis_label,probability with 12-digit probabilities.
std::string trace_csv(const ProbabilityTrace &trace);
/// Config-format echo of every parameter; loadable with parse_config.
std::string manifest_text(const ExperimentConfig &cfg);
std::string trace_svg(const RunResult &result);

struct VerifyOptions {
    MomentumConvention convention = MomentumConvention::Standard;
    double dt_scale = 1.0;
    std::uint64_t seed = 2013;
};

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::string table() const;
};

VerifyReport verify_all(const VerifyOptions &options = {});

}  // namespace qtunnel
