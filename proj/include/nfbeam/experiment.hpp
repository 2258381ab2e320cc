// SPDX-License-Identifier: Apache-2.0
//
// nfbeam - near-field beamforming simulator for obstructed links
// Copyright (C) 2026 nfbeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef nfbeam_experiment_H
#define nfbeam_experiment_H

#include <cstdint>
#include <random>
#include <string>

#include <json.hpp>

#include "nfbeam/codebooks.hpp"
#include "nfbeam/scenario.hpp"

namespace nfbeam
{

// Deterministic uniform source: u = (next() >> 11) * 2^-53 in [0, 1). All randomized
// placement flows through one Rng seeded from the run config, so a seed pins every output.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : m_gen(seed) {}
    double uniform(); // [0, 1)
    double uniform(double lo, double hi);

  private:
    std::mt19937_64 m_gen;
};

enum class ExperimentKind
{
    beam_pattern,       // propagate fixed beams, export field maps
    power_map,          // train on one user, map the winning beam intensity
    se_vs_power,        // spectral efficiency of every scheme vs transmit power
    blockage_sweep,     // fixed user, obstacle variants spanning blockage ratios
    frequency_sweep,    // scheme gaps vs carrier frequency
    codebook_sweep,     // airy codebook gap and probe count vs axis resolution
    obstacle_sweep,     // scheme gaps vs obstacle height
    hybrid_gap,         // factorization loss vs RF chains and phase bits
    correlation_curves  // codeword correlation vs axis index separation
};

const char *to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string &name); // throws SpecError

struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::beam_pattern;
    Scenario scenario;
    CodebookSpec codebook;        // defaults unless overridden in the config
    std::uint64_t seed = 1;
    int threads = 1;
    bool quick = false;           // shrink every codebook axis and user count by 4x
    std::string out_dir;          // resolved from --out, config, NFBEAM_OUT, "./out" in that order
    nlohmann::json params;        // kind-specific parameters, echoed into the manifest
};

// Parses and validates a config document; throws SpecError / IOError.
ExperimentConfig load_experiment(const std::string &path);
ExperimentConfig experiment_from_json(const nlohmann::json &doc);

// FNV-1a 64-bit over the canonical (sorted keys, no whitespace) JSON dump.
std::uint64_t config_hash(const nlohmann::json &doc);

// Runs the experiment, writes its CSV/PGM outputs plus run_manifest.json into out_dir
// and returns the number of failed internal checks (0 on success). Outputs depend only
// on the config and seed, so a rerun reproduces every file byte for byte.
int run_experiment(const ExperimentConfig &cfg);

} // namespace nfbeam

#endif
