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

#ifndef nfbeam_training_H
#define nfbeam_training_H

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nfbeam/codebooks.hpp"

namespace nfbeam
{

double received_power(const Eigen::VectorXcd &channel, const Eigen::VectorXcd &weights); // |h^H w|^2
double spectral_efficiency(double rx_power, double noise_power);                          // log2(1 + p/sigma^2)
double mrt_power(const Scenario &s, const Eigen::VectorXcd &channel);                     // P * ||h||^2 upper bound

struct TrainingResult
{
    long best_index = -1;  // index into the assembled codebook, -1 when the winner is off-book
    BeamParams best;       // parameters of the winning codeword
    double power = 0.0;    // |h^H w|^2 delivered by the winner
    long probes = 0;       // codewords evaluated in total
    std::vector<std::pair<std::string, long>> stages; // per-stage probe counts
};

// Evaluates every codeword of the spec against the channel; ties resolve to the lowest
// index. The angle/distance phase table is shared across envelope and curvature
// modifiers, so large books are searched without materializing their weights.
// Throws EmptyCodebookError when the spec produces no entries.
TrainingResult exhaustive_search(const Scenario &s, const Eigen::VectorXcd &channel, const CodebookSpec &spec);

// Staged search over an nf_airy codebook (ParamError for other kinds):
//   1. angle and focal range via the focused sub-book (count = angles * distances),
//   2. Airy scale at the winning (theta, r) with decay fixed to the axis midpoint,
//   3. decay rescan at the winning scale,
//   4. one fallback re-evaluation of the stage-1 focused winner.
// The result is the best probe seen across all stages, so the search never returns
// less power than its focused starting point.
TrainingResult hierarchical_search(const Scenario &s, const Eigen::VectorXcd &channel, const CodebookSpec &spec);

} // namespace nfbeam

#endif
