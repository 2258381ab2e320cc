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

#ifndef nfbeam_hybrid_H
#define nfbeam_hybrid_H

#include <vector>

#include <Eigen/Dense>

#include "nfbeam/errors.hpp"

namespace nfbeam
{

struct HybridOptions
{
    int num_chains = 8;   // RF chains, equals the number of selected dictionary atoms
    int phase_bits = 3;   // phase shifter resolution B, levels 2*pi*k/2^B
    int oversampling = 4; // dictionary columns per element (grid size L = oversampling * N)
};

struct HybridBeam
{
    Eigen::MatrixXcd analog;      // N x chains, quantized constant-modulus columns (|entry| = 1/sqrt(N))
    Eigen::VectorXcd digital;     // chains, baseband combining coefficients
    std::vector<int> atoms;       // selected dictionary columns in pick order
    Eigen::MatrixXi phase_index;  // N x chains, quantizer levels in [0, 2^phase_bits)
    std::vector<double> residual; // approximation residual norm after each selection
    int phase_bits = 0;
    bool rank_deficient = false;  // least-squares refit detected a rank-deficient atom set
};

// Far-field steering dictionary: column l is (1/sqrt(N)) * exp(j*pi*n*psi_l) with
// psi_l = -1 + 2*l/L uniform over [-1, 1), n = 0..N-1, L = oversampling * N.
Eigen::MatrixXcd steering_dictionary(int num_elements, int oversampling);

// Greedy sparse factorization of a target weight vector into the steering dictionary:
// repeatedly pick the atom best correlated with the residual, refit all picked atoms in
// the least-squares sense, then quantize the selected atom phases to phase_bits and
// refit the digital coefficients against the quantized analog matrix.
// Throws ParamError on invalid options or a zero target.
HybridBeam omp_decompose(const Eigen::VectorXcd &target, const HybridOptions &opt);

// Effective array weights analog * digital, rescaled to ||w||^2 = power.
Eigen::VectorXcd hybrid_weights(const HybridBeam &hb, double power);

} // namespace nfbeam

#endif
