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

#ifndef nfbeam_codebooks_H
#define nfbeam_codebooks_H

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nfbeam/waveforms.hpp"

namespace nfbeam
{

// Parameter axes of the beam codebooks. Counts of 0 are rejected; linear axes with
// count 1 collapse to their midpoint.

struct AngleAxis
{
    int count = 90;             // number of angle samples
    double sin_lo = -0.70710678118654752; // lower edge of the sin(theta) window
    double sin_hi = +0.70710678118654752; // upper edge of the sin(theta) window
    bool full_dft = false;      // uniform sin(theta) = (2l+1-count)/count over [-1, 1) instead
};

struct DistanceAxis
{
    int count = 20;     // number of focal-range samples m = 1..count
    double z_max = 6.0; // farthest broadside focal range Z [m]; r_m(theta) = Z*cos^2(theta)/m
    double r_min = 0.0; // optional near-limit, samples with r < r_min are dropped (0 keeps all)
};

struct ScaleAxis
{
    int count = 10;       // samples per sign, uniform in 1/s between the limits
    double s_min = 0.05;  // smallest |scale| [m]
    double s_max = 0.3;   // largest |scale| [m]
    bool signed_pairs = true; // append the mirrored negative scales
};

struct DecayAxis
{
    int count = 10;      // uniform samples over [a_min, a_max]
    double a_min = -2.0;
    double a_max = 0.0;
};

struct CurvatureAxis
{
    int count = 21;     // uniform samples over [c_min, c_max]
    double c_min = -5.0;
    double c_max = 5.0;
};

// Axis samplers; throw ParamError on invalid counts or limits.
std::vector<double> sample_angles(const AngleAxis &axis);                        // sin(theta) values
std::vector<double> sample_distances(const DistanceAxis &axis, double theta);    // focal ranges [m]
std::vector<double> sample_scales(const ScaleAxis &axis);                        // signed scales [m]
std::vector<double> sample_decays(const DecayAxis &axis);
std::vector<double> sample_curvatures(const CurvatureAxis &axis);

struct CodebookSpec
{
    BeamKind kind = BeamKind::nf_airy;
    AngleAxis angle;
    DistanceAxis distance;
    ScaleAxis scale;
    DecayAxis decay;
    CurvatureAxis curvature;
};

struct Codebook
{
    BeamKind kind = BeamKind::nf_airy;
    std::vector<BeamParams> entries;
};

// Entry order is fixed so codeword indices are stable:
//   steered:       angle
//   focused:       angle, distance
//   curved:        angle, distance, curvature
//   classic_airy:  scale, decay
//   nf_airy:       angle, distance, scale, decay
// (the rightmost axis varies fastest)
Codebook assemble_codebook(const CodebookSpec &spec);

std::size_t codebook_size(const CodebookSpec &spec); // entry count without assembling

// Weight matrix (num_elements x entries) with every column normalized to tx_power.
Eigen::MatrixXcd materialize(const Scenario &s, const Codebook &cb);

// Normalized inner product |a^H b| / (||a|| * ||b||); throws ZeroVectorError.
double codeword_correlation(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

} // namespace nfbeam

#endif
