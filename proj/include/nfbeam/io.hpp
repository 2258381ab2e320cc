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

#ifndef nfbeam_io_H
#define nfbeam_io_H

#include <string>

#include <Eigen/Dense>

#include "nfbeam/codebooks.hpp"
#include "nfbeam/hybrid.hpp"
#include "nfbeam/propagation.hpp"

namespace nfbeam
{

// All text formats open with a versioned magic line so readers can reject drift.
// Floating point values are written round-trip exact (max_digits10).

// "# nfbeam weights v1", then "index,re,im" rows.
void save_weights_csv(const std::string &path, const Eigen::VectorXcd &w);
Eigen::VectorXcd load_weights_csv(const std::string &path);

// "# nfbeam field v1", then "x,y,re,im" rows, plane-major.
void save_field_csv(const std::string &path, const FieldRecord &rec);

// "# nfbeam codebook v1", kind and count lines, then "theta,range,curvature,scale,decay" rows.
void save_codebook(const std::string &path, const Codebook &cb);
Codebook load_codebook(const std::string &path);

// "# nfbeam hybrid v1": options, atom list, quantized phase levels and digital coefficients.
void save_hybrid(const std::string &path, const HybridBeam &hb);
HybridBeam load_hybrid(const std::string &path);

// Binary PGM (P5, maxval 255) heatmap of values in dB: rows are y ascending, columns are
// x ascending, linear mapping [db_floor, db_ceil] -> [0, 255] with clamping.
void save_heatmap_pgm(const std::string &path, const Eigen::MatrixXd &db_values, double db_floor, double db_ceil);

} // namespace nfbeam

#endif
