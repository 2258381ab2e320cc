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

#ifndef nfbeam_airy_H
#define nfbeam_airy_H

#include <Eigen/Dense>

#include "nfbeam/errors.hpp"

namespace nfbeam
{

struct AiryOptions
{
    double series_cutoff = 6.0; // |x| limit of the Maclaurin series; asymptotic expansions beyond
    int max_terms = 200;        // safety bound on series terms
};

// Airy function Ai(x), absolute accuracy better than 1e-10 over the real axis.
// Maclaurin series accumulated in extended precision for moderate |x|, oscillatory
// and exponential asymptotic expansions for large negative / positive arguments.
// Throws DomainError for non-finite x.
double airy_ai(double x, const AiryOptions &opt = {});

Eigen::ArrayXd airy_ai(const Eigen::ArrayXd &x, const AiryOptions &opt = {});

inline constexpr double min_airy_scale = 1.0e-6; // [m], smallest usable transverse scale

// Real envelope Ai(y/scale) * exp(decay * y/scale) sampled at the given coordinates.
// Throws DegenerateScaleError for |scale| < min_airy_scale, ParamError for decay > 0
// (growing envelopes are not representable on a finite aperture) and DomainError for
// non-finite inputs.
Eigen::ArrayXd airy_envelope(const Eigen::ArrayXd &y, double scale, double decay, const AiryOptions &opt = {});

} // namespace nfbeam

#endif
