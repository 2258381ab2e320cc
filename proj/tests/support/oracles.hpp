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

// Test-side reference implementations. These share no code with the library: the Airy
// oracle integrates the defining oscillatory integral with adaptive Gauss-Kronrod
// quadrature, and the geometry oracle decides segment blockage by dense sampling.

#ifndef nfbeam_tests_oracles_H
#define nfbeam_tests_oracles_H

#include "nfbeam/scenario.hpp"

namespace nfbeam_tests
{

// Ai(x) = (1/pi) Re int_0^inf exp(i(t^3/3 + x t)) dt, evaluated as an adaptive GK15
// integral of cos(t^3/3 + x t) over [0, T], T = sqrt(max(-x, 0)) + 1, plus the tail
// integrated along the rotated ray t = T + u*exp(i*pi/6) where the integrand decays
// like exp(-(u^3/3 + sqrt(3)/2 T u^2 + (T^2+x)/2 u)). Absolute accuracy ~1e-14.
double oracle_airy_ai(double x);

// Blockage fraction decided by sampling each element-user segment at `samples`
// equidistant points and testing them against the closed obstacle rectangles.
double oracle_blockage_ratio(const nfbeam::Scenario &s, const nfbeam::Point &user, int samples = 4001);

} // namespace nfbeam_tests

#endif
