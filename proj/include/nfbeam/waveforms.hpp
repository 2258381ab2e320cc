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

#ifndef nfbeam_waveforms_H
#define nfbeam_waveforms_H

#include <string>

#include <Eigen/Dense>

#include "nfbeam/scenario.hpp"

namespace nfbeam
{

enum class BeamKind
{
    steered,      // far-field phase ramp exp(-j*kappa*y*sin(theta))
    focused,      // steered plus focal correction exp(+j*kappa*y^2*cos^2(theta)/(2r))
    curved,       // focused plus cubic phase exp(-j*(2*pi*c*y)^3/3)
    classic_airy, // real envelope Ai(y/s)*exp(a*y/s), binary 0/pi phase
    nf_airy       // Airy envelope carried on the focused phase front
};

const char *to_string(BeamKind kind);
BeamKind beam_kind_from_string(const std::string &name); // throws SpecError on unknown names

struct BeamParams
{
    BeamKind kind = BeamKind::steered;
    double theta = 0.0;     // steering angle [rad], |theta| < pi/2
    double range = 0.0;     // focal range r > 0 [m] (focused / curved / nf_airy)
    double curvature = 0.0; // cubic coefficient c [1/m] (curved)
    double scale = 0.0;     // Airy transverse scale s [m] (classic_airy / nf_airy)
    double decay = 0.0;     // Airy decay a <= 0 (classic_airy / nf_airy)
};

// Weight vector of the requested waveform, normalized to ||w||^2 = tx_power.
// Throws ParamError / DegenerateScaleError on invalid parameters.
Eigen::VectorXcd beam_weights(const Scenario &s, const BeamParams &p);

// Matched-filter (maximum ratio transmission) weights sqrt(P) * h / ||h||.
// Throws ZeroChannelError when the channel has no energy.
Eigen::VectorXcd mrt_weights(const Scenario &s, const Eigen::VectorXcd &channel);

// Rescale to ||w||^2 = power; throws ZeroVectorError on all-zero input, ParamError for power <= 0.
Eigen::VectorXcd normalize_power(Eigen::VectorXcd w, double power);

} // namespace nfbeam

#endif
