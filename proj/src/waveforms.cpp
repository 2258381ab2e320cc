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

#include <cmath>

#include "nfbeam/airy.hpp"
#include "nfbeam/waveforms.hpp"

namespace nfbeam
{

const char *to_string(BeamKind kind)
{
    switch (kind)
    {
    case BeamKind::steered:
        return "steered";
    case BeamKind::focused:
        return "focused";
    case BeamKind::curved:
        return "curved";
    case BeamKind::classic_airy:
        return "classic_airy";
    case BeamKind::nf_airy:
        return "nf_airy";
    }
    return "unknown";
}

BeamKind beam_kind_from_string(const std::string &name)
{
    if (name == "steered")
        return BeamKind::steered;
    if (name == "focused")
        return BeamKind::focused;
    if (name == "curved")
        return BeamKind::curved;
    if (name == "classic_airy")
        return BeamKind::classic_airy;
    if (name == "nf_airy")
        return BeamKind::nf_airy;
    throw SpecError("beam kind '" + name + "' is not known");
}

Eigen::VectorXcd normalize_power(Eigen::VectorXcd w, double power)
{
    if (!(power > 0.0))
        throw ParamError("normalize_power: power must be positive");
    const double norm = w.norm();
    if (norm == 0.0 || !std::isfinite(norm))
        throw ZeroVectorError("normalize_power: vector has no usable energy");
    w *= std::sqrt(power) / norm;
    return w;
}

static void check_angle(double theta)
{
    if (!std::isfinite(theta) || std::abs(theta) >= 0.5 * M_PI)
        throw ParamError("beam_weights: |theta| must be below pi/2");
}

static void check_range(double range)
{
    if (!(range > 0.0) || !std::isfinite(range))
        throw ParamError("beam_weights: focal range must be positive");
}

Eigen::VectorXcd beam_weights(const Scenario &s, const BeamParams &p)
{
    const int n = s.num_elements;
    const double kappa = s.wavenumber();
    Eigen::ArrayXd y(n);
    for (int i = 0; i < n; ++i)
        y[i] = s.element_y(i);

    Eigen::VectorXcd w(n);
    switch (p.kind)
    {
    case BeamKind::steered:
    {
        check_angle(p.theta);
        const Eigen::ArrayXd phase = -kappa * std::sin(p.theta) * y;
        for (int i = 0; i < n; ++i)
            w[i] = std::polar(1.0, phase[i]);
        break;
    }
    case BeamKind::focused:
    case BeamKind::curved:
    {
        check_angle(p.theta);
        check_range(p.range);
        if (p.kind == BeamKind::curved && !std::isfinite(p.curvature))
            throw ParamError("beam_weights: curvature must be finite");
        const double cc = std::cos(p.theta) * std::cos(p.theta);
        Eigen::ArrayXd phase = -kappa * std::sin(p.theta) * y + (0.5 * kappa * cc / p.range) * y.square();
        if (p.kind == BeamKind::curved)
            phase -= (2.0 * M_PI * p.curvature * y).cube() / 3.0;
        for (int i = 0; i < n; ++i)
            w[i] = std::polar(1.0, phase[i]);
        break;
    }
    case BeamKind::classic_airy:
    {
        const Eigen::ArrayXd env = airy_envelope(y, p.scale, p.decay); // keeps the sign as 0/pi phase
        for (int i = 0; i < n; ++i)
            w[i] = env[i];
        break;
    }
    case BeamKind::nf_airy:
    {
        check_angle(p.theta);
        check_range(p.range);
        const Eigen::ArrayXd env = airy_envelope(y, p.scale, p.decay);
        const double cc = std::cos(p.theta) * std::cos(p.theta);
        const Eigen::ArrayXd phase = -kappa * std::sin(p.theta) * y + (0.5 * kappa * cc / p.range) * y.square();
        for (int i = 0; i < n; ++i)
            w[i] = env[i] * std::polar(1.0, phase[i]); // envelope sign folds into the phase
        break;
    }
    }
    return normalize_power(std::move(w), s.tx_power);
}

Eigen::VectorXcd mrt_weights(const Scenario &s, const Eigen::VectorXcd &channel)
{
    if (channel.size() != s.num_elements)
        throw ParamError("mrt_weights: channel length does not match num_elements");
    const double norm = channel.norm();
    if (norm == 0.0 || !std::isfinite(norm))
        throw ZeroChannelError("mrt_weights: channel carries no energy");
    return std::sqrt(s.tx_power) / norm * channel;
}

} // namespace nfbeam
