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

#include "nfbeam/codebooks.hpp"

namespace nfbeam
{

static std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> v((std::size_t)count);
    if (count == 1)
    {
        v[0] = 0.5 * (lo + hi);
        return v;
    }
    for (int i = 0; i < count; ++i)
        v[(std::size_t)i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

std::vector<double> sample_angles(const AngleAxis &axis)
{
    if (axis.count < 1)
        throw ParamError("sample_angles: count must be >= 1");
    if (axis.full_dft)
    {
        std::vector<double> v((std::size_t)axis.count);
        for (int l = 0; l < axis.count; ++l)
            v[(std::size_t)l] = (2.0 * l + 1.0 - axis.count) / axis.count;
        return v;
    }
    if (!(axis.sin_lo < axis.sin_hi) || axis.sin_lo < -1.0 || axis.sin_hi > 1.0)
        throw ParamError("sample_angles: need -1 <= sin_lo < sin_hi <= 1");
    return linspace(axis.sin_lo, axis.sin_hi, axis.count);
}

std::vector<double> sample_distances(const DistanceAxis &axis, double theta)
{
    if (axis.count < 1)
        throw ParamError("sample_distances: count must be >= 1");
    if (!(axis.z_max > 0.0))
        throw ParamError("sample_distances: z_max must be positive");
    if (axis.r_min < 0.0)
        throw ParamError("sample_distances: r_min must be >= 0");
    const double cc = std::cos(theta) * std::cos(theta);
    std::vector<double> v;
    v.reserve((std::size_t)axis.count);
    for (int mm = 1; mm <= axis.count; ++mm)
    {
        const double r = axis.z_max * cc / mm;
        if (r >= axis.r_min)
            v.push_back(r);
    }
    return v;
}

std::vector<double> sample_scales(const ScaleAxis &axis)
{
    if (axis.count < 1)
        throw ParamError("sample_scales: count must be >= 1");
    if (!(axis.s_min > 0.0) || !(axis.s_min <= axis.s_max))
        throw ParamError("sample_scales: need 0 < s_min <= s_max");
    const std::vector<double> inv = linspace(1.0 / axis.s_max, 1.0 / axis.s_min, axis.count);
    std::vector<double> v;
    v.reserve(inv.size() * (axis.signed_pairs ? 2 : 1));
    for (double q : inv)
        v.push_back(1.0 / q); // uniform in curvature of the envelope, s_max down to s_min
    if (axis.signed_pairs)
        for (double q : inv)
            v.push_back(-1.0 / q);
    return v;
}

std::vector<double> sample_decays(const DecayAxis &axis)
{
    if (axis.count < 1)
        throw ParamError("sample_decays: count must be >= 1");
    if (!(axis.a_min <= axis.a_max) || axis.a_max > 0.0)
        throw ParamError("sample_decays: need a_min <= a_max <= 0");
    return linspace(axis.a_min, axis.a_max, axis.count);
}

std::vector<double> sample_curvatures(const CurvatureAxis &axis)
{
    if (axis.count < 1)
        throw ParamError("sample_curvatures: count must be >= 1");
    if (!(axis.c_min <= axis.c_max))
        throw ParamError("sample_curvatures: need c_min <= c_max");
    return linspace(axis.c_min, axis.c_max, axis.count);
}

std::size_t codebook_size(const CodebookSpec &spec)
{
    const std::size_t na = sample_angles(spec.angle).size();
    const std::size_t ns = sample_scales(spec.scale).size();
    const std::size_t nd = sample_decays(spec.decay).size();
    const std::size_t nc = sample_curvatures(spec.curvature).size();

    std::size_t dist = 0; // distance samples depend on theta only through the r_min drop
    for (double sin_t : sample_angles(spec.angle))
        dist += sample_distances(spec.distance, std::asin(sin_t)).size();

    switch (spec.kind)
    {
    case BeamKind::steered:
        return na;
    case BeamKind::focused:
        return dist;
    case BeamKind::curved:
        return dist * nc;
    case BeamKind::classic_airy:
        return ns * nd;
    case BeamKind::nf_airy:
        return dist * ns * nd;
    }
    return 0;
}

Codebook assemble_codebook(const CodebookSpec &spec)
{
    Codebook cb;
    cb.kind = spec.kind;
    cb.entries.reserve(codebook_size(spec));

    const std::vector<double> sines = sample_angles(spec.angle);
    const std::vector<double> scales = sample_scales(spec.scale);
    const std::vector<double> decays = sample_decays(spec.decay);
    const std::vector<double> curvatures = sample_curvatures(spec.curvature);

    BeamParams p;
    p.kind = spec.kind;
    switch (spec.kind)
    {
    case BeamKind::steered:
        for (double sin_t : sines)
        {
            p.theta = std::asin(sin_t);
            cb.entries.push_back(p);
        }
        break;
    case BeamKind::focused:
        for (double sin_t : sines)
        {
            p.theta = std::asin(sin_t);
            for (double r : sample_distances(spec.distance, p.theta))
            {
                p.range = r;
                cb.entries.push_back(p);
            }
        }
        break;
    case BeamKind::curved:
        for (double sin_t : sines)
        {
            p.theta = std::asin(sin_t);
            for (double r : sample_distances(spec.distance, p.theta))
            {
                p.range = r;
                for (double c : curvatures)
                {
                    p.curvature = c;
                    cb.entries.push_back(p);
                }
            }
        }
        break;
    case BeamKind::classic_airy:
        for (double sc : scales)
        {
            p.scale = sc;
            for (double a : decays)
            {
                p.decay = a;
                cb.entries.push_back(p);
            }
        }
        break;
    case BeamKind::nf_airy:
        for (double sin_t : sines)
        {
            p.theta = std::asin(sin_t);
            for (double r : sample_distances(spec.distance, p.theta))
            {
                p.range = r;
                for (double sc : scales)
                {
                    p.scale = sc;
                    for (double a : decays)
                    {
                        p.decay = a;
                        cb.entries.push_back(p);
                    }
                }
            }
        }
        break;
    }
    return cb;
}

Eigen::MatrixXcd materialize(const Scenario &s, const Codebook &cb)
{
    if (cb.entries.empty())
        throw EmptyCodebookError("materialize: codebook has no entries");
    Eigen::MatrixXcd w(s.num_elements, (Eigen::Index)cb.entries.size());
    for (std::size_t e = 0; e < cb.entries.size(); ++e)
        w.col((Eigen::Index)e) = beam_weights(s, cb.entries[e]);
    return w;
}

double codeword_correlation(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        throw ZeroVectorError("codeword_correlation: zero-norm codeword");
    return std::abs(a.dot(b)) / (na * nb); // Eigen's dot conjugates the first argument
}

} // namespace nfbeam
