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
#include "nfbeam/training.hpp"

namespace nfbeam
{

double received_power(const Eigen::VectorXcd &channel, const Eigen::VectorXcd &weights)
{
    if (channel.size() != weights.size())
        throw ParamError("received_power: channel and weights must have equal length");
    return std::norm(channel.dot(weights)); // dot conjugates the channel
}

double spectral_efficiency(double rx_power, double noise_power)
{
    if (!(noise_power > 0.0))
        throw ParamError("spectral_efficiency: noise power must be positive");
    if (rx_power < 0.0)
        throw ParamError("spectral_efficiency: received power must be >= 0");
    return std::log2(1.0 + rx_power / noise_power);
}

double mrt_power(const Scenario &s, const Eigen::VectorXcd &channel)
{
    if (channel.size() != s.num_elements)
        throw ParamError("mrt_power: channel length does not match num_elements");
    return s.tx_power * channel.squaredNorm();
}

// Phase table over the angle x distance product: column c holds the unit-modulus
// focused front exp(j*(-kappa*y*sin + kappa*y^2*cos^2/(2r))); params[c] records
// (theta, range). Shared by the focused, curved and nf_airy searches.
struct PhaseTable
{
    Eigen::MatrixXcd cols;               // N x C
    std::vector<std::pair<double, double>> params; // (theta, range) per column
};

static PhaseTable make_phase_table(const Scenario &s, const CodebookSpec &spec)
{
    const std::vector<double> sines = sample_angles(spec.angle);
    Eigen::ArrayXd y(s.num_elements);
    for (int i = 0; i < s.num_elements; ++i)
        y[i] = s.element_y(i);
    const double kappa = s.wavenumber();

    PhaseTable tab;
    std::vector<Eigen::VectorXcd> cols;
    for (double sin_t : sines)
    {
        const double theta = std::asin(sin_t);
        const double cc = std::cos(theta) * std::cos(theta);
        for (double r : sample_distances(spec.distance, theta))
        {
            const Eigen::ArrayXd phase = -kappa * sin_t * y + (0.5 * kappa * cc / r) * y.square();
            Eigen::VectorXcd col(s.num_elements);
            for (int i = 0; i < s.num_elements; ++i)
                col[i] = std::polar(1.0, phase[i]);
            cols.push_back(std::move(col));
            tab.params.emplace_back(theta, r);
        }
    }
    tab.cols.resize(s.num_elements, (Eigen::Index)cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        tab.cols.col((Eigen::Index)c) = cols[c];
    return tab;
}

// Keeps the running best over entries scanned in codebook index order.
struct Best
{
    long index = -1;
    double power = -1.0;

    void offer(long i, double p)
    {
        if (p > power)
        {
            power = p;
            index = i;
        }
    }
};

TrainingResult exhaustive_search(const Scenario &s, const Eigen::VectorXcd &channel, const CodebookSpec &spec)
{
    if (channel.size() != s.num_elements)
        throw ParamError("exhaustive_search: channel length does not match num_elements");
    const std::size_t total = codebook_size(spec);
    if (total == 0)
        throw EmptyCodebookError("exhaustive_search: codebook spec produces no entries");

    const double p_tx = s.tx_power;
    const double n_inv = 1.0 / s.num_elements;
    Eigen::ArrayXd y(s.num_elements);
    for (int i = 0; i < s.num_elements; ++i)
        y[i] = s.element_y(i);

    Best best;
    switch (spec.kind)
    {
    case BeamKind::steered:
    {
        const std::vector<double> sines = sample_angles(spec.angle);
        const double kappa = s.wavenumber();
        for (std::size_t a = 0; a < sines.size(); ++a)
        {
            std::complex<double> acc = 0.0;
            for (int i = 0; i < s.num_elements; ++i)
                acc += std::conj(channel[i]) * std::polar(1.0, -kappa * sines[a] * y[i]);
            best.offer((long)a, p_tx * n_inv * std::norm(acc));
        }
        break;
    }
    case BeamKind::focused:
    {
        const PhaseTable tab = make_phase_table(s, spec);
        const Eigen::VectorXcd scores = tab.cols.adjoint() * channel; // conj(b)^T h = conj(h^H b)
        for (Eigen::Index c = 0; c < scores.size(); ++c)
            best.offer((long)c, p_tx * n_inv * std::norm(scores[c]));
        break;
    }
    case BeamKind::curved:
    {
        const PhaseTable tab = make_phase_table(s, spec);
        const std::vector<double> curvatures = sample_curvatures(spec.curvature);
        const long nc = (long)curvatures.size();
        for (std::size_t ic = 0; ic < curvatures.size(); ++ic)
        {
            const Eigen::ArrayXd cubic = (2.0 * M_PI * curvatures[ic] * y).cube() / 3.0;
            Eigen::VectorXcd hmod(s.num_elements);
            for (int i = 0; i < s.num_elements; ++i)
                hmod[i] = channel[i] * std::polar(1.0, cubic[i]); // conj of the codeword's -cubic phase
            const Eigen::VectorXcd scores = tab.cols.adjoint() * hmod;
            for (Eigen::Index c = 0; c < scores.size(); ++c)
                best.offer((long)c * nc + (long)ic, p_tx * n_inv * std::norm(scores[c]));
        }
        break;
    }
    case BeamKind::classic_airy:
    {
        const std::vector<double> scales = sample_scales(spec.scale);
        const std::vector<double> decays = sample_decays(spec.decay);
        const long nd = (long)decays.size();
        for (std::size_t is = 0; is < scales.size(); ++is)
            for (std::size_t id = 0; id < decays.size(); ++id)
            {
                const Eigen::ArrayXd env = airy_envelope(y, scales[is], decays[id]);
                const double norm2 = env.square().sum();
                if (norm2 == 0.0)
                    continue; // unusable codeword, cannot be normalized
                std::complex<double> acc = 0.0;
                for (int i = 0; i < s.num_elements; ++i)
                    acc += std::conj(channel[i]) * env[i];
                best.offer((long)is * nd + (long)id, p_tx * std::norm(acc) / norm2);
            }
        break;
    }
    case BeamKind::nf_airy:
    {
        const PhaseTable tab = make_phase_table(s, spec);
        const std::vector<double> scales = sample_scales(spec.scale);
        const std::vector<double> decays = sample_decays(spec.decay);
        const long nd = (long)decays.size();
        const long pairs = (long)scales.size() * nd;

        // stack h .* env for every envelope pair, then one GEMM against the phase table
        Eigen::MatrixXcd henv(s.num_elements, pairs);
        Eigen::VectorXd env_norm2(pairs);
        for (std::size_t is = 0; is < scales.size(); ++is)
            for (std::size_t id = 0; id < decays.size(); ++id)
            {
                const long pe = (long)is * nd + (long)id;
                const Eigen::ArrayXd env = airy_envelope(y, scales[is], decays[id]);
                env_norm2[pe] = env.square().sum();
                for (int i = 0; i < s.num_elements; ++i)
                    henv(i, pe) = channel[i] * env[i];
            }
        const Eigen::MatrixXcd scores = tab.cols.adjoint() * henv; // C x pairs
        for (Eigen::Index c = 0; c < scores.rows(); ++c)
            for (long pe = 0; pe < pairs; ++pe)
            {
                if (env_norm2[pe] == 0.0)
                    continue;
                best.offer((long)c * pairs + pe, p_tx * std::norm(scores(c, pe)) / env_norm2[pe]);
            }
        break;
    }
    }

    TrainingResult res;
    res.best_index = best.index;
    res.power = best.power < 0.0 ? 0.0 : best.power;
    res.probes = (long)total;
    res.stages.emplace_back("exhaustive", (long)total);
    if (best.index >= 0)
        res.best = assemble_codebook(spec).entries[(std::size_t)best.index];
    return res;
}

TrainingResult hierarchical_search(const Scenario &s, const Eigen::VectorXcd &channel, const CodebookSpec &spec)
{
    if (spec.kind != BeamKind::nf_airy)
        throw ParamError("hierarchical_search: staged refinement requires an nf_airy codebook");
    if (channel.size() != s.num_elements)
        throw ParamError("hierarchical_search: channel length does not match num_elements");

    const double p_tx = s.tx_power;
    Eigen::ArrayXd y(s.num_elements);
    for (int i = 0; i < s.num_elements; ++i)
        y[i] = s.element_y(i);

    // stage 1: angle and focal range through the focused sub-book
    const PhaseTable tab = make_phase_table(s, spec);
    if (tab.params.empty())
        throw EmptyCodebookError("hierarchical_search: angle/distance axes produce no entries");
    const Eigen::VectorXcd s1 = tab.cols.adjoint() * channel;
    Best stage1;
    for (Eigen::Index c = 0; c < s1.size(); ++c)
        stage1.offer((long)c, p_tx / s.num_elements * std::norm(s1[c]));
    const long c_star = stage1.index;
    const auto [theta_star, r_star] = tab.params[(std::size_t)c_star];
    const Eigen::VectorXcd front = tab.cols.col(c_star); // unit-modulus winning phase front

    // h conjugated against the front once; envelope scores reduce to weighted sums
    Eigen::VectorXcd hf(s.num_elements);
    for (int i = 0; i < s.num_elements; ++i)
        hf[i] = std::conj(channel[i]) * front[i];

    const auto envelope_power = [&](double scale, double decay) {
        const Eigen::ArrayXd env = airy_envelope(y, scale, decay);
        const double norm2 = env.square().sum();
        if (norm2 == 0.0)
            return 0.0;
        std::complex<double> acc = 0.0;
        for (int i = 0; i < s.num_elements; ++i)
            acc += hf[i] * env[i];
        return p_tx * std::norm(acc) / norm2;
    };

    // stage 2: transverse scale at the decay-axis midpoint
    const std::vector<double> scales = sample_scales(spec.scale);
    const std::vector<double> decays = sample_decays(spec.decay);
    const double a0 = 0.5 * (spec.decay.a_min + spec.decay.a_max);
    Best stage2;
    for (std::size_t is = 0; is < scales.size(); ++is)
        stage2.offer((long)is, envelope_power(scales[is], a0));
    const double s_star = scales[(std::size_t)stage2.index];

    // stage 3: decay rescan at the winning scale
    Best stage3;
    for (std::size_t id = 0; id < decays.size(); ++id)
        stage3.offer((long)id, envelope_power(s_star, decays[id]));
    const double a_star = decays[(std::size_t)stage3.index];

    // fallback: the focused stage-1 winner stays in the race
    const double p_fallback = stage1.power;

    TrainingResult res;
    res.probes = (long)tab.params.size() + (long)scales.size() + (long)decays.size() + 1;
    res.stages.emplace_back("angle_range", (long)tab.params.size());
    res.stages.emplace_back("scale", (long)scales.size());
    res.stages.emplace_back("decay", (long)decays.size());
    res.stages.emplace_back("fallback", 1);

    if (stage3.power >= p_fallback && stage3.power >= stage2.power)
    {
        res.power = stage3.power;
        res.best = BeamParams{BeamKind::nf_airy, theta_star, r_star, 0.0, s_star, a_star};
        const long nd = (long)decays.size();
        res.best_index = (c_star * (long)scales.size() + stage2.index) * nd + stage3.index;
    }
    else if (stage2.power >= p_fallback)
    {
        res.power = stage2.power;
        res.best = BeamParams{BeamKind::nf_airy, theta_star, r_star, 0.0, s_star, a0};
        res.best_index = -1; // the midpoint decay is off the codebook grid
    }
    else
    {
        res.power = p_fallback;
        res.best = BeamParams{BeamKind::focused, theta_star, r_star, 0.0, 0.0, 0.0};
        res.best_index = -1;
    }
    return res;
}

} // namespace nfbeam
