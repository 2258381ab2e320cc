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
#include <vector>

#include "nfbeam/hybrid.hpp"

namespace nfbeam
{

Eigen::MatrixXcd steering_dictionary(int num_elements, int oversampling)
{
    if (num_elements < 1 || oversampling < 1)
        throw ParamError("steering_dictionary: num_elements and oversampling must be >= 1");
    const int l_total = num_elements * oversampling;
    const double amp = 1.0 / std::sqrt((double)num_elements);
    Eigen::MatrixXcd a(num_elements, l_total);
    for (int l = 0; l < l_total; ++l)
    {
        const double psi = -1.0 + 2.0 * l / l_total;
        for (int n = 0; n < num_elements; ++n)
            a(n, l) = std::polar(amp, M_PI * n * psi);
    }
    return a;
}

// Least-squares coefficients of target over the selected columns; flags rank loss.
static Eigen::VectorXcd ls_fit(const Eigen::MatrixXcd &basis, const Eigen::VectorXcd &target, bool &rank_flag)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(basis);
    if (qr.rank() < basis.cols())
        rank_flag = true;
    return qr.solve(target);
}

HybridBeam omp_decompose(const Eigen::VectorXcd &target, const HybridOptions &opt)
{
    const int n = (int)target.size();
    if (opt.num_chains < 1 || opt.num_chains > n)
        throw ParamError("omp_decompose: num_chains must be in [1, num_elements]");
    if (opt.phase_bits < 1 || opt.phase_bits > 16)
        throw ParamError("omp_decompose: phase_bits must be in [1, 16]");
    if (opt.oversampling < 1)
        throw ParamError("omp_decompose: oversampling must be >= 1");
    if (target.norm() == 0.0)
        throw ParamError("omp_decompose: target vector is zero");

    const Eigen::MatrixXcd dict = steering_dictionary(n, opt.oversampling);
    const int l_total = (int)dict.cols();

    HybridBeam hb;
    hb.phase_bits = opt.phase_bits;

    // greedy selection with unquantized atoms
    Eigen::VectorXcd residual = target;
    Eigen::MatrixXcd selected(n, opt.num_chains);
    std::vector<char> used((std::size_t)l_total, 0);
    for (int l = 0; l < opt.num_chains; ++l)
    {
        const Eigen::VectorXcd scores = dict.adjoint() * residual;
        int best = -1;
        double best_mag = -1.0;
        for (int j = 0; j < l_total; ++j)
        {
            if (used[(std::size_t)j])
                continue;
            const double mag = std::abs(scores[j]);
            if (mag > best_mag)
            {
                best_mag = mag;
                best = j;
            }
        }
        used[(std::size_t)best] = 1;
        hb.atoms.push_back(best);
        selected.col(l) = dict.col(best);

        const Eigen::VectorXcd coef = ls_fit(selected.leftCols(l + 1), target, hb.rank_deficient);
        residual = target - selected.leftCols(l + 1) * coef;
        hb.residual.push_back(residual.norm());
    }

    // quantize the selected atom phases to 2^bits uniform levels (half intervals round up)
    const int levels = 1 << opt.phase_bits;
    const double step = 2.0 * M_PI / levels;
    const double amp = 1.0 / std::sqrt((double)n);
    hb.analog.resize(n, opt.num_chains);
    hb.phase_index.resize(n, opt.num_chains);
    for (int l = 0; l < opt.num_chains; ++l)
        for (int i = 0; i < n; ++i)
        {
            const double phi = std::arg(selected(i, l));
            int k = (int)std::floor(phi / step + 0.5);
            k = ((k % levels) + levels) % levels;
            hb.phase_index(i, l) = k;
            hb.analog(i, l) = std::polar(amp, k * step);
        }

    // refit the baseband coefficients against the quantized analog matrix
    hb.digital = ls_fit(hb.analog, target, hb.rank_deficient);
    return hb;
}

Eigen::VectorXcd hybrid_weights(const HybridBeam &hb, double power)
{
    if (!(power > 0.0))
        throw ParamError("hybrid_weights: power must be positive");
    if (hb.analog.size() == 0 || hb.digital.size() != hb.analog.cols())
        throw ParamError("hybrid_weights: factorization is incomplete");
    Eigen::VectorXcd w = hb.analog * hb.digital;
    const double norm = w.norm();
    if (norm == 0.0)
        throw ZeroVectorError("hybrid_weights: factorization collapsed to zero");
    return std::sqrt(power) / norm * w;
}

} // namespace nfbeam
