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

namespace nfbeam
{

// Maclaurin series Ai(x) = c1*f(x) - c2*g(x) with
//   f = sum_k x^{3k} * prod_i (3i+1)/(3i+3)... expressed through term recurrences,
//   c1 = Ai(0), c2 = -Ai'(0).
// The two partial sums cancel for large |x|, so they are accumulated in long double;
// with 64 mantissa bits the absolute error stays below 1e-13 for |x| <= 8.
static double ai_series(double x, int max_terms)
{
    const long double c1 = 0.355028053887817239260L; // Ai(0) = 3^(-2/3)/Gamma(2/3)
    const long double c2 = 0.258819403792806798405L; // -Ai'(0) = 3^(-1/3)/Gamma(1/3)
    const long double x3 = (long double)x * x * x;

    long double tf = 1.0L, tg = (long double)x;
    long double f = tf, g = tg;
    for (int k = 0; k < max_terms; ++k)
    {
        tf *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        tg *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += tf;
        g += tg;
        if (fabsl(tf) + fabsl(tg) < 1.0e-24L * (fabsl(f) + fabsl(g) + 1.0L))
            break;
    }
    return (double)(c1 * f - c2 * g);
}

// Oscillatory expansion for large negative arguments (z = -x):
//   Ai(-z) = (cos(w)*S_even + sin(w)*S_odd) / (sqrt(pi) * z^(1/4)),  w = zeta - pi/4,
//   zeta = (2/3) z^(3/2), S built from u_0 = 1, u_{k+1} = u_k (6k+5)(6k+1) / (72(k+1)),
//   term m carries sign (-1)^(m/2) and splits by parity; truncated at the smallest term.
static double ai_asymptotic_negative(double z)
{
    const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
    double u = 1.0, t = 1.0;
    double s_even = 0.0, s_odd = 0.0;
    double prev = 1.0e300;
    for (int m = 0; m < 40; ++m)
    {
        if (std::abs(t) > prev)
            break;
        prev = std::abs(t);
        const double signed_t = ((m / 2) % 2 == 0) ? t : -t;
        if (m % 2 == 0)
            s_even += signed_t;
        else
            s_odd += signed_t;
        u *= (6.0 * m + 5.0) * (6.0 * m + 1.0) / (72.0 * (m + 1.0));
        t = u / std::pow(zeta, m + 1.0);
    }
    const double w = zeta - 0.25 * M_PI;
    return (std::cos(w) * s_even + std::sin(w) * s_odd) / (std::sqrt(M_PI) * std::pow(z, 0.25));
}

// Exponential expansion for large positive arguments:
//   Ai(x) = e^(-zeta) / (2 sqrt(pi) x^(1/4)) * sum_k (-1)^k u_k zeta^(-k).
static double ai_asymptotic_positive(double x)
{
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    double u = 1.0, t = 1.0;
    double sum = 0.0;
    double prev = 1.0e300;
    for (int k = 0; k < 40; ++k)
    {
        if (std::abs(t) > prev)
            break;
        prev = std::abs(t);
        sum += (k % 2 == 0) ? t : -t;
        u *= (6.0 * k + 5.0) * (6.0 * k + 1.0) / (72.0 * (k + 1.0));
        t = u / std::pow(zeta, k + 1.0);
    }
    return std::exp(-zeta) * sum / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
}

double airy_ai(double x, const AiryOptions &opt)
{
    if (!std::isfinite(x))
        throw DomainError("airy_ai: argument is not finite");
    if (opt.series_cutoff <= 0.0 || opt.max_terms < 8)
        throw ParamError("airy_ai: invalid series options");

    if (x < -opt.series_cutoff)
        return ai_asymptotic_negative(-x);
    if (x > 8.0 && x > opt.series_cutoff) // series keeps absolute accuracy well past +8
        return ai_asymptotic_positive(x);
    return ai_series(x, opt.max_terms);
}

Eigen::ArrayXd airy_ai(const Eigen::ArrayXd &x, const AiryOptions &opt)
{
    Eigen::ArrayXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out[i] = airy_ai(x[i], opt);
    return out;
}

Eigen::ArrayXd airy_envelope(const Eigen::ArrayXd &y, double scale, double decay, const AiryOptions &opt)
{
    if (!std::isfinite(scale) || !std::isfinite(decay))
        throw DomainError("airy_envelope: non-finite scale or decay");
    if (std::abs(scale) < min_airy_scale)
        throw DegenerateScaleError("airy_envelope: |scale| below the representable floor");
    if (decay > 0.0)
        throw ParamError("airy_envelope: decay must be <= 0");

    const Eigen::ArrayXd u = y / scale;
    if (u.size() > 0 && (decay * u).maxCoeff() > 700.0)
        throw ParamError("airy_envelope: decay envelope overflows for this scale");

    Eigen::ArrayXd out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        out[i] = airy_ai(u[i], opt) * std::exp(decay * u[i]);
    return out;
}

} // namespace nfbeam
