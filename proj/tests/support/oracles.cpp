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
#include <functional>

#include "oracles.hpp"

namespace nfbeam_tests
{

// 15-point Gauss-Kronrod pair on [-1, 1]; the embedded 7-point Gauss rule reuses the
// odd Kronrod abscissae.
static const double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
                              0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
static const double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
                              0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

static void gk15(const std::function<double(double)> &f, double a, double b, double &kronrod, double &gauss)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double ik = wgk[7] * fc, ig = wg[3] * fc;
    for (int i = 0; i < 7; ++i)
    {
        const double dx = h * xgk[i];
        const double f1 = f(c - dx), f2 = f(c + dx);
        ik += wgk[i] * (f1 + f2);
        if (i % 2 == 1)
            ig += wg[i / 2] * (f1 + f2);
    }
    kronrod = ik * h;
    gauss = ig * h;
}

static double adaptive_gk15(const std::function<double(double)> &f, double a, double b, double tol, int depth)
{
    double ik, ig;
    gk15(f, a, b, ik, ig);
    const double err = std::abs(ik - ig);
    if (err <= tol || err <= 1.0e-15 * (1.0 + std::abs(ik))) // interval converged to machine precision
        return ik;
    if (depth >= 26)
        throw nfbeam::QuadratureError("oracle_airy_ai: adaptive quadrature exceeded the recursion limit");
    const double child_tol = std::max(0.5 * tol, 1.0e-16);
    const double c = 0.5 * (a + b);
    return adaptive_gk15(f, a, c, child_tol, depth + 1) + adaptive_gk15(f, c, b, child_tol, depth + 1);
}

double oracle_airy_ai(double x)
{
    const double t_head = std::sqrt(std::max(-x, 0.0)) + 1.0;

    const auto head = [x](double t) { return std::cos(t * t * t / 3.0 + x * t); };

    // tail along t = T + u * exp(i*pi/6): the phase becomes exp(R(u) + i*I(u)) with
    //   R(u) = -(u^3/3 + (sqrt(3)/2) T u^2 + ((T^2 + x)/2) u)
    //   I(u) = T^3/3 + x T + (sqrt(3)/2)(T^2 + x) u + (T/2) u^2
    // and the ray direction contributes another pi/6 inside the cosine.
    const double T = t_head;
    const double c2 = 0.5 * std::sqrt(3.0) * T;
    const double c1 = 0.5 * (T * T + x);
    const double i0 = T * T * T / 3.0 + x * T;
    const double i1 = 0.5 * std::sqrt(3.0) * (T * T + x);
    const double i2 = 0.5 * T;
    const auto tail = [=](double u) {
        const double r = -(u * u * u / 3.0 + c2 * u * u + c1 * u);
        return std::exp(r) * std::cos(i0 + i1 * u + i2 * u * u + M_PI / 6.0);
    };

    double u_max = 1.0;
    while (u_max * u_max * u_max / 3.0 + c2 * u_max * u_max + c1 * u_max < 45.0 && u_max < 64.0)
        u_max *= 2.0;

    const double head_int = adaptive_gk15(head, 0.0, T, 1.0e-14, 0);
    const double tail_int = adaptive_gk15(tail, 0.0, u_max, 1.0e-14, 0);
    return (head_int + tail_int) / M_PI;
}

double oracle_blockage_ratio(const nfbeam::Scenario &s, const nfbeam::Point &user, int samples)
{
    const auto inside = [&](double px, double py) {
        for (const nfbeam::Obstacle &o : s.obstacles)
            if (px >= o.x_min && px <= o.x_max && py >= o.y_min && py <= o.y_max)
                return true;
        return false;
    };
    int cut = 0;
    for (int n = 0; n < s.num_elements; ++n)
    {
        const double y0 = s.element_y(n);
        bool hit = false;
        for (int k = 0; k < samples && !hit; ++k)
        {
            const double t = (double)k / (samples - 1);
            hit = inside(t * user.x, y0 + t * (user.y - y0));
        }
        cut += hit ? 1 : 0;
    }
    return (double)cut / s.num_elements;
}

} // namespace nfbeam_tests
