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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <fftw3.h>

#include "nfbeam/propagation.hpp"

namespace nfbeam
{

static std::mutex fftw_planner_mutex; // FFTW plan creation/destruction is not thread safe

struct Propagator::Impl
{
    int m = 0;            // window size
    double dy = 0.0;      // sample spacing [m]
    double y0 = 0.0;      // coordinate of sample 0 [m]
    double dx = 0.0;      // plane spacing [m]
    double kappa = 0.0;   // wavenumber [1/m]
    int last_plane = 0;   // index of the final simulated plane

    Eigen::ArrayXd kappa_y; // spatial frequencies in FFT order [1/m]
    Eigen::ArrayXd taper;   // aperture edge taper
    std::set<int> masked;   // plane indices covered by at least one obstacle

    fftw_complex *buf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;

    mutable double cached_dist = -1.0;      // transfer function memo for repeated hop lengths
    mutable Eigen::VectorXcd cached_transfer;

    const Eigen::VectorXcd &transfer(double dist) const
    {
        if (dist != cached_dist)
        {
            cached_transfer.resize(m);
            for (int j = 0; j < m; ++j)
            {
                const double kk = kappa * kappa - kappa_y[j] * kappa_y[j];
                cached_transfer[j] = kk >= 0.0
                                         ? std::polar(1.0, -dist * std::sqrt(kk))              // propagating
                                         : std::complex<double>(std::exp(-dist * std::sqrt(-kk)), 0.0); // evanescent
            }
            cached_dist = dist;
        }
        return cached_transfer;
    }

    // In-place free-space hop of the given distance.
    void hop(Eigen::VectorXcd &samples, double dist) const
    {
        Eigen::Map<Eigen::VectorXcd> work((std::complex<double> *)buf, m);
        work = samples;
        fftw_execute(fwd);
        work.array() *= transfer(dist).array();
        fftw_execute(bwd);
        samples = work / (double)m; // FFTW transforms are unnormalized
    }
};

Propagator::Propagator(const Scenario &s) : m_scenario(s), m(new Impl)
{
    validate(s);
    m->m = s.window_size();
    m->dy = s.step_y();
    m->y0 = s.window_y(0);
    m->dx = s.step_x();
    m->kappa = s.wavenumber();
    m->last_plane = s.num_planes() - 1;

    m->kappa_y.resize(m->m);
    const double dk = 2.0 * M_PI / (m->m * m->dy);
    for (int j = 0; j < m->m; ++j)
        m->kappa_y[j] = (j < m->m / 2 ? j : j - m->m) * dk;

    m->taper = Eigen::ArrayXd::Ones(m->m);
    const int ramp = m->m / 10; // raised cosine over the outer 10% on each side
    for (int j = 0; j < ramp; ++j)
    {
        const double t = 0.5 * (1.0 - std::cos(M_PI * j / (double)ramp));
        m->taper[j] = t;
        m->taper[m->m - 1 - j] = t;
    }

    for (const Obstacle &o : s.obstacles)
    {
        const int i0 = std::max(0, (int)std::ceil(o.x_min / m->dx - 1.0e-9));
        const int i1 = std::min(m->last_plane, (int)std::floor(o.x_max / m->dx + 1.0e-9));
        for (int i = i0; i <= i1; ++i)
            m->masked.insert(i);
    }

    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    m->buf = fftw_alloc_complex(m->m);
    m->fwd = fftw_plan_dft_1d(m->m, m->buf, m->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    m->bwd = fftw_plan_dft_1d(m->m, m->buf, m->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Propagator::~Propagator()
{
    std::lock_guard<std::mutex> lock(fftw_planner_mutex);
    fftw_destroy_plan(m->fwd);
    fftw_destroy_plan(m->bwd);
    fftw_free(m->buf);
}

Field Propagator::aperture_field(const Eigen::VectorXcd &weights) const
{
    const Scenario &s = m_scenario;
    if (weights.size() != s.num_elements)
        throw ParamError("aperture_field: weight count does not match num_elements");

    Field f;
    f.x = 0.0;
    f.samples = Eigen::VectorXcd::Zero(m->m);
    for (int n = 0; n < s.num_elements; ++n)
    {
        const long j = m->m / 2 + std::lround(s.element_y(n) / m->dy);
        f.samples[j] += weights[n] / m->dy; // unit-area injection into the nearest cell
    }
    f.samples.array() *= m->taper;
    if (m->masked.count(0))
        f.samples.array() *= obstacle_mask(s, 0.0).cast<std::complex<double>>();
    return f;
}

void Propagator::step(Field &f, double dist) const
{
    if (!(dist > 0.0))
        throw RangeError("step: hop distance must be positive");
    m->hop(f.samples, dist);
    f.x += dist;
    const int i = (int)std::llround(f.x / m->dx);
    if (std::abs(f.x - i * m->dx) < 1.0e-9 && m->masked.count(i))
        f.samples.array() *= obstacle_mask(m_scenario, i * m->dx).cast<std::complex<double>>();
}

void Propagator::advance(Field &f, double x_target) const
{
    const int i_cur = (int)std::llround(f.x / m->dx);
    const int i_tgt = (int)std::llround(x_target / m->dx);
    if (i_tgt < i_cur)
        throw RangeError("advance: target plane lies behind the field plane");
    if (i_tgt > m->last_plane)
        throw RangeError("advance: target plane beyond x_max");

    int i_prev = i_cur;
    auto it = m->masked.upper_bound(i_cur);
    while (true)
    {
        const int i_next = (it != m->masked.end() && *it < i_tgt) ? *it : i_tgt;
        if (i_next > i_prev)
        {
            m->hop(f.samples, (i_next - i_prev) * m->dx);
            f.x = i_next * m->dx;
            if (m->masked.count(i_next))
                f.samples.array() *= obstacle_mask(m_scenario, f.x).cast<std::complex<double>>();
            i_prev = i_next;
        }
        if (i_next == i_tgt)
            break;
        ++it;
    }
    f.x = i_tgt * m->dx;
}

std::complex<double> Propagator::probe(const Field &f, double y) const
{
    const double jf = (y - m->y0) / m->dy;
    const int j0 = (int)std::floor(jf);
    if (j0 < 0 || j0 + 1 >= m->m)
        throw RangeError("probe: coordinate outside the simulation window");
    const double a = jf - j0;
    return (1.0 - a) * f.samples[j0] + a * f.samples[j0 + 1];
}

// Shared worker: channel rows for elements [n_begin, n_end).
static void channel_rows(const Scenario &s, const std::vector<Point> &users, int n_begin, int n_end,
                         Eigen::MatrixXcd &h)
{
    Propagator prop(s);

    // users grouped by snapped plane index, visited in range order
    std::map<int, std::vector<int>> by_plane;
    const double dx = s.step_x();
    for (std::size_t u = 0; u < users.size(); ++u)
        by_plane[(int)std::llround(users[u].x / dx)].push_back((int)u);

    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(s.num_elements);
    for (int n = n_begin; n < n_end; ++n)
    {
        unit[n] = 1.0;
        Field f = prop.aperture_field(unit);
        unit[n] = 0.0;
        for (const auto &[plane, idx] : by_plane)
        {
            prop.advance(f, plane * dx);
            for (int u : idx)
                h(n, u) = std::conj(prop.probe(f, users[u].y));
        }
    }
}

Eigen::MatrixXcd Propagator::channel_matrix(const std::vector<Point> &users) const
{
    return nfbeam::channel_matrix(m_scenario, users, 1);
}

Eigen::MatrixXcd channel_matrix(const Scenario &s, const std::vector<Point> &users, int threads)
{
    validate(s);
    const double dx = s.step_x();
    const int last = s.num_planes() - 1;
    for (const Point &u : users)
    {
        const int i = (int)std::llround(u.x / dx);
        if (u.x < -1.0e-9 || i > last)
            throw RangeError("channel_matrix: user plane outside the simulated range");
        if (std::abs(u.y) > s.grid.y_halfspan)
            throw RangeError("channel_matrix: user outside the scene half-width");
        if (inside_any_obstacle(s, u.x, u.y))
            throw UserInsideObstacleError("channel_matrix: user lies inside an obstacle");
    }

    Eigen::MatrixXcd h(s.num_elements, (Eigen::Index)users.size());
    threads = std::max(1, std::min(threads, s.num_elements));
    if (threads == 1)
    {
        channel_rows(s, users, 0, s.num_elements, h);
        return h;
    }

    std::vector<std::thread> pool;
    const int chunk = (s.num_elements + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
    {
        const int n0 = t * chunk;
        const int n1 = std::min(s.num_elements, n0 + chunk);
        if (n0 < n1)
            pool.emplace_back([&, n0, n1] { channel_rows(s, users, n0, n1, h); });
    }
    for (std::thread &t : pool)
        t.join();
    return h;
}

FieldRecord propagate_record(const Scenario &s, const Eigen::VectorXcd &weights, const RecordOptions &opt)
{
    if (opt.x_stride < 1)
        throw ParamError("propagate_record: x_stride must be >= 1");
    Propagator prop(s);
    Field f = prop.aperture_field(weights);

    const int m = s.window_size();
    int j_lo = 0, j_hi = m - 1;
    if (opt.crop)
    {
        j_lo = std::max(0, (int)std::ceil((-s.grid.y_halfspan - s.window_y(0)) / s.step_y() - 1.0e-9));
        j_hi = std::min(m - 1, (int)std::floor((s.grid.y_halfspan - s.window_y(0)) / s.step_y() + 1.0e-9));
    }
    const int rows = j_hi - j_lo + 1;

    const int last = s.num_planes() - 1;
    std::vector<int> keep;
    for (int i = 0; i <= last; ++i)
        if (i % opt.x_stride == 0 || i == last)
            keep.push_back(i);

    FieldRecord rec;
    rec.ys.resize(rows);
    for (int r = 0; r < rows; ++r)
        rec.ys[r] = s.window_y(j_lo + r);
    rec.samples.resize(rows, (Eigen::Index)keep.size());

    std::size_t col = 0;
    for (int i = 0; i <= last; ++i)
    {
        if (i > 0)
            prop.step(f, s.step_x());
        if (col < keep.size() && keep[col] == i)
        {
            rec.xs.push_back(i * s.step_x());
            rec.samples.col((Eigen::Index)col) = f.samples.segment(j_lo, rows);
            ++col;
        }
    }
    return rec;
}

Eigen::VectorXcd rs_transfer(const Scenario &s, const Field &src, const std::vector<Point> &targets)
{
    const double kappa = s.wavenumber();
    const double dy = s.step_y();
    const int m = (int)src.samples.size();

    Eigen::VectorXcd out((Eigen::Index)targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t)
    {
        const double big_x = targets[t].x - src.x;
        if (!(big_x > 0.0))
            throw RangeError("rs_transfer: targets must lie beyond the source plane");
        std::complex<double> acc = 0.0;
        for (int j = 0; j < m; ++j)
        {
            const std::complex<double> e = src.samples[j];
            if (e == 0.0)
                continue;
            const double eta = targets[t].y - (s.window_y(0) + j * dy);
            const double r = std::hypot(eta, big_x);
            const double z = kappa * r;
            const double j1 = std::cyl_bessel_j(1.0, z);
            const double y1 = std::cyl_neumann(1.0, z);
            // K = -(j*kappa/2) * (X/r) * H1_2(kappa*r), H1_2 = J1 - j*Y1
            const std::complex<double> kern = 0.5 * kappa * (big_x / r) * std::complex<double>(-y1, -j1);
            acc += e * kern;
        }
        out[(Eigen::Index)t] = acc * dy;
    }
    return out;
}

} // namespace nfbeam
