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
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nfbeam/scenario.hpp"

namespace nfbeam
{

static constexpr double coord_tol = 1.0e-9; // [m], snap tolerance for plane membership tests

bool Obstacle::contains(double x, double y) const
{
    return x >= x_min - coord_tol && x <= x_max + coord_tol && y >= y_min - coord_tol && y <= y_max + coord_tol;
}

// Liang-Barsky clip of segment a-b against the closed rectangle.
bool Obstacle::cuts(const Point &a, const Point &b) const
{
    const double dx = b.x - a.x, dy = b.y - a.y;
    double t0 = 0.0, t1 = 1.0;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - x_min, x_max - a.x, a.y - y_min, y_max - a.y};
    for (int i = 0; i < 4; ++i)
    {
        if (p[i] == 0.0)
        {
            if (q[i] < 0.0)
                return false; // parallel and outside
        }
        else
        {
            const double t = q[i] / p[i];
            if (p[i] < 0.0)
                t0 = std::max(t0, t);
            else
                t1 = std::min(t1, t);
        }
    }
    return t0 <= t1;
}

double Scenario::wavelength() const
{
    return speed_of_light / frequency_hz;
}

double Scenario::wavenumber() const
{
    return 2.0 * M_PI / wavelength();
}

double Scenario::pitch() const
{
    return spacing > 0.0 ? spacing : 0.5 * wavelength();
}

double Scenario::aperture() const
{
    return (num_elements - 1) * pitch();
}

double Scenario::element_y(int n) const
{
    return (n - 0.5 * (num_elements - 1)) * pitch();
}

double Scenario::step_x() const
{
    return grid.dx > 0.0 ? grid.dx : wavelength();
}

double Scenario::step_y() const
{
    return grid.dy > 0.0 ? grid.dy : 0.25 * wavelength();
}

int Scenario::num_planes() const
{
    return (int)std::floor(grid.x_max / step_x() + coord_tol) + 1;
}

int Scenario::window_size() const
{
    const double cells = grid.pad_factor * 2.0 * grid.y_halfspan / step_y();
    int m = 16;
    while ((double)m < cells)
        m *= 2;
    return m;
}

double Scenario::window_y(int j) const
{
    return (j - window_size() / 2) * step_y();
}

void validate(const Scenario &s)
{
    if (!(s.frequency_hz > 0.0) || !std::isfinite(s.frequency_hz))
        throw ParamError("scenario: frequency_hz must be positive");
    if (s.num_elements < 1)
        throw ParamError("scenario: num_elements must be >= 1");
    if (!(s.pitch() > 0.0))
        throw ParamError("scenario: element spacing must be positive");
    if (!(s.tx_power > 0.0) || !(s.noise_power > 0.0))
        throw ParamError("scenario: tx_power and noise_power must be positive");

    if (!(s.step_x() > 0.0) || !(s.step_y() > 0.0))
        throw GridError("scenario: grid steps must be positive");
    if (!(s.grid.y_halfspan > 0.0))
        throw GridError("scenario: y_halfspan must be positive");
    if (!(s.grid.x_max > 0.0))
        throw GridError("scenario: x_max must be positive");
    if (!(s.grid.pad_factor >= 1.0))
        throw GridError("scenario: pad_factor must be >= 1");

    const double edge = 0.5 * s.aperture();
    if (edge > s.grid.y_halfspan + coord_tol)
        throw GeometryError("scenario: array extends beyond the scene half-width");

    for (const Obstacle &o : s.obstacles)
    {
        if (!(o.x_min < o.x_max) || !(o.y_min < o.y_max))
            throw ObstacleError("scenario: obstacle rectangle has non-positive extent");
        if (o.x_min < -coord_tol)
            throw ObstacleError("scenario: obstacle must not extend behind the array plane");
        if (o.y_min < -s.grid.y_halfspan - coord_tol || o.y_max > s.grid.y_halfspan + coord_tol)
            throw GeometryError("scenario: obstacle extends beyond the scene half-width");
    }
}

Eigen::ArrayXd obstacle_mask(const Scenario &s, double x)
{
    const int m = s.window_size();
    const double dy = s.step_y();
    const double y0 = s.window_y(0);
    Eigen::ArrayXd mask = Eigen::ArrayXd::Ones(m);
    for (const Obstacle &o : s.obstacles)
    {
        if (x < o.x_min - coord_tol || x > o.x_max + coord_tol)
            continue;
        const int j0 = std::max(0, (int)std::ceil((o.y_min - y0) / dy - coord_tol));
        const int j1 = std::min(m - 1, (int)std::floor((o.y_max - y0) / dy + coord_tol));
        for (int j = j0; j <= j1; ++j)
            mask[j] = 0.0;
    }
    return mask;
}

bool inside_any_obstacle(const Scenario &s, double x, double y)
{
    return std::any_of(s.obstacles.begin(), s.obstacles.end(),
                       [&](const Obstacle &o) { return o.contains(x, y); });
}

double blockage_ratio(const Scenario &s, const Point &user)
{
    int cut = 0;
    for (int n = 0; n < s.num_elements; ++n)
    {
        const Point a{0.0, s.element_y(n)};
        const bool hit = std::any_of(s.obstacles.begin(), s.obstacles.end(),
                                     [&](const Obstacle &o) { return o.cuts(a, user); });
        cut += hit ? 1 : 0;
    }
    return (double)cut / (double)s.num_elements;
}

// ------------------------------------------------- JSON -------------------------------------------------

using nlohmann::json;

static double get_number(const json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw SpecError(std::string("scenario: '") + key + "' must be a number");
    return j.at(key).get<double>();
}

static Obstacle obstacle_from_json(const json &j)
{
    Obstacle o;
    if (j.is_array())
    {
        if (j.size() != 4)
            throw SpecError("scenario: obstacle arrays must hold [x_min, x_max, y_min, y_max]");
        o.x_min = j.at(0).get<double>();
        o.x_max = j.at(1).get<double>();
        o.y_min = j.at(2).get<double>();
        o.y_max = j.at(3).get<double>();
    }
    else if (j.is_object())
    {
        o.x_min = get_number(j, "x_min", 0.0);
        o.x_max = get_number(j, "x_max", 0.0);
        o.y_min = get_number(j, "y_min", 0.0);
        o.y_max = get_number(j, "y_max", 0.0);
    }
    else
        throw SpecError("scenario: obstacle entries must be arrays or objects");
    return o;
}

Scenario scenario_from_json(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::exception &e)
    {
        throw SpecError(std::string("scenario: JSON parse failed: ") + e.what());
    }
    if (!doc.is_object())
        throw SpecError("scenario: document root must be an object");

    Scenario s;
    s.frequency_hz = get_number(doc, "frequency_hz", s.frequency_hz);
    if (doc.contains("num_elements"))
        s.num_elements = doc.at("num_elements").get<int>();
    const double ratio = get_number(doc, "spacing_over_lambda", 0.5);
    s.spacing = (ratio == 0.5) ? 0.0 : ratio * s.wavelength();
    s.tx_power = get_number(doc, "tx_power", s.tx_power);
    s.noise_power = get_number(doc, "noise_power", s.noise_power);

    if (doc.contains("obstacles"))
    {
        if (!doc.at("obstacles").is_array())
            throw SpecError("scenario: 'obstacles' must be an array");
        for (const json &jo : doc.at("obstacles"))
            s.obstacles.push_back(obstacle_from_json(jo));
    }
    if (doc.contains("grid"))
    {
        const json &g = doc.at("grid");
        if (!g.is_object())
            throw SpecError("scenario: 'grid' must be an object");
        s.grid.dx = get_number(g, "dx", s.grid.dx);
        s.grid.dy = get_number(g, "dy", s.grid.dy);
        s.grid.y_halfspan = get_number(g, "y_halfspan", s.grid.y_halfspan);
        s.grid.x_max = get_number(g, "x_max", s.grid.x_max);
        s.grid.pad_factor = get_number(g, "pad_factor", s.grid.pad_factor);
    }

    validate(s);
    return s;
}

std::string scenario_to_json(const Scenario &s)
{
    json doc;
    doc["frequency_hz"] = s.frequency_hz;
    doc["num_elements"] = s.num_elements;
    doc["spacing_over_lambda"] = s.pitch() / s.wavelength();
    doc["tx_power"] = s.tx_power;
    doc["noise_power"] = s.noise_power;
    doc["obstacles"] = json::array();
    for (const Obstacle &o : s.obstacles)
        doc["obstacles"].push_back({{"x_min", o.x_min}, {"x_max", o.x_max}, {"y_min", o.y_min}, {"y_max", o.y_max}});
    doc["grid"] = {{"dx", s.grid.dx},
                   {"dy", s.grid.dy},
                   {"y_halfspan", s.grid.y_halfspan},
                   {"x_max", s.grid.x_max},
                   {"pad_factor", s.grid.pad_factor}};
    return doc.dump(2);
}

Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IOError("scenario: cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json(ss.str());
}

void save_scenario(const Scenario &s, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw IOError("scenario: cannot open '" + path + "' for writing");
    out << scenario_to_json(s) << "\n";
}

} // namespace nfbeam
