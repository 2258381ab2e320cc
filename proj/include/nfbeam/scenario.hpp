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

#ifndef nfbeam_scenario_H
#define nfbeam_scenario_H

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfbeam/errors.hpp"

namespace nfbeam
{

inline constexpr double speed_of_light = 299792458.0; // [m/s]

// Geometry convention: the linear array lies on the y-axis at x = 0, centered on the origin.
// Fields propagate toward positive x. Obstacles are perfectly absorbing, axis-aligned rectangles.

struct Point
{
    double x = 0.0; // range coordinate [m]
    double y = 0.0; // transverse coordinate [m]
};

struct Obstacle
{
    double x_min = 0.0, x_max = 0.0; // range extent [m]
    double y_min = 0.0, y_max = 0.0; // transverse extent [m]

    bool contains(double x, double y) const; // closed rectangle
    bool cuts(const Point &a, const Point &b) const; // segment-rectangle intersection
};

struct GridParams
{
    double dx = 0.0;          // propagation step [m], 0 selects one wavelength
    double dy = 0.0;          // transverse sample spacing [m], 0 selects lambda/4
    double y_halfspan = 0.5;  // physical half-width of the scene [m]
    double x_max = 2.0;       // range of the last simulated plane [m]
    double pad_factor = 16.0; // FFT window width as a multiple of the scene width
};

struct Scenario
{
    double frequency_hz = 100.0e9; // carrier [Hz]
    int num_elements = 266;        // array elements N
    double spacing = 0.0;          // element pitch [m], 0 selects lambda/2
    double tx_power = 5.0;         // total transmit power P
    double noise_power = 1.0;      // receiver noise power
    std::vector<Obstacle> obstacles;
    GridParams grid;

    double wavelength() const;
    double wavenumber() const;     // 2*pi/lambda
    double pitch() const;          // effective element spacing [m]
    double aperture() const;       // (N-1)*pitch [m]
    double element_y(int n) const; // y-coordinate of element n, array centered on y = 0
    double step_x() const;         // effective dx [m]
    double step_y() const;         // effective dy [m]
    int num_planes() const;        // planes x = i*dx for i in [0, num_planes)
    int window_size() const;       // padded FFT length, power of two
    double window_y(int j) const;  // y-coordinate of window sample j, (j - M/2)*dy
};

// Throws GridError / ObstacleError / GeometryError / ParamError on the first violated constraint.
void validate(const Scenario &s);

// Transmission factor (1 outside, 0 inside any obstacle) for every window sample of the plane at x.
Eigen::ArrayXd obstacle_mask(const Scenario &s, double x);

bool inside_any_obstacle(const Scenario &s, double x, double y);

// Fraction of element-to-user line segments cut by at least one obstacle, in [0, 1].
double blockage_ratio(const Scenario &s, const Point &user);

// JSON (de)serialization; parsing applies validate() and throws SpecError on malformed documents.
Scenario scenario_from_json(const std::string &text);
std::string scenario_to_json(const Scenario &s);
Scenario load_scenario(const std::string &path);
void save_scenario(const Scenario &s, const std::string &path);

} // namespace nfbeam

#endif
