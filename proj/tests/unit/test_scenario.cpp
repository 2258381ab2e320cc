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

#include <doctest.h>

#include "nfbeam/scenario.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace nfbeam;
using nfbeam_tests::tiny_scenario;

TEST_CASE("scenario derived quantities")
{
    Scenario s;
    CHECK(s.wavelength() == doctest::Approx(0.002997924580).epsilon(1e-12));
    CHECK(s.pitch() == doctest::Approx(0.5 * s.wavelength()).epsilon(1e-15));
    CHECK(s.step_x() == doctest::Approx(s.wavelength()).epsilon(1e-15));
    CHECK(s.step_y() == doctest::Approx(0.25 * s.wavelength()).epsilon(1e-15));
    CHECK(s.wavenumber() == doctest::Approx(2.0 * M_PI / s.wavelength()).epsilon(1e-15));

    // centered array: outermost elements are symmetric, pitch apart
    CHECK(s.element_y(0) == doctest::Approx(-s.element_y(s.num_elements - 1)).epsilon(1e-12));
    CHECK(s.element_y(1) - s.element_y(0) == doctest::Approx(s.pitch()).epsilon(1e-12));
    CHECK(s.aperture() == doctest::Approx((s.num_elements - 1) * s.pitch()).epsilon(1e-12));

    // window: power of two, at least pad_factor times the scene
    const int m = s.window_size();
    CHECK(m == 32768);
    CHECK(m * s.step_y() >= s.grid.pad_factor * 2.0 * s.grid.y_halfspan);
    CHECK(s.window_y(m / 2) == doctest::Approx(0.0));

    // default grid covers x_max in wavelength steps, plane 0 included
    CHECK(s.num_planes() == 668);
}

TEST_CASE("scenario validation rejects inconsistent inputs")
{
    CHECK_NOTHROW(validate(tiny_scenario()));

    Scenario s = tiny_scenario();
    s.frequency_hz = -1.0;
    CHECK_THROWS_AS(validate(s), ParamError);

    s = tiny_scenario();
    s.num_elements = 0;
    CHECK_THROWS_AS(validate(s), ParamError);

    s = tiny_scenario();
    s.tx_power = 0.0;
    CHECK_THROWS_AS(validate(s), ParamError);

    s = tiny_scenario();
    s.grid.y_halfspan = -0.1;
    CHECK_THROWS_AS(validate(s), GridError);

    s = tiny_scenario();
    s.grid.pad_factor = 0.5;
    CHECK_THROWS_AS(validate(s), GridError);

    s = tiny_scenario();
    s.grid.y_halfspan = 0.001; // smaller than the array
    CHECK_THROWS_AS(validate(s), GeometryError);

    s = tiny_scenario();
    s.obstacles.push_back({0.5, 0.4, -0.1, 0.1}); // inverted x extent
    CHECK_THROWS_AS(validate(s), ObstacleError);

    s = tiny_scenario();
    s.obstacles.push_back({-0.2, 0.4, -0.1, 0.1}); // reaches behind the array
    CHECK_THROWS_AS(validate(s), ObstacleError);

    s = tiny_scenario();
    s.obstacles.push_back({0.3, 0.4, 0.0, 1.0}); // taller than the scene
    CHECK_THROWS_AS(validate(s), GeometryError);
}

TEST_CASE("obstacle mask covers the closed rectangle")
{
    Scenario s = tiny_scenario();
    s.obstacles.push_back({0.4, 0.5, -0.05, 0.08});

    const Eigen::ArrayXd inside = obstacle_mask(s, 0.45);
    const Eigen::ArrayXd at_edge = obstacle_mask(s, 0.5);
    const Eigen::ArrayXd outside = obstacle_mask(s, 0.51);

    CHECK(outside.minCoeff() == 1.0);
    CHECK(inside.minCoeff() == 0.0);
    CHECK(at_edge.minCoeff() == 0.0); // closed in x

    const int m = s.window_size();
    int zeros = 0;
    for (int j = 0; j < m; ++j)
        if (inside[j] == 0.0)
        {
            CHECK(s.window_y(j) >= -0.05 - 1e-9);
            CHECK(s.window_y(j) <= 0.08 + 1e-9);
            ++zeros;
        }
    const int lo = (int)std::ceil(-0.05 / s.step_y() - 1e-9);
    const int hi = (int)std::floor(0.08 / s.step_y() + 1e-9);
    CHECK(zeros == hi - lo + 1); // every grid node inside the closed interval, none outside
}

TEST_CASE("segment-rectangle intersection")
{
    const Obstacle o{1.0, 2.0, -1.0, 1.0};
    CHECK(o.cuts({0.0, 0.0}, {3.0, 0.0}));        // straight through
    CHECK(o.cuts({0.0, -2.0}, {3.0, 2.0}));       // diagonal through
    CHECK(!o.cuts({0.0, 0.0}, {0.9, 0.0}));       // stops short
    CHECK(!o.cuts({0.0, 2.0}, {3.0, 2.0}));       // parallel above
    CHECK(o.cuts({0.0, 1.0}, {3.0, 1.0}));        // grazes the top edge (closed)
    CHECK(o.cuts({1.5, 0.0}, {3.0, 0.0}));        // starts inside
    CHECK(o.cuts({0.0, 3.0}, {2.0, -1.0}));       // enters through the top edge
    CHECK(!o.cuts({0.0, 1.5}, {3.0, 1.05}));      // diagonal staying above the box
}

TEST_CASE("blockage ratio matches the dense-sampling oracle")
{
    Scenario s = tiny_scenario();
    s.obstacles.push_back({0.4, 0.5, 0.005, 0.2});

    SUBCASE("clear user")
    {
        const Point u{0.9, -0.25};
        CHECK(blockage_ratio(s, u) == doctest::Approx(nfbeam_tests::oracle_blockage_ratio(s, u)));
    }
    SUBCASE("partially shadowed user")
    {
        // shadow edge of the lower obstacle corner bisects the 16-element array
        const Point u{0.9, 0.009};
        const double r = blockage_ratio(s, u);
        CHECK(r == doctest::Approx(0.5));
        CHECK(r == doctest::Approx(nfbeam_tests::oracle_blockage_ratio(s, u)));
    }
    SUBCASE("fully shadowed user")
    {
        const Point u{0.55, 0.1}; // right behind the screen
        CHECK(blockage_ratio(s, u) == doctest::Approx(1.0));
        CHECK(nfbeam_tests::oracle_blockage_ratio(s, u) == doctest::Approx(1.0));
    }
    SUBCASE("two obstacles accumulate")
    {
        Scenario s2 = s;
        s2.obstacles.push_back({0.4, 0.5, -0.2, -0.005});
        const Point u{0.9, 0.0};
        CHECK(blockage_ratio(s2, u) == doctest::Approx(nfbeam_tests::oracle_blockage_ratio(s2, u)));
        CHECK(blockage_ratio(s2, u) >= blockage_ratio(s, u));
    }
}

TEST_CASE("scenario JSON roundtrip and validation")
{
    Scenario s = tiny_scenario();
    s.obstacles.push_back({0.4, 0.5, -0.1, 0.1});
    s.spacing = 0.8 * s.wavelength();

    const Scenario r = scenario_from_json(scenario_to_json(s));
    CHECK(r.frequency_hz == s.frequency_hz);
    CHECK(r.num_elements == s.num_elements);
    CHECK(r.pitch() == doctest::Approx(s.pitch()).epsilon(1e-15));
    CHECK(r.tx_power == s.tx_power);
    CHECK(r.obstacles.size() == 1);
    CHECK(r.obstacles[0].y_max == s.obstacles[0].y_max);
    CHECK(r.grid.pad_factor == s.grid.pad_factor);

    CHECK_THROWS_AS((void)scenario_from_json("not json"), SpecError);
    CHECK_THROWS_AS((void)scenario_from_json("[1,2]"), SpecError);
    CHECK_THROWS_AS((void)scenario_from_json(R"({"frequency_hz": "fast"})"), SpecError);
    CHECK_THROWS_AS((void)scenario_from_json(R"({"obstacles": [[1, 2, 3]]})"), SpecError);
    CHECK_THROWS_AS((void)scenario_from_json(R"({"num_elements": -3})"), ParamError);
    CHECK_THROWS_AS((void)load_scenario("/nonexistent/path.json"), IOError);
}
