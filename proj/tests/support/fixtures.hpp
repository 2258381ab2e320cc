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

#ifndef nfbeam_tests_fixtures_H
#define nfbeam_tests_fixtures_H

#include "nfbeam/scenario.hpp"

namespace nfbeam_tests
{

// 16-element array at 100 GHz with a small window; fast enough for per-test channel passes.
inline nfbeam::Scenario tiny_scenario()
{
    nfbeam::Scenario s;
    s.frequency_hz = 100.0e9;
    s.num_elements = 16;
    s.tx_power = 5.0;
    s.noise_power = 1.0;
    s.grid.y_halfspan = 0.3;
    s.grid.x_max = 1.0;
    s.grid.pad_factor = 8.0;
    return s;
}

// tiny_scenario plus one absorbing screen that shadows part of the array from above.
inline nfbeam::Scenario obstructed_scenario()
{
    nfbeam::Scenario s = tiny_scenario();
    s.obstacles.push_back({0.4, 0.5, 0.005, 0.2});
    return s;
}

} // namespace nfbeam_tests

#endif
