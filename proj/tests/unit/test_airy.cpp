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

#include "nfbeam/airy.hpp"
#include "../support/oracles.hpp"

using namespace nfbeam;

TEST_CASE("quadrature oracle reproduces tabulated Airy values")
{
    // high-precision references (DLMF tables / 30-digit evaluations)
    CHECK(nfbeam_tests::oracle_airy_ai(0.0) == doctest::Approx(0.3550280538878172392600632).epsilon(1e-13));
    CHECK(nfbeam_tests::oracle_airy_ai(1.0) == doctest::Approx(0.1352924163128814155241474).epsilon(1e-13));
    CHECK(nfbeam_tests::oracle_airy_ai(-1.0) == doctest::Approx(0.5355608832923521187995166).epsilon(1e-13));
    CHECK(nfbeam_tests::oracle_airy_ai(2.0) == doctest::Approx(0.0349241304232743791353221).epsilon(1e-12));
    // first zero of Ai
    CHECK(std::abs(nfbeam_tests::oracle_airy_ai(-2.338107410459767038489197)) < 1e-13);
}

TEST_CASE("airy_ai agrees with the quadrature oracle across the working range")
{
    double worst = 0.0;
    for (double x = -12.0; x <= 4.0001; x += 0.03125) // steps hit the series/asymptotic seams exactly
    {
        const double err = std::abs(airy_ai(x) - nfbeam_tests::oracle_airy_ai(x));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("airy_ai matches frozen references at the seams and far tails")
{
    CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172392600632).epsilon(1e-14));
    CHECK(airy_ai(-6.0) == doctest::Approx(-0.3291451736298231052314486).epsilon(1e-9));
    CHECK(airy_ai(-10.0) == doctest::Approx(0.0402412384864431906894303).epsilon(1e-9));
    CHECK(airy_ai(10.0) == doctest::Approx(1.1047532552898685933550e-10).epsilon(1e-9));
    CHECK(std::abs(airy_ai(-2.338107410459767038489197)) < 1e-12);
}

TEST_CASE("airy_ai input validation")
{
    CHECK_THROWS_AS((void)airy_ai(std::nan("")), DomainError);
    AiryOptions bad;
    bad.max_terms = 2;
    CHECK_THROWS_AS((void)airy_ai(1.0, bad), ParamError);
}

TEST_CASE("airy_envelope validation and values")
{
    Eigen::ArrayXd y(3);
    y << -0.05, 0.0, 0.05;

    const Eigen::ArrayXd env = airy_envelope(y, 0.1, -0.5);
    CHECK(env[1] == doctest::Approx(0.3550280538878172).epsilon(1e-13));
    CHECK(env[0] == doctest::Approx(airy_ai(-0.5) * std::exp(0.25)).epsilon(1e-13));
    CHECK(env[2] == doctest::Approx(airy_ai(0.5) * std::exp(-0.25)).epsilon(1e-13));

    // negative scale mirrors the envelope
    const Eigen::ArrayXd env_neg = airy_envelope(y, -0.1, -0.5);
    CHECK(env_neg[0] == doctest::Approx(env[2]).epsilon(1e-13));

    CHECK_THROWS_AS((void)airy_envelope(y, 1.0e-9, -0.5), DegenerateScaleError);
    CHECK_THROWS_AS((void)airy_envelope(y, 0.1, +0.1), ParamError);
    CHECK_THROWS_AS((void)airy_envelope(y, std::nan(""), -0.5), DomainError);
}
