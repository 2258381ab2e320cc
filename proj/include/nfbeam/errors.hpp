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

#ifndef nfbeam_errors_H
#define nfbeam_errors_H

#include <stdexcept>
#include <string>

namespace nfbeam
{

// Base class of every library error; kind() returns the concrete class name for machine-readable reports.
class Error : public std::runtime_error
{
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
    virtual const char *kind() const { return "Error"; }
};

#define NFBEAM_ERROR_CLASS(NAME)                                                                                       \
    class NAME : public Error                                                                                          \
    {                                                                                                                  \
      public:                                                                                                          \
        explicit NAME(const std::string &msg) : Error(msg) {}                                                          \
        const char *kind() const override { return #NAME; }                                                           \
    }

NFBEAM_ERROR_CLASS(GeometryError);            // array or user placement inconsistent with the simulation window
NFBEAM_ERROR_CLASS(ObstacleError);            // malformed obstacle rectangle
NFBEAM_ERROR_CLASS(GridError);                // non-positive or inconsistent grid parameters
NFBEAM_ERROR_CLASS(ParamError);               // invalid waveform, codebook or solver parameter
NFBEAM_ERROR_CLASS(RangeError);               // coordinate outside the simulated region
NFBEAM_ERROR_CLASS(DomainError);              // non-finite input to a numerical routine
NFBEAM_ERROR_CLASS(DegenerateScaleError);     // Airy transverse scale below the representable floor
NFBEAM_ERROR_CLASS(ZeroVectorError);          // power normalization of an all-zero vector
NFBEAM_ERROR_CLASS(ZeroChannelError);         // matched-filter weights requested for a zero channel
NFBEAM_ERROR_CLASS(EmptyCodebookError);       // search over a codebook with no entries
NFBEAM_ERROR_CLASS(UserInsideObstacleError);  // channel requested for a point inside an obstacle
NFBEAM_ERROR_CLASS(QuadratureError);          // adaptive quadrature failed to reach the requested tolerance
NFBEAM_ERROR_CLASS(SpecError);                // malformed configuration file
NFBEAM_ERROR_CLASS(IOError);                  // file could not be read or written

#undef NFBEAM_ERROR_CLASS

} // namespace nfbeam

#endif
