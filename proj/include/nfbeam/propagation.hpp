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

#ifndef nfbeam_propagation_H
#define nfbeam_propagation_H

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "nfbeam/scenario.hpp"

namespace nfbeam
{

// One transverse plane of the scalar field, sampled on the padded window.
struct Field
{
    double x = 0.0;           // plane coordinate [m]
    Eigen::VectorXcd samples; // window_size() complex samples, sample j at window_y(j)
};

// Angular-spectrum propagator. Field planes advance through homogeneous space by
// multiplying the plane-wave spectrum with exp(-j*dist*sqrt(kappa^2 - kappa_y^2))
// (propagating modes) and exp(-dist*sqrt(kappa_y^2 - kappa^2)) (evanescent modes).
// Obstacle masking acts in the spatial domain, so free-space hops compose exactly
// and the propagator jumps directly between planes where masking or output occurs.
//
// Instances own FFT plans and scratch buffers and are not safe for concurrent use;
// create one Propagator per thread.
class Propagator
{
  public:
    explicit Propagator(const Scenario &s); // validates the scenario
    ~Propagator();
    Propagator(const Propagator &) = delete;
    Propagator &operator=(const Propagator &) = delete;

    // Field at x = 0 radiated by the array: each element injects weight/dy into its
    // nearest window cell, then the raised-cosine edge taper (outer 10% of the padded
    // window on each side) is applied once.
    Field aperture_field(const Eigen::VectorXcd &weights) const;

    // Single hop of length dist > 0 followed by obstacle masking at the target plane.
    void step(Field &f, double dist) const;

    // Advance to x_target >= f.x, masking at every intermediate grid plane covered by
    // an obstacle and hopping freely in between. x_target is snapped to the nearest
    // grid plane.
    void advance(Field &f, double x_target) const;

    // Field value at (f.x, y), linear interpolation between window samples.
    std::complex<double> probe(const Field &f, double y) const;

    // Equivalent channel matrix H (num_elements x users.size()): entry (n, u) is the
    // conjugated field element n excites at user u, so a weight vector w delivers the
    // complex amplitude h_u^H w. Users snap to their nearest grid plane in x.
    // Throws UserInsideObstacleError / RangeError for invalid user positions.
    Eigen::MatrixXcd channel_matrix(const std::vector<Point> &users) const;

    const Scenario &scenario() const { return m_scenario; }

  private:
    struct Impl;
    Scenario m_scenario;
    std::unique_ptr<Impl> m;
};

// channel_matrix split over worker threads (each worker owns a private Propagator).
Eigen::MatrixXcd channel_matrix(const Scenario &s, const std::vector<Point> &users, int threads = 1);

struct RecordOptions
{
    int x_stride = 1;  // keep every x_stride-th plane
    bool crop = true;  // keep only rows with |y| <= y_halfspan
};

// Field samples over all recorded planes; samples(i, j) is plane xs[j] at ys[i].
struct FieldRecord
{
    std::vector<double> xs;   // recorded plane coordinates [m]
    Eigen::VectorXd ys;       // recorded transverse coordinates [m]
    Eigen::MatrixXcd samples; // ys.size() x xs.size()
};

// Full forward sweep x = 0 .. x_max with masking at every plane.
FieldRecord propagate_record(const Scenario &s, const Eigen::VectorXcd &weights, const RecordOptions &opt = {});

// Independent reference: direct Rayleigh-Sommerfeld integral from the samples of src
// to each target, K(eta, X) = -(j*kappa/2) * (X/r) * H1_2(kappa*r), r = sqrt(eta^2 + X^2),
// field(target) = sum_j src[j] * K(y_t - y_j, x_t - src.x) * dy. Obstacles between the
// planes are ignored; targets must lie strictly beyond the source plane (RangeError).
Eigen::VectorXcd rs_transfer(const Scenario &s, const Field &src, const std::vector<Point> &targets);

} // namespace nfbeam

#endif
