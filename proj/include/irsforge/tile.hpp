// SPDX-License-Identifier: Apache-2.0
//
// irs-forge  Numerical toolkit for intelligent reflecting surfaces
// Copyright (C) 2026 the irs-forge authors
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
//
// Far-field response of a rectangular reflecting tile, either as a continuous
// aperture or as a grid of discrete unit cells with a programmable phase
// profile.  All lengths are in wavelength units (lambda = 1) except where a
// wavelength in meters is passed explicitly; response values are g/lambda,
// so |value|^2 in dB matches the usual pattern plots.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "irsforge/angles.hpp"

namespace irsforge {

// Rectangular tile of Qx x Qy unit cells with pitch (dx, dy) and square
// active element of side l_uc inside each cell.  Side lengths are lx = Qx*dx,
// ly = Qy*dy.  Cell counts must be positive and even so the index set
// {-Q/2+1, ..., Q/2} is symmetric around the tile center.
struct TileGeometry
{
    double lx = 0.0, ly = 0.0;
    double dx = 0.0, dy = 0.0;
    double l_uc = 0.0;
    int qx = 0, qy = 0;

    static TileGeometry from_counts(int qx, int qy, double dx, double dy, double l_uc);
    static TileGeometry from_size(double lx, double ly, double d, double l_uc);

    // Signed cell offset n_x for 0-based column index, in {-Q/2+1, ..., Q/2}.
    static int cell_offset(int i, int q) { return i - q / 2 + 1; }
};

// Design point of a phase profile: the incident and reflected directions the
// tile is steered for, plus the common phase offset beta0.
struct SteeringTarget
{
    IncidentAngle inc;
    ReflectionAngle refl;
    double beta0 = 0.0;
};

// Uniform phase quantizer with 2^bits codewords on [0, 2*pi); bits == 0
// means ideal (no quantization).
struct PhaseQuantizer
{
    int bits = 0;

    bool ideal() const { return bits <= 0; }
    double quantize(double beta) const;
};

// Complex tile response g/lambda.  magnitude_db() is 20*log10|g/lambda|,
// i.e. |g/lambda|^2 expressed in dB.
struct TileResponse
{
    std::complex<double> value{0.0, 0.0};

    double magnitude() const { return std::abs(value); }
    double phase() const { return std::arg(value); }
    double magnitude_db() const;
};

class EvanescentError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Response of a continuous tile of size lx x ly carrying the linear phase
// profile that steers (target.inc, target.refl) into alignment; closed form
// with separable sinc factors.
TileResponse continuous_response(double lx, double ly, const SteeringTarget &target,
                                 const IncidentAngle &inc, const ReflectionAngle &obs, double tau);

// Same quantity evaluated from the physical-optics radiation integral by
// tensor-product Gauss-Legendre quadrature with resolution doubling until
// successive estimates agree to rel_tol.  Accepts an arbitrary phase profile
// beta(x, y); independent of the closed form above, kept as its oracle.
TileResponse continuous_response_numeric(double lx, double ly,
                                         const std::function<double(double, double)> &beta,
                                         const IncidentAngle &inc, const ReflectionAngle &obs,
                                         double tau, double rel_tol = 1.0e-8);

// Response of one unit cell (actuated area l_uc^2), including the j factor
// common to the discrete forms.
std::complex<double> unit_cell_factor(const TileGeometry &geom, const IncidentAngle &inc,
                                      const ReflectionAngle &obs, double tau);

// Per-cell phase profile beta(nx, ny) realizing the steering target,
// beta = -2*pi*(dx*Ax*)*nx - 2*pi*(dy*Ay*)*ny + beta0, returned as a
// Qx x Qy matrix indexed by 0-based cell indices.
Eigen::MatrixXd phase_profile_discrete(const TileGeometry &geom, const SteeringTarget &target);

// Response of the discrete tile steered at `target`.  With an ideal
// quantizer this is the closed form with Dirichlet-kernel factors; with a
// finite quantizer the profile is quantized and summed cell by cell.
TileResponse discrete_response(const TileGeometry &geom, const SteeringTarget &target,
                               const IncidentAngle &inc, const ReflectionAngle &obs, double tau,
                               const PhaseQuantizer &quant = {});

// Direct summation over all unit cells of an arbitrary per-cell phase
// profile.  Reference implementation; the closed form must match it.
TileResponse brute_force_discrete(const TileGeometry &geom, const Eigen::MatrixXd &beta,
                                  const IncidentAngle &inc, const ReflectionAngle &obs, double tau);

// End-to-end power gain of the transmitter-tile-receiver segment:
// 4*pi*|g/lambda|^2 * pl_t * pl_r with pl_i the free-space factors.
// Distances and lambda in meters.
double irs_pathloss(const TileResponse &g, double rho_t, double rho_r, double lambda);

// Tile area (m^2) for which the tile-assisted link matches the free-space
// loss of a direct link of length rho_d.
double min_required_area(double lambda, double rho_d, double rho_t, double rho_r);

// Number of half-wavelength-pitch unit cells (side l_uc) needed for the
// same parity, rounded up.
long min_required_unit_cells(double lambda, double rho_d, double rho_t, double rho_r, double l_uc);

// Largest amplitude tau admissible for a passive tile steering `target`
// under incidence `inc`.  Throws EvanescentError when the target reflected
// direction is evanescent for this incidence.
double passivity_tau(const IncidentAngle &inc, const SteeringTarget &target);

} // namespace irsforge
