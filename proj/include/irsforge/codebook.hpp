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
// Offline transmission-mode codebooks.  A mode is a triple of normalized
// phase gradients (beta_x, beta_y) and a common phase beta_0; the per-cell
// phase it induces is 2*pi*(beta_x*nx + beta_y*ny + beta_0).  All three are
// periodic with period 1, so only values in [-1/2, 1/2] are meaningful.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "irsforge/tile.hpp"

namespace irsforge {

struct TransmissionMode
{
    double beta_x = 0.0;
    double beta_y = 0.0;
    double beta_0 = 0.0;
};

// Cartesian product of per-axis gradient grids and a common-phase grid.
// Canonical mode index: ((ix * |by|) + iy) * |b0| + i0.
struct OfflineCodebook
{
    std::vector<double> bx;
    std::vector<double> by;
    std::vector<double> b0;

    int size() const { return static_cast<int>(bx.size() * by.size() * b0.size()); }
    int num_reflection() const { return static_cast<int>(bx.size() * by.size()); }

    int index(int ix, int iy, int i0) const;
    TransmissionMode mode(int idx) const;
    // Reflection pair (ix, iy) flattened as ix * |by| + iy.
    int reflection_of(int idx) const { return idx / static_cast<int>(b0.size()); }
};

// Uniformly spaced grid including both endpoints, e.g. the gradient sets
// B_x, B_y.  size >= 2 unless min == max.
std::vector<double> build_reflection_codebook(int size, double min_value, double max_value);

// size points uniform on the phase circle starting at -1/2 (spacing 1/size);
// avoids the duplicate endpoint pair (-1/2, +1/2) which is one physical phase.
std::vector<double> build_wavefront_codebook(int size);

// Largest useful |beta_x| for cell pitch d (wavelength units): min(2d, 1/2).
double effective_support(double pitch);

// Gradients realizing a steering target on a given tile geometry, folded to
// [-1/2, 1/2).
TransmissionMode design_mode(const TileGeometry &geom, const SteeringTarget &target);

// Per-cell unit-modulus coefficients exp(j*beta(nx, ny)) of a mode.
Eigen::MatrixXcd mode_to_phase_profile(const TileGeometry &geom, const TransmissionMode &mode);

// Common-phase increment (in beta_0 units, [0, 1)) that keeps tile (ux, uy)
// phase-aligned with tile (ux_ref, uy_ref) when both apply gradients designed
// for combined direction cosines (ax_star, ay_star).  Tile centers are spaced
// by the tile side lengths (lx, ly).
double alignment_phase(int ux, int uy, int ux_ref, int uy_ref, double lx, double ly,
                       double ax_star, double ay_star);

// Modes whose strength reaches `threshold`, strongest first; ties keep the
// lower index.  `strength` is indexed by canonical mode index.
std::vector<int> preselect_modes(const Eigen::VectorXd &strength, double threshold);

// Union over users of the top-k reflection pairs (by the given per-user
// strength table, num_reflection x num_users), crossed with the entire
// common-phase grid.  Returned sorted by canonical mode index.
std::vector<int> preselect_top_k(const OfflineCodebook &book, const Eigen::MatrixXd &reflection_strength,
                                 int k_per_user);

} // namespace irsforge
