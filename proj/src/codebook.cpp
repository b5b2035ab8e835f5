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

#include "irsforge/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

// Fold a periodic gradient into [-1/2, 1/2).
double fold_unit(double b)
{
    double f = b - std::floor(b + 0.5);
    if (f >= 0.5)
        f -= 1.0;
    return f;
}

} // namespace

int OfflineCodebook::index(int ix, int iy, int i0) const
{
    return (ix * static_cast<int>(by.size()) + iy) * static_cast<int>(b0.size()) + i0;
}

TransmissionMode OfflineCodebook::mode(int idx) const
{
    if (idx < 0 || idx >= size())
        throw std::out_of_range("mode index outside the codebook");
    int n0 = static_cast<int>(b0.size());
    int ny = static_cast<int>(by.size());
    int i0 = idx % n0;
    int iy = (idx / n0) % ny;
    int ix = idx / (n0 * ny);
    return {bx[ix], by[iy], b0[i0]};
}

std::vector<double> build_reflection_codebook(int size, double min_value, double max_value)
{
    if (size < 1)
        throw std::invalid_argument("codebook size must be at least 1");
    if (max_value < min_value)
        throw std::invalid_argument("codebook range is inverted");
    if (min_value < -0.5 - 1e-12 || max_value > 0.5 + 1e-12)
        throw std::invalid_argument("gradient range exceeds the half-unit fold circle");
    if (size == 1)
        return {0.5 * (min_value + max_value)};
    std::vector<double> grid(size);
    double step = (max_value - min_value) / (size - 1);
    for (int i = 0; i < size; ++i)
        grid[i] = min_value + step * i;
    return grid;
}

std::vector<double> build_wavefront_codebook(int size)
{
    if (size < 1)
        throw std::invalid_argument("codebook size must be at least 1");
    std::vector<double> grid(size);
    for (int i = 0; i < size; ++i)
        grid[i] = -0.5 + static_cast<double>(i) / size;
    return grid;
}

double effective_support(double pitch)
{
    if (!(pitch > 0.0))
        throw std::invalid_argument("cell pitch must be positive");
    return std::min(2.0 * pitch, 0.5);
}

TransmissionMode design_mode(const TileGeometry &geom, const SteeringTarget &target)
{
    double ax = combined_ax(target.inc, target.refl);
    double ay = combined_ay(target.inc, target.refl);
    return {fold_unit(-geom.dx * ax), fold_unit(-geom.dy * ay), fold_unit(target.beta0 / two_pi)};
}

Eigen::MatrixXcd mode_to_phase_profile(const TileGeometry &geom, const TransmissionMode &mode)
{
    Eigen::MatrixXcd coeff(geom.qx, geom.qy);
    for (int ix = 0; ix < geom.qx; ++ix)
    {
        double px = two_pi * mode.beta_x * TileGeometry::cell_offset(ix, geom.qx);
        for (int iy = 0; iy < geom.qy; ++iy)
        {
            double py = two_pi * mode.beta_y * TileGeometry::cell_offset(iy, geom.qy);
            coeff(ix, iy) = std::polar(1.0, px + py + two_pi * mode.beta_0);
        }
    }
    return coeff;
}

double alignment_phase(int ux, int uy, int ux_ref, int uy_ref, double lx, double ly,
                       double ax_star, double ay_star)
{
    double arg = -two_pi * ((ux - ux_ref) * lx * ax_star + (uy - uy_ref) * ly * ay_star);
    double m = std::fmod(arg, two_pi);
    if (m < 0.0)
        m += two_pi;
    return m / two_pi;
}

std::vector<int> preselect_modes(const Eigen::VectorXd &strength, double threshold)
{
    std::vector<int> idx;
    for (int m = 0; m < strength.size(); ++m)
        if (strength(m) >= threshold)
            idx.push_back(m);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return strength(a) > strength(b); });
    return idx;
}

std::vector<int> preselect_top_k(const OfflineCodebook &book, const Eigen::MatrixXd &reflection_strength,
                                 int k_per_user)
{
    if (reflection_strength.rows() != book.num_reflection())
        throw std::invalid_argument("strength table does not match the codebook");
    if (k_per_user < 1)
        throw std::invalid_argument("k_per_user must be at least 1");

    std::set<int> reflections;
    for (int k = 0; k < reflection_strength.cols(); ++k)
    {
        std::vector<int> order(book.num_reflection());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return reflection_strength(a, k) > reflection_strength(b, k);
        });
        for (int i = 0; i < std::min<int>(k_per_user, static_cast<int>(order.size())); ++i)
            reflections.insert(order[i]);
    }

    std::vector<int> modes;
    for (int r : reflections)
        for (int i0 = 0; i0 < static_cast<int>(book.b0.size()); ++i0)
            modes.push_back(r * static_cast<int>(book.b0.size()) + i0);
    std::sort(modes.begin(), modes.end());
    return modes;
}

} // namespace irsforge
