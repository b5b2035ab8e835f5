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
// Geometric multipath channel between a planar base-station array, a tiled
// reflecting surface, and single-antenna users.  Distances are in
// wavelengths, powers in mW, angles in radians.  The per-tile, per-mode
// channel vectors h(n, m, k) satisfy: received sample of user k =
// (h_direct + sum over configured tiles of h(n, m_n, k))^H * x.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "irsforge/codebook.hpp"
#include "irsforge/tile.hpp"

namespace irsforge {

struct TilePosition
{
    int ux = 0;
    int uy = 0;
};

enum class FadingModel
{
    rayleigh,   // CN(0,1) per path
    phase_only, // unit amplitude, uniform phase (pure free-space loss)
};

struct SystemConfig
{
    // Base station: planar array on a half-wavelength-type grid.
    int bs_nx = 4, bs_ny = 4;
    double bs_pitch = 0.5;
    int num_users = 2;

    // Reflecting surface.
    TileGeometry tile = TileGeometry::from_counts(20, 20, 0.5, 0.5, 0.4);
    std::vector<TilePosition> tiles;
    double tau = 0.8;

    // Multipath structure.
    int paths_direct = 1;
    int paths_bs_irs = 2;
    int paths_irs_user = 2;
    FadingModel fading = FadingModel::rayleigh;

    // Link geometry (wavelengths) and lognormal-type shadowing factors (dB).
    double dist_direct = 4000.0;
    double dist_bs_irs = 3200.0;
    double dist_irs_user = 800.0;
    double shadow_direct_db = -40.0;
    double shadow_bs_irs_db = 0.0;
    double shadow_irs_user_db = 0.0;

    // Angle sampling ranges for the surface-side path directions.
    double theta_max = 1.5707963267948966;
    double phi_min_bs_irs = 0.0, phi_max_bs_irs = 6.283185307179586;
    double phi_min_irs_user = 0.0, phi_max_irs_user = 6.283185307179586;

    // Link budget.
    double bandwidth_hz = 20.0e6;
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 6.0;
    double sinr_threshold_db = 10.0;

    int num_bs_antennas() const { return bs_nx * bs_ny; }
    int num_tiles() const { return static_cast<int>(tiles.size()); }
    double noise_mw() const;
    double sinr_threshold() const;

    // Centered integer grid of nx*ny tile positions.
    static std::vector<TilePosition> tile_grid(int nx, int ny);
};

// Thermal noise power in mW for bandwidth (Hz), noise PSD (dBm/Hz) and noise
// figure (dB).
double noise_power(double bandwidth_hz, double noise_psd_dbm_hz, double noise_figure_db);

struct PathDirect
{
    double bs_theta = 0.0, bs_phi = 0.0; // departure at the array
    std::complex<double> gain{0.0, 0.0};
};

struct PathBsIrs
{
    double bs_theta = 0.0, bs_phi = 0.0;
    IncidentAngle irs_aoa;
    std::complex<double> gain{0.0, 0.0};
};

struct PathIrsUser
{
    ReflectionAngle irs_aod;
    std::complex<double> gain{0.0, 0.0};
};

struct ChannelRealization
{
    std::uint64_t seed = 0;
    std::vector<std::vector<PathDirect>> direct;    // [user][path]
    std::vector<PathBsIrs> bs_irs;                  // [path]
    std::vector<std::vector<PathIrsUser>> irs_user; // [user][path]
};

// Draw one multipath realization.  All randomness is derived from `seed`;
// equal (config, seed) pairs give identical realizations.
ChannelRealization sample_realization(const SystemConfig &cfg, std::uint64_t seed);

// Steering vector of the base-station array toward (theta, phi).
Eigen::VectorXcd bs_steering(const SystemConfig &cfg, double theta, double phi);

// Direct-link channel vector of user k.
Eigen::VectorXcd direct_channel(const SystemConfig &cfg, const ChannelRealization &real, int user);

// Complex response of tile n (including its position translation phase)
// operated in `mode`, for one incidence/departure pair.
std::complex<double> tile_mode_gain(const SystemConfig &cfg, int tile, const TransmissionMode &mode,
                                    const IncidentAngle &inc, const ReflectionAngle &obs);

// Channel vector through tile n in mode `mode` to user k.
Eigen::VectorXcd assemble_effective_channel(const SystemConfig &cfg, const ChannelRealization &real,
                                            int tile, const TransmissionMode &mode, int user);

// Cache of all per-(tile, mode, user) channel vectors for one realization
// and one mode list.
struct EffectiveChannelSet
{
    int num_tiles = 0;
    int num_modes = 0;
    int num_users = 0;
    std::vector<Eigen::VectorXcd> h0;   // [user]
    std::vector<Eigen::VectorXcd> tile; // [(n*num_modes + m)*num_users + k]

    const Eigen::VectorXcd &h(int n, int m, int k) const
    {
        return tile[(static_cast<std::size_t>(n) * num_modes + m) * num_users + k];
    }
};

EffectiveChannelSet assemble_all(const SystemConfig &cfg, const ChannelRealization &real,
                                 const std::vector<TransmissionMode> &modes);

// Combined channel per user for a complete per-tile mode selection
// (selection[n] indexes into the mode list of `set`; -1 marks an idle tile,
// allowed only when `allow_partial`).
std::vector<Eigen::VectorXcd> end_to_end(const EffectiveChannelSet &set,
                                         const std::vector<int> &selection,
                                         bool allow_partial = false);

// Strength tables driving mode pre-selection.
// Per full-mode strength: max over (tile, user) of ||h(n, m, k)||.
Eigen::VectorXd mode_strength(const EffectiveChannelSet &set);
// Per reflection pair and user: max over tiles, evaluated at the first
// common-phase entry (channel norms do not depend on beta_0).
Eigen::MatrixXd reflection_strength(const SystemConfig &cfg, const ChannelRealization &real,
                                    const OfflineCodebook &book);

} // namespace irsforge
