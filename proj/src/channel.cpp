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

#include "irsforge/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

double path_amplitude(double dist, double shadow_db)
{
    return (1.0 / (4.0 * pi * dist)) * std::pow(10.0, shadow_db / 20.0);
}

std::complex<double> small_scale(Rng &rng, FadingModel fading)
{
    if (fading == FadingModel::phase_only)
        return std::polar(1.0, rng.uniform(0.0, two_pi));
    return rng.cgauss();
}

} // namespace

double noise_power(double bandwidth_hz, double noise_psd_dbm_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    return dbm2mw(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

double SystemConfig::noise_mw() const
{
    return noise_power(bandwidth_hz, noise_psd_dbm_hz, noise_figure_db);
}

double SystemConfig::sinr_threshold() const
{
    return db2lin(sinr_threshold_db);
}

std::vector<TilePosition> SystemConfig::tile_grid(int nx, int ny)
{
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("tile grid dimensions must be positive");
    std::vector<TilePosition> grid;
    grid.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            grid.push_back({ix - (nx - 1) / 2, iy - (ny - 1) / 2});
    return grid;
}

ChannelRealization sample_realization(const SystemConfig &cfg, std::uint64_t seed)
{
    if (cfg.num_users < 1)
        throw std::invalid_argument("at least one user required");
    ChannelRealization real;
    real.seed = seed;
    Rng rng(derive_seed(seed, 0x6368616eULL)); // "chan"

    double amp_d = path_amplitude(cfg.dist_direct, cfg.shadow_direct_db);
    double amp_t = path_amplitude(cfg.dist_bs_irs, cfg.shadow_bs_irs_db);
    double amp_r = path_amplitude(cfg.dist_irs_user, cfg.shadow_irs_user_db);

    real.direct.resize(cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k)
    {
        real.direct[k].resize(cfg.paths_direct);
        for (auto &p : real.direct[k])
        {
            p.bs_theta = rng.uniform(0.0, pi / 2.0);
            p.bs_phi = rng.uniform(0.0, two_pi);
            p.gain = amp_d * small_scale(rng, cfg.fading);
        }
    }

    real.bs_irs.resize(cfg.paths_bs_irs);
    for (auto &p : real.bs_irs)
    {
        p.bs_theta = rng.uniform(0.0, pi / 2.0);
        p.bs_phi = rng.uniform(0.0, two_pi);
        p.irs_aoa.theta = rng.uniform(0.0, cfg.theta_max);
        p.irs_aoa.phi = rng.uniform(cfg.phi_min_bs_irs, cfg.phi_max_bs_irs);
        p.irs_aoa.pol = rng.uniform(0.0, two_pi);
        p.gain = amp_t * small_scale(rng, cfg.fading);
    }

    real.irs_user.resize(cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k)
    {
        real.irs_user[k].resize(cfg.paths_irs_user);
        for (auto &p : real.irs_user[k])
        {
            p.irs_aod.theta = rng.uniform(0.0, cfg.theta_max);
            p.irs_aod.phi = rng.uniform(cfg.phi_min_irs_user, cfg.phi_max_irs_user);
            p.gain = amp_r * small_scale(rng, cfg.fading);
        }
    }
    return real;
}

Eigen::VectorXcd bs_steering(const SystemConfig &cfg, double theta, double phi)
{
    DirectionCosines a = direction_cosines(theta, phi);
    Eigen::VectorXcd d(cfg.num_bs_antennas());
    for (int ix = 0; ix < cfg.bs_nx; ++ix)
        for (int iy = 0; iy < cfg.bs_ny; ++iy)
        {
            double ph = two_pi * cfg.bs_pitch * (a.ax * ix + a.ay * iy);
            d(ix * cfg.bs_ny + iy) = std::polar(1.0, ph);
        }
    return d;
}

Eigen::VectorXcd direct_channel(const SystemConfig &cfg, const ChannelRealization &real, int user)
{
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(cfg.num_bs_antennas());
    for (const auto &p : real.direct.at(user))
        h += std::conj(p.gain) * bs_steering(cfg, p.bs_theta, p.bs_phi);
    return h;
}

std::complex<double> tile_mode_gain(const SystemConfig &cfg, int tile, const TransmissionMode &mode,
                                    const IncidentAngle &inc, const ReflectionAngle &obs)
{
    // Reference-tile response in closed form, driven directly by the mode
    // gradients (the per-axis W absorbs the design gradient beta_x/beta_y).
    double wx = two_pi * cfg.tile.dx * combined_ax(inc, obs) + two_pi * mode.beta_x;
    double wy = two_pi * cfg.tile.dy * combined_ay(inc, obs) + two_pi * mode.beta_y;
    std::complex<double> g_uc = unit_cell_factor(cfg.tile, inc, obs, cfg.tau);
    double kernel = dirichlet_ratio(0.5 * wx, cfg.tile.qx) * dirichlet_ratio(0.5 * wy, cfg.tile.qy);
    std::complex<double> g =
        g_uc * kernel * std::polar(1.0, two_pi * mode.beta_0 + 0.5 * (wx + wy));

    const TilePosition &pos = cfg.tiles.at(tile);
    double shift = two_pi * (pos.ux * cfg.tile.lx * combined_ax(inc, obs) +
                             pos.uy * cfg.tile.ly * combined_ay(inc, obs));
    return g * std::polar(1.0, shift);
}

Eigen::VectorXcd assemble_effective_channel(const SystemConfig &cfg, const ChannelRealization &real,
                                            int tile, const TransmissionMode &mode, int user)
{
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(cfg.num_bs_antennas());
    for (const auto &q : real.bs_irs)
    {
        std::complex<double> along_q{0.0, 0.0};
        for (const auto &p : real.irs_user.at(user))
        {
            std::complex<double> g = tile_mode_gain(cfg, tile, mode, q.irs_aoa, p.irs_aod);
            along_q += std::conj(p.gain * q.gain * sqrt_four_pi * g);
        }
        h += along_q * bs_steering(cfg, q.bs_theta, q.bs_phi);
    }
    return h;
}

EffectiveChannelSet assemble_all(const SystemConfig &cfg, const ChannelRealization &real,
                                 const std::vector<TransmissionMode> &modes)
{
    EffectiveChannelSet set;
    set.num_tiles = cfg.num_tiles();
    set.num_modes = static_cast<int>(modes.size());
    set.num_users = cfg.num_users;
    set.h0.resize(cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k)
        set.h0[k] = direct_channel(cfg, real, k);

    set.tile.resize(static_cast<std::size_t>(set.num_tiles) * set.num_modes * set.num_users);
    std::vector<Eigen::VectorXcd> steer(real.bs_irs.size());
    for (std::size_t q = 0; q < real.bs_irs.size(); ++q)
        steer[q] = bs_steering(cfg, real.bs_irs[q].bs_theta, real.bs_irs[q].bs_phi);

    for (int n = 0; n < set.num_tiles; ++n)
        for (int m = 0; m < set.num_modes; ++m)
            for (int k = 0; k < set.num_users; ++k)
            {
                Eigen::VectorXcd h = Eigen::VectorXcd::Zero(cfg.num_bs_antennas());
                for (std::size_t q = 0; q < real.bs_irs.size(); ++q)
                {
                    std::complex<double> along_q{0.0, 0.0};
                    for (const auto &p : real.irs_user[k])
                    {
                        std::complex<double> g =
                            tile_mode_gain(cfg, n, modes[m], real.bs_irs[q].irs_aoa, p.irs_aod);
                        along_q += std::conj(p.gain * real.bs_irs[q].gain * sqrt_four_pi * g);
                    }
                    h += along_q * steer[q];
                }
                set.tile[(static_cast<std::size_t>(n) * set.num_modes + m) * set.num_users + k] =
                    std::move(h);
            }
    return set;
}

std::vector<Eigen::VectorXcd> end_to_end(const EffectiveChannelSet &set,
                                         const std::vector<int> &selection, bool allow_partial)
{
    if (static_cast<int>(selection.size()) != set.num_tiles)
        throw std::invalid_argument("selection length does not match the tile count");
    std::vector<Eigen::VectorXcd> out(set.num_users);
    for (int k = 0; k < set.num_users; ++k)
        out[k] = set.h0[k];
    for (int n = 0; n < set.num_tiles; ++n)
    {
        int m = selection[n];
        if (m < 0)
        {
            if (!allow_partial)
                throw std::invalid_argument("every tile needs exactly one mode");
            continue;
        }
        if (m >= set.num_modes)
            throw std::out_of_range("mode index outside the cached set");
        for (int k = 0; k < set.num_users; ++k)
            out[k] += set.h(n, m, k);
    }
    return out;
}

Eigen::VectorXd mode_strength(const EffectiveChannelSet &set)
{
    Eigen::VectorXd s = Eigen::VectorXd::Zero(set.num_modes);
    for (int m = 0; m < set.num_modes; ++m)
        for (int n = 0; n < set.num_tiles; ++n)
            for (int k = 0; k < set.num_users; ++k)
                s(m) = std::max(s(m), set.h(n, m, k).norm());
    return s;
}

Eigen::MatrixXd reflection_strength(const SystemConfig &cfg, const ChannelRealization &real,
                                    const OfflineCodebook &book)
{
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(book.num_reflection(), cfg.num_users);
    for (int r = 0; r < book.num_reflection(); ++r)
    {
        TransmissionMode mode = book.mode(r * static_cast<int>(book.b0.size()));
        for (int n = 0; n < cfg.num_tiles(); ++n)
            for (int k = 0; k < cfg.num_users; ++k)
            {
                double norm = assemble_effective_channel(cfg, real, n, mode, k).norm();
                s(r, k) = std::max(s(r, k), norm);
            }
    }
    return s;
}

} // namespace irsforge
