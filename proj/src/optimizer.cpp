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

#include "irsforge/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "irsforge/common.hpp"
#include "irsforge/tile.hpp"

namespace irsforge {

namespace {

void check_gamma(const EffectiveChannelSet &set, const Eigen::VectorXd &gamma)
{
    if (gamma.size() != set.num_users)
        throw std::invalid_argument("one SINR target per user required");
}

Eigen::MatrixXcd unit_power(const Eigen::MatrixXcd &precoder)
{
    double p = precoder.squaredNorm();
    if (!(p > 0.0))
        return precoder;
    return precoder / std::sqrt(p);
}

// Achieved per-user SINRs of a precoder over explicit per-user channels.
Eigen::VectorXd sinr_vector(const std::vector<Eigen::VectorXcd> &channels,
                            const Eigen::MatrixXcd &precoder, double noise_mw)
{
    const int k = static_cast<int>(channels.size());
    Eigen::VectorXd out(k);
    for (int i = 0; i < k; ++i)
    {
        double sig = std::norm(channels[i].dot(precoder.col(i)));
        double intf = 0.0;
        for (int j = 0; j < k; ++j)
            if (j != i)
                intf += std::norm(channels[i].dot(precoder.col(j)));
        out(i) = sig / (intf + noise_mw);
    }
    return out;
}

// Shared precoder design: semidefinite relaxation plus rank-one recovery
// over explicit per-user channels.
PrecoderDesign design_precoder(const std::vector<Eigen::VectorXcd> &channels,
                               const Eigen::VectorXd &gamma, double noise_mw)
{
    PrecoderDesign out;
    PowerMinSdp prob{channels, gamma, noise_mw};
    out.sdp = solve_sdp(prob);
    if (!out.sdp.usable())
        return out;
    out.extraction = rank_one_extract(prob, out.sdp);
    out.precoder = out.extraction.precoder;
    out.power_mw = out.sdp.primal_mw;
    out.ok = true;
    return out;
}

OptStatus failure_status(const SdpSolution &sdp)
{
    return sdp.status == SdpStatus::infeasible ? OptStatus::infeasible
                                               : OptStatus::solver_failure;
}

} // namespace

double OptimizationResult::power_dbm() const
{
    return mw2dbm(power_mw);
}

double sinr(const EffectiveChannelSet &set, const ModeSelection &sel,
            const Eigen::MatrixXcd &precoder, double noise_mw, int k, bool allow_partial)
{
    if (k < 0 || k >= set.num_users)
        throw std::out_of_range("user index");
    if (precoder.cols() != set.num_users)
        throw std::invalid_argument("one precoder column per user required");
    auto channels = end_to_end(set, sel, allow_partial);
    return sinr_vector(channels, precoder, noise_mw)(k);
}

double required_power(const std::vector<Eigen::VectorXcd> &channels,
                      const Eigen::MatrixXcd &precoder, const Eigen::VectorXd &gamma,
                      double noise_mw)
{
    const int k = static_cast<int>(channels.size());
    Eigen::MatrixXcd qd = unit_power(precoder);
    double worst = 0.0;
    for (int i = 0; i < k; ++i)
    {
        double sig = std::norm(channels[i].dot(qd.col(i)));
        double intf = 0.0;
        for (int j = 0; j < k; ++j)
            if (j != i)
                intf += std::norm(channels[i].dot(qd.col(j)));
        double denom = sig - gamma(i) * intf;
        if (gamma(i) <= 0.0)
            continue;
        if (!(denom > 0.0))
            return std::numeric_limits<double>::infinity();
        worst = std::max(worst, gamma(i) * noise_mw / denom);
    }
    return worst;
}

std::vector<Eigen::MatrixXd> f_coefficients(const EffectiveChannelSet &set, int n,
                                            const ModeSelection &sel,
                                            const Eigen::MatrixXcd &precoder)
{
    if (n < 0 || n >= set.num_tiles)
        throw std::out_of_range("tile index");
    if (static_cast<int>(sel.size()) != set.num_tiles)
        throw std::invalid_argument("selection length does not match the tile count");
    const int k = set.num_users;
    Eigen::MatrixXcd qd = unit_power(precoder);

    // Background channel per user: direct link plus every other configured
    // tile, projected onto each precoder column.
    Eigen::MatrixXcd base(k, k);
    for (int i = 0; i < k; ++i)
    {
        Eigen::VectorXcd bg = set.h0[i];
        for (int t = 0; t < set.num_tiles; ++t)
            if (t != n && sel[t] >= 0)
                bg += set.h(t, sel[t], i);
        for (int j = 0; j < k; ++j)
            base(i, j) = bg.dot(qd.col(j));
    }

    std::vector<Eigen::MatrixXd> f(set.num_modes);
    for (int m = 0; m < set.num_modes; ++m)
    {
        f[m].resize(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                f[m](i, j) = std::norm(base(i, j) + set.h(n, m, i).dot(qd.col(j)));
    }
    return f;
}

TileDecision solve_p1(const std::vector<Eigen::MatrixXd> &f, const Eigen::VectorXd &gamma,
                      double noise_mw)
{
    TileDecision best;
    const int k = static_cast<int>(gamma.size());
    for (int m = 0; m < static_cast<int>(f.size()); ++m)
    {
        double p_mode = 0.0;
        for (int i = 0; i < k && std::isfinite(p_mode); ++i)
        {
            if (gamma(i) <= 0.0)
                continue;
            double denom = f[m](i, i);
            for (int j = 0; j < k; ++j)
                if (j != i)
                    denom -= gamma(i) * f[m](i, j);
            if (denom > 0.0)
                p_mode = std::max(p_mode, gamma(i) * noise_mw / denom);
            else
                p_mode = std::numeric_limits<double>::infinity();
        }
        if (p_mode < best.power_mw)
        {
            best.power_mw = p_mode;
            best.mode = m;
        }
    }
    best.feasible = best.mode >= 0 && std::isfinite(best.power_mw);
    return best;
}

PrecoderDesign solve_p2(const EffectiveChannelSet &set, const ModeSelection &sel,
                        const Eigen::VectorXd &gamma, double noise_mw, bool allow_partial)
{
    check_gamma(set, gamma);
    return design_precoder(end_to_end(set, sel, allow_partial), gamma, noise_mw);
}

OptimizationResult alternating_optimization(const EffectiveChannelSet &set,
                                            const Eigen::VectorXd &gamma, double noise_mw,
                                            const ModeSelection &init_sel,
                                            const Eigen::MatrixXcd &init_precoder,
                                            const AoOptions &opts)
{
    check_gamma(set, gamma);
    if (static_cast<int>(init_sel.size()) != set.num_tiles)
        throw std::invalid_argument("selection length does not match the tile count");
    for (int m : init_sel)
        if (m < 0 || m >= set.num_modes)
            throw std::invalid_argument("initial selection must configure every tile");

    OptimizationResult res;
    ModeSelection sel = init_sel;
    Eigen::MatrixXcd qd = unit_power(init_precoder);
    double p_cur = required_power(end_to_end(set, sel), qd, gamma, noise_mw);
    res.trace_mw.push_back(p_cur);
    SdpStatus last_sdp = SdpStatus::numerical_error;

    for (int outer = 1; outer <= opts.max_outer; ++outer)
    {
        res.iterations = outer;
        double p_begin = p_cur;

        for (int n = 0; n < set.num_tiles; ++n)
        {
            TileDecision d = solve_p1(f_coefficients(set, n, sel, qd), gamma, noise_mw);
            if (d.feasible && d.power_mw <= p_cur)
            {
                sel[n] = d.mode;
                p_cur = d.power_mw;
            }
            res.trace_mw.push_back(p_cur);
        }

        PrecoderDesign p2 = solve_p2(set, sel, gamma, noise_mw, false);
        last_sdp = p2.sdp.status;
        if (p2.ok)
        {
            double p_new = required_power(end_to_end(set, sel), p2.precoder, gamma, noise_mw);
            if (p_new <= p_cur)
            {
                qd = unit_power(p2.precoder);
                p_cur = p_new;
            }
        }
        res.trace_mw.push_back(p_cur);

        if (std::isfinite(p_cur))
        {
            if (p_begin - p_cur <= opts.rel_tol * p_cur)
                break;
        }
        else if (!std::isfinite(p_begin))
        {
            break; // a full pass produced nothing feasible
        }
    }

    res.selection = sel;
    res.power_mw = p_cur;
    if (std::isfinite(p_cur))
    {
        res.status = OptStatus::ok;
        res.precoder = std::sqrt(p_cur) * qd;
        res.sinr = sinr_vector(end_to_end(set, sel), res.precoder, noise_mw);
    }
    else
    {
        res.status = last_sdp == SdpStatus::infeasible ? OptStatus::infeasible
                                                       : OptStatus::solver_failure;
        res.precoder = Eigen::MatrixXcd::Zero(qd.rows(), qd.cols());
        res.sinr = Eigen::VectorXd::Zero(set.num_users);
    }
    return res;
}

OptimizationResult greedy(const EffectiveChannelSet &set, const Eigen::VectorXd &gamma,
                          double noise_mw)
{
    check_gamma(set, gamma);
    if (set.num_tiles > 0 && set.num_modes < 1)
        throw std::invalid_argument("greedy needs a nonempty mode list");

    OptimizationResult res;
    ModeSelection sel(set.num_tiles, -1);
    res.iterations = set.num_tiles;

    for (int n = 0; n < set.num_tiles; ++n)
    {
        PrecoderDesign step = solve_p2(set, sel, gamma, noise_mw, true);
        if (!step.ok)
        {
            res.status = failure_status(step.sdp);
            res.selection = sel;
            return res;
        }
        res.trace_mw.push_back(step.power_mw);

        int k_star = 0;
        for (int k = 1; k < set.num_users; ++k)
            if (step.precoder.col(k).norm() > step.precoder.col(k_star).norm())
                k_star = k;

        Eigen::VectorXcd bg = set.h0[k_star];
        for (int t = 0; t < n; ++t)
            if (sel[t] >= 0)
                bg += set.h(t, sel[t], k_star);
        int m_star = 0;
        double best = -1.0;
        for (int m = 0; m < set.num_modes; ++m)
        {
            double cand = (bg + set.h(n, m, k_star)).norm();
            if (cand > best)
            {
                best = cand;
                m_star = m;
            }
        }
        sel[n] = m_star;
    }

    PrecoderDesign fin = solve_p2(set, sel, gamma, noise_mw, false);
    res.selection = sel;
    if (!fin.ok)
    {
        res.status = failure_status(fin.sdp);
        return res;
    }
    res.trace_mw.push_back(fin.power_mw);
    res.status = OptStatus::ok;
    res.power_mw = fin.power_mw;
    res.precoder = fin.precoder;
    res.sinr = sinr_vector(end_to_end(set, sel), fin.precoder, noise_mw);
    return res;
}

OptimizationResult brute_force_mip(const EffectiveChannelSet &set,
                                   const Eigen::VectorXd &gamma, double noise_mw,
                                   double max_instances)
{
    check_gamma(set, gamma);
    double count = std::pow(static_cast<double>(set.num_modes), set.num_tiles);
    if (set.num_tiles > 0 && (set.num_modes < 1 || count > max_instances))
        throw std::invalid_argument("instance too large for exhaustive enumeration");

    OptimizationResult res;
    ModeSelection sel(set.num_tiles, 0);
    bool any_infeasible = false;

    while (true)
    {
        PrecoderDesign cand = solve_p2(set, sel, gamma, noise_mw, false);
        ++res.iterations;
        res.trace_mw.push_back(cand.ok ? cand.power_mw
                                       : std::numeric_limits<double>::infinity());
        if (cand.ok && cand.power_mw < res.power_mw)
        {
            res.power_mw = cand.power_mw;
            res.selection = sel;
            res.precoder = cand.precoder;
            res.status = OptStatus::ok;
        }
        else if (!cand.ok && cand.sdp.status == SdpStatus::infeasible)
        {
            any_infeasible = true;
        }

        // Odometer increment, last tile fastest, so ties in power keep the
        // lexicographically first selection.
        int pos = set.num_tiles - 1;
        while (pos >= 0 && ++sel[pos] == set.num_modes)
            sel[pos--] = 0;
        if (pos < 0)
            break;
    }

    if (res.status == OptStatus::ok)
        res.sinr = sinr_vector(end_to_end(set, res.selection), res.precoder, noise_mw);
    else
        res.status = any_infeasible ? OptStatus::infeasible : OptStatus::solver_failure;
    return res;
}

namespace {

// Direct plus per-tile sums under one fixed random per-cell phase profile
// for each tile.
std::vector<Eigen::VectorXcd> random_phase_channels(const SystemConfig &cfg,
                                                    const ChannelRealization &real,
                                                    std::uint64_t seed)
{
    Rng rng(derive_seed(seed, 0x726e6470ULL));
    std::vector<Eigen::MatrixXd> beta(cfg.num_tiles());
    for (auto &b : beta)
    {
        b.resize(cfg.tile.qx, cfg.tile.qy);
        for (int ix = 0; ix < cfg.tile.qx; ++ix)
            for (int iy = 0; iy < cfg.tile.qy; ++iy)
                b(ix, iy) = rng.uniform(0.0, two_pi);
    }

    std::vector<Eigen::VectorXcd> channels(cfg.num_users);
    for (int k = 0; k < cfg.num_users; ++k)
    {
        Eigen::VectorXcd h = direct_channel(cfg, real, k);
        for (const auto &q : real.bs_irs)
        {
            std::complex<double> along_q{0.0, 0.0};
            for (const auto &p : real.irs_user[k])
            {
                double ax = combined_ax(q.irs_aoa, p.irs_aod);
                double ay = combined_ay(q.irs_aoa, p.irs_aod);
                for (int n = 0; n < cfg.num_tiles(); ++n)
                {
                    TileResponse g =
                        brute_force_discrete(cfg.tile, beta[n], q.irs_aoa, p.irs_aod, cfg.tau);
                    double shift = two_pi * (cfg.tiles[n].ux * cfg.tile.lx * ax +
                                             cfg.tiles[n].uy * cfg.tile.ly * ay);
                    along_q += std::conj(p.gain * q.gain * sqrt_four_pi * g.value *
                                         std::polar(1.0, shift));
                }
            }
            h += along_q * bs_steering(cfg, q.bs_theta, q.bs_phi);
        }
        channels[k] = h;
    }
    return channels;
}

OptimizationResult from_design(const PrecoderDesign &design,
                               const std::vector<Eigen::VectorXcd> &channels,
                               double noise_mw)
{
    OptimizationResult res;
    res.iterations = 1;
    if (!design.ok)
    {
        res.status = failure_status(design.sdp);
        return res;
    }
    res.status = OptStatus::ok;
    res.power_mw = design.power_mw;
    res.precoder = design.precoder;
    res.trace_mw.push_back(design.power_mw);
    res.sinr = sinr_vector(channels, design.precoder, noise_mw);
    return res;
}

} // namespace

OptimizationResult benchmark(BenchmarkKind kind, const SystemConfig &cfg,
                             const ChannelRealization &real, const BenchmarkOptions &opts)
{
    const int k = cfg.num_users;
    Eigen::VectorXd gamma = Eigen::VectorXd::Constant(k, cfg.sinr_threshold());
    double noise_mw = cfg.noise_mw();

    switch (kind)
    {
    case BenchmarkKind::no_irs_optimal:
    {
        std::vector<Eigen::VectorXcd> channels(k);
        for (int i = 0; i < k; ++i)
            channels[i] = direct_channel(cfg, real, i);
        return from_design(design_precoder(channels, gamma, noise_mw), channels, noise_mw);
    }
    case BenchmarkKind::no_irs_zf:
    {
        std::vector<Eigen::VectorXcd> channels(k);
        Eigen::MatrixXcd hmat(k, cfg.num_bs_antennas());
        for (int i = 0; i < k; ++i)
        {
            channels[i] = direct_channel(cfg, real, i);
            hmat.row(i) = channels[i].adjoint();
        }
        Eigen::MatrixXcd gram = hmat * hmat.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
        OptimizationResult res;
        res.iterations = 1;
        if (es.eigenvalues().minCoeff() <=
            1.0e-12 * std::max(es.eigenvalues().maxCoeff(), 0.0))
        {
            res.status = OptStatus::solver_failure; // rank-deficient direct channel
            return res;
        }
        // Pseudo-inverse directions null all interference; each user's power
        // then follows from its SINR target alone.
        Eigen::MatrixXcd w = gram.llt().solve(hmat).adjoint();
        res.precoder.resize(cfg.num_bs_antennas(), k);
        for (int i = 0; i < k; ++i)
            res.precoder.col(i) = std::sqrt(gamma(i) * noise_mw) * w.col(i);
        res.power_mw = res.precoder.squaredNorm();
        res.trace_mw.push_back(res.power_mw);
        res.sinr = sinr_vector(channels, res.precoder, noise_mw);
        res.status = OptStatus::ok;
        return res;
    }
    case BenchmarkKind::irs_random_phase:
    {
        auto channels = random_phase_channels(cfg, real, opts.phase_seed);
        return from_design(design_precoder(channels, gamma, noise_mw), channels, noise_mw);
    }
    case BenchmarkKind::irs_specular_tiles:
    {
        std::vector<TransmissionMode> modes;
        modes.reserve(opts.wavefront_phases.size());
        for (double b0 : opts.wavefront_phases)
            modes.push_back({0.0, 0.0, b0});
        EffectiveChannelSet set = assemble_all(cfg, real, modes);
        return greedy(set, gamma, noise_mw);
    }
    }
    throw std::logic_error("unknown benchmark kind");
}

} // namespace irsforge
