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
// Online configuration stage: joint selection of one transmission mode per
// tile and a downlink precoder minimizing base-station transmit power under
// per-user SINR constraints.  Provides the per-tile closed-form subproblem,
// the precoder subproblem (semidefinite relaxation), an alternating
// optimizer, a greedy one-tile-per-step optimizer, benchmark schemes, and
// an exhaustive oracle for tiny instances.

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "irsforge/channel.hpp"
#include "irsforge/sdp.hpp"

namespace irsforge {

// Per-tile mode assignment: selection[n] indexes the shared mode list of an
// EffectiveChannelSet; -1 marks a tile that is not configured yet and
// contributes nothing to the channel.
using ModeSelection = std::vector<int>;

enum class OptStatus
{
    ok,
    infeasible,     // no precoder can meet the SINR targets
    solver_failure, // an inner solve did not certify a usable answer
};

struct OptimizationResult
{
    OptStatus status = OptStatus::solver_failure;
    double power_mw = std::numeric_limits<double>::infinity();
    ModeSelection selection;
    Eigen::MatrixXcd precoder;    // N_t x K, column k serves user k
    std::vector<double> trace_mw; // power after every subproblem solve
    Eigen::VectorXd sinr;         // achieved per-user SINR, linear
    int iterations = 0;

    double power_dbm() const;
};

// SINR of user k under a complete selection (Eq.-style literal evaluation
// over the cached per-tile channels).  Throws on invalid selections; pass
// allow_partial to evaluate intermediate states with unconfigured tiles.
double sinr(const EffectiveChannelSet &set, const ModeSelection &sel,
            const Eigen::MatrixXcd &precoder, double noise_mw, int k,
            bool allow_partial = false);

// Smallest power p such that sqrt(p) times the normalized precoder
// directions meets every SINR target over the given per-user channels;
// +infinity when no scaling does.  The input precoder is normalized to
// unit total power internally.
double required_power(const std::vector<Eigen::VectorXcd> &channels,
                      const Eigen::MatrixXcd &precoder, const Eigen::VectorXd &gamma,
                      double noise_mw);

// Interference coefficients of tile n for the per-tile subproblem: entry
// [m](k, k') is |(h_background,k + h(n, m, k))^H q~_k'|^2 where the
// background holds the direct link and every other configured tile.
std::vector<Eigen::MatrixXd> f_coefficients(const EffectiveChannelSet &set, int n,
                                            const ModeSelection &sel,
                                            const Eigen::MatrixXcd &precoder);

// Closed-form solution of the per-tile subproblem: cheapest (mode, power)
// pair for fixed precoder directions and fixed other tiles.  Tie breaks go
// to the lowest mode index; `feasible` is false when every mode fails.
struct TileDecision
{
    int mode = -1;
    double power_mw = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

TileDecision solve_p1(const std::vector<Eigen::MatrixXd> &f, const Eigen::VectorXd &gamma,
                      double noise_mw);

// Precoder subproblem for a fixed selection: semidefinite relaxation plus
// rank-one recovery.  power_mw is the relaxation objective.
struct PrecoderDesign
{
    bool ok = false;
    double power_mw = std::numeric_limits<double>::infinity();
    Eigen::MatrixXcd precoder;
    SdpSolution sdp;
    RankOneExtraction extraction;
};

PrecoderDesign solve_p2(const EffectiveChannelSet &set, const ModeSelection &sel,
                        const Eigen::VectorXd &gamma, double noise_mw,
                        bool allow_partial = true);

struct AoOptions
{
    int max_outer = 5;       // outer iteration cap
    double rel_tol = 1.0e-6; // stop once the outer power change is below this
};

// Alternating optimization over tile modes (closed form, one tile at a
// time) and the precoder (semidefinite relaxation).  Every candidate update
// is accepted only when it does not increase the tracked power, so the
// recorded trace is non-increasing by construction; trace_mw[0] is the
// power required by the initial point itself.
OptimizationResult alternating_optimization(const EffectiveChannelSet &set,
                                            const Eigen::VectorXd &gamma, double noise_mw,
                                            const ModeSelection &init_sel,
                                            const Eigen::MatrixXcd &init_precoder,
                                            const AoOptions &opts = {});

// Greedy construction: starting from the bare direct link, configures one
// tile per step, choosing the mode that most strengthens the channel of the
// currently most power-hungry user, with a precoder redesign before every
// step and once more at the end (N + 1 designs in total).
OptimizationResult greedy(const EffectiveChannelSet &set, const Eigen::VectorXd &gamma,
                          double noise_mw);

// Exhaustive enumeration of all complete selections; global optimum for
// tiny instances.  Throws std::invalid_argument when the number of
// selections exceeds max_instances.
OptimizationResult brute_force_mip(const EffectiveChannelSet &set,
                                   const Eigen::VectorXd &gamma, double noise_mw,
                                   double max_instances = 1.0e4);

enum class BenchmarkKind
{
    no_irs_optimal,     // direct link only, optimal precoder
    no_irs_zf,          // direct link only, zero-forcing directions
    irs_random_phase,   // independent uniform phase per unit cell
    irs_specular_tiles, // per-tile constant phase offsets, greedy-selected
};

struct BenchmarkOptions
{
    // Common-phase offsets available to the specular-tiles scheme, as
    // fractions of a full turn.
    std::vector<double> wavefront_phases = {0.0, 0.25, 0.5, 0.75};
    // Seed for the random-phase scheme's per-cell draws.
    std::uint64_t phase_seed = 1;
};

OptimizationResult benchmark(BenchmarkKind kind, const SystemConfig &cfg,
                             const ChannelRealization &real,
                             const BenchmarkOptions &opts = {});

} // namespace irsforge
