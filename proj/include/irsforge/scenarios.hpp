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
// Named experiment scenarios behind the command-line runner.  Each scenario
// reads its parameters from a Config (every key has a default, so an empty
// config runs the stock setup), writes CSVs plus manifest.txt into the
// output directory, and is deterministic in (config, seed, realizations).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsforge/channel.hpp"
#include "irsforge/io.hpp"
#include "irsforge/optimizer.hpp"

namespace irsforge {

struct ScenarioRequest
{
    std::string name;
    Config config;
    std::uint64_t seed = 1;
    int realizations = 0; // 0 keeps the scenario default
    std::string out_dir = "out";
};

std::vector<std::string> scenario_names();

// Runs one scenario end to end and writes its manifest.  Throws
// std::invalid_argument for an unknown name.
RunManifest run_scenario(const ScenarioRequest &req);

// Gradient grid of `size` entries with half-support `support` (<= 1/2):
// endpoint-inclusive uniform spacing inside the fold circle; at full support
// the endpoints coincide, so the grid switches to circle-uniform spacing.
std::vector<double> gradient_grid(int size, double support);

// Offline codebook for a system: nx x ny reflection grid over the effective
// gradient support of the cell pitch, n0-point common-phase circle.
OfflineCodebook default_codebook(const SystemConfig &cfg, int nx, int ny, int n0);

// Union over users of the `top_per_user` strongest reflection pairs of the
// codebook (end-to-end channel norm), crossed with the full common-phase
// grid; the online mode list.
std::vector<TransmissionMode> preselect_transmission_modes(const SystemConfig &cfg,
                                                           const ChannelRealization &real,
                                                           const OfflineCodebook &book,
                                                           int top_per_user);

// Greedy configuration followed by alternating refinement started from the
// greedy solution.  `refined` falls back to the greedy result when greedy
// itself fails.
//
// With `restarts` > 0 the refinement additionally runs that many alternating
// passes from random feasible selections (drawn deterministically from
// `restart_seed`) and keeps the best outcome; the mixed-integer landscape
// has many local optima several dB apart, so restarts recover most of the
// gap to the exhaustive optimum at a linear cost in solver calls.
struct PipelineResult
{
    OptimizationResult greedy;
    OptimizationResult refined;
};

PipelineResult greedy_then_ao(const EffectiveChannelSet &set, const Eigen::VectorXd &gamma,
                              double noise_mw, const AoOptions &opts = {}, int restarts = 0,
                              std::uint64_t restart_seed = 0);

} // namespace irsforge
