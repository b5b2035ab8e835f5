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
// SINR-constrained transmit power minimization for the multi-user MISO
// downlink, in semidefinite relaxation over per-user transmit covariance
// matrices.  Solved by a dense primal-dual interior-point method on the
// real symmetric embedding of the Hermitian blocks.  Intended for the
// small dense regime (N_t <= 64 antennas, K <= 8 users); every solve is
// deterministic and reports a certified duality gap.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace irsforge {

// Problem data.  minimize sum_k tr(X_k) subject to, for every user k,
//   h_k^H X_k h_k - gamma_k * sum_{k'!=k} h_k^H X_{k'} h_k >= gamma_k * noise
//   X_k Hermitian PSD,
// where X_k is the covariance of the signal intended for user k and h_k its
// effective channel.  Powers are in mW throughout.
struct PowerMinSdp
{
    std::vector<Eigen::VectorXcd> channels; // effective channel, one per user
    Eigen::VectorXd gamma;                  // linear SINR targets, one per user
    double noise_mw = 1.0;

    int num_users() const { return static_cast<int>(channels.size()); }
    int num_antennas() const
    {
        return channels.empty() ? 0 : static_cast<int>(channels[0].size());
    }
    // Throws std::invalid_argument on inconsistent dimensions, negative
    // targets, or non-positive noise power.
    void validate() const;
};

struct SdpOptions
{
    double tol = 1.0e-8;     // relative duality gap and KKT residual target
    int max_iter = 200;
    double step_frac = 0.98; // fraction of the step to the cone boundary
};

enum class SdpStatus
{
    optimal,
    infeasible, // Farkas dual ray found; the certificate is left in `dual`
    max_iterations,
    numerical_error,
};

struct SdpSolution
{
    SdpStatus status = SdpStatus::numerical_error;
    std::vector<Eigen::MatrixXcd> covariance; // X_k
    std::vector<Eigen::MatrixXcd> dual_slack; // Z_k, PSD complements of X_k
    Eigen::VectorXd dual;                     // constraint multipliers, >= 0
    double primal_mw = 0.0;                   // sum_k tr(X_k)
    double dual_mw = 0.0;
    double rel_gap = 0.0;                     // |primal - dual| normalized
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;

    bool ok() const { return status == SdpStatus::optimal; }
    // Usable as an optimization sub-step even when the iteration cap was
    // reached just short of the target gap.
    bool usable(double gap_tol = 1.0e-6) const
    {
        return status == SdpStatus::optimal ||
               (status == SdpStatus::max_iterations && rel_gap < gap_tol);
    }
};

SdpSolution solve_sdp(const PowerMinSdp &problem, const SdpOptions &opts = {});

// Beamformer recovery from the covariance solution.  A block whose second
// eigenvalue is below ratio_tol times its first is treated as exactly rank
// one and yields q_k = sqrt(lambda_max) * v_max; otherwise the
// trace-preserving replacement sqrt(tr X_k) * v_max is used and the SINR
// constraints are re-verified, with the outcome reported in `feasible`.
struct RankOneExtraction
{
    Eigen::MatrixXcd precoder; // N_t x K, column k serves user k
    bool exact = false;        // every X_k was numerically rank one
    bool feasible = false;     // extracted columns pass the SINR constraints
    double power_mw = 0.0;     // tr(Q Q^H)
};

RankOneExtraction rank_one_extract(const PowerMinSdp &problem, const SdpSolution &sol,
                                   double ratio_tol = 1.0e-6);

// SINR of precoder column k against the problem's channels and noise.
double achieved_sinr(const PowerMinSdp &problem, const Eigen::MatrixXcd &precoder, int k);

} // namespace irsforge
