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
// Predictor-corrector interior-point solver.  The Hermitian blocks X_k are
// mapped to real symmetric blocks [[Re X, -Im X], [Im X, Re X]] scaled so
// that traces and constraint values carry over unchanged; the per-user
// inequality constraints receive one nonnegative slack each, collected in
// an additional diagonal block.  Channels are normalized by their largest
// norm and the noise power is factored out entirely, so the solved system
// is well scaled independent of the link budget; the covariance recovery
// undoes both scalings.

#include "irsforge/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

// Real symmetric embedding of a Hermitian matrix H = A + iB.
Eigen::MatrixXd embed(const Eigen::MatrixXcd &h)
{
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd t(2 * n, 2 * n);
    t.topLeftCorner(n, n) = h.real();
    t.topRightCorner(n, n) = -h.imag();
    t.bottomLeftCorner(n, n) = h.imag();
    t.bottomRightCorner(n, n) = h.real();
    return t;
}

// Inverse of embed() for (numerically) structured symmetric matrices,
// averaging the redundant copies and re-Hermitianizing.
Eigen::MatrixXcd unembed(const Eigen::MatrixXd &t)
{
    const Eigen::Index n = t.rows() / 2;
    Eigen::MatrixXd a =
        0.5 * (t.topLeftCorner(n, n) + t.bottomRightCorner(n, n));
    Eigen::MatrixXd b = 0.5 * (t.bottomLeftCorner(n, n) - t.topRightCorner(n, n));
    Eigen::MatrixXcd h =
        a.cast<std::complex<double>>() +
        std::complex<double>(0.0, 1.0) * b.cast<std::complex<double>>();
    return 0.5 * (h + h.adjoint().eval());
}

// tr(A * M) for symmetric A and arbitrary M.
double trdot(const Eigen::MatrixXd &a, const Eigen::MatrixXd &m)
{
    return a.cwiseProduct(m.transpose()).sum();
}

// Largest step t >= 0 with X + t*D staying positive definite, via the
// smallest eigenvalue of L^-1 D L^-T where X = L L^T.
double step_to_boundary(const Eigen::MatrixXd &x, const Eigen::MatrixXd &d)
{
    Eigen::LLT<Eigen::MatrixXd> llt(x);
    if (llt.info() != Eigen::Success)
        return 0.0;
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(d);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (w + w.transpose().eval()),
                                                      Eigen::EigenvaluesOnly);
    double lam = es.eigenvalues().minCoeff();
    if (lam >= -1.0e-14)
        return std::numeric_limits<double>::infinity();
    return -1.0 / lam;
}

// Scaled, embedded problem: K symmetric blocks of size 2*N_t plus one
// diagonal slack block of size K,
//   minimize sum_b tr(C_b Y_b)  s.t.  sum_b tr(A_ib Y_b) = b_i, Y_b PSD.
struct ConicForm
{
    int num_con = 0;
    std::vector<int> dim;                          // block sizes
    std::vector<Eigen::MatrixXd> c;                // objective per block
    std::vector<std::vector<Eigen::MatrixXd>> a;   // a[i][b]
    Eigen::VectorXd b;
    double total_dim = 0.0;
};

ConicForm build_form(const PowerMinSdp &problem, double u2)
{
    const int k = problem.num_users();
    const int nt = problem.num_antennas();
    const double u = std::sqrt(u2);

    ConicForm f;
    f.num_con = k;
    f.dim.assign(k + 1, 2 * nt);
    f.dim[k] = k;
    f.b = problem.gamma;
    f.total_dim = static_cast<double>(k) * (2 * nt) + k;

    f.c.resize(k + 1);
    for (int b = 0; b < k; ++b)
        f.c[b] = 0.5 * Eigen::MatrixXd::Identity(2 * nt, 2 * nt);
    f.c[k] = Eigen::MatrixXd::Zero(k, k);

    std::vector<Eigen::MatrixXd> outer(k);
    for (int i = 0; i < k; ++i)
    {
        Eigen::VectorXcd hn = problem.channels[i] / u;
        outer[i] = embed(hn * hn.adjoint());
    }

    f.a.resize(k);
    for (int i = 0; i < k; ++i)
    {
        f.a[i].resize(k + 1);
        for (int b = 0; b < k; ++b)
            f.a[i][b] = (b == i ? 0.5 : -0.5 * problem.gamma(i)) * outer[i];
        f.a[i][k] = Eigen::MatrixXd::Zero(k, k);
        f.a[i][k](i, i) = -1.0;
    }
    return f;
}

// Farkas certificate of primal infeasibility: y >= 0 (after clamping tiny
// negatives) with sum_i y_i A_ib negative semidefinite on every block and
// b^T y > 0.
bool is_infeasibility_ray(const ConicForm &f, Eigen::VectorXd y)
{
    y = y.cwiseMax(0.0);
    double ny = y.norm();
    if (!(ny > 0.0))
        return false;
    y /= ny;
    if (f.b.dot(y) < 1.0e-6)
        return false;
    for (int b = 0; b + 1 < static_cast<int>(f.dim.size()); ++b)
    {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(f.dim[b], f.dim[b]);
        for (int i = 0; i < f.num_con; ++i)
            w += y(i) * f.a[i][b];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().maxCoeff() > 1.0e-9 * (1.0 + w.norm()))
            return false;
    }
    return true;
}

struct Iterate
{
    std::vector<Eigen::MatrixXd> x, s;
    Eigen::VectorXd y;
};

struct Direction
{
    std::vector<Eigen::MatrixXd> dx, ds;
    Eigen::VectorXd dy;
};

// One Newton direction of the predictor-corrector scheme.  `nu` is the
// centrality target; `corr` (the predictor direction) enables the
// second-order correction term.  Returns false on a singular Schur system.
bool newton_direction(const ConicForm &f, const Iterate &it,
                      const std::vector<Eigen::MatrixXd> &sinv,
                      const std::vector<Eigen::MatrixXd> &rd,
                      const Eigen::VectorXd &rp, double nu, const Direction *corr,
                      Direction &out)
{
    const int m = f.num_con;
    const int nb = static_cast<int>(f.dim.size());

    std::vector<Eigen::MatrixXd> kc(nb);
    if (corr)
        for (int b = 0; b < nb; ++b)
            kc[b] = corr->dx[b] * corr->ds[b] * sinv[b];

    // Schur complement M_ij = sum_b tr(A_ib X_b A_jb S_b^-1) and its
    // right-hand side.
    Eigen::MatrixXd schur(m, m);
    Eigen::VectorXd rhs = rp;
    std::vector<std::vector<Eigen::MatrixXd>> w(m);
    for (int j = 0; j < m; ++j)
    {
        w[j].resize(nb);
        for (int b = 0; b < nb; ++b)
            w[j][b] = it.x[b] * f.a[j][b] * sinv[b];
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
        {
            double v = 0.0;
            for (int b = 0; b < nb; ++b)
                v += trdot(f.a[i][b], w[j][b]);
            schur(i, j) = v;
        }
    for (int i = 0; i < m; ++i)
    {
        double v = 0.0;
        for (int b = 0; b < nb; ++b)
        {
            v += -nu * sinv[b].cwiseProduct(f.a[i][b]).sum();
            v += trdot(f.a[i][b], it.x[b]);
            v += trdot(f.a[i][b], it.x[b] * rd[b] * sinv[b]);
            if (corr)
                v += trdot(f.a[i][b], kc[b]);
        }
        rhs(i) += v;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(schur);
    out.dy = lu.solve(rhs);
    if (!out.dy.allFinite())
        return false;

    out.ds.resize(nb);
    out.dx.resize(nb);
    for (int b = 0; b < nb; ++b)
    {
        out.ds[b] = rd[b];
        for (int j = 0; j < m; ++j)
            out.ds[b] -= out.dy(j) * f.a[j][b];
        Eigen::MatrixXd dxh = nu * sinv[b] - it.x[b] - it.x[b] * out.ds[b] * sinv[b];
        if (corr)
            dxh -= kc[b];
        out.dx[b] = 0.5 * (dxh + dxh.transpose().eval());
    }
    return true;
}

} // namespace

void PowerMinSdp::validate() const
{
    if (channels.empty())
        throw std::invalid_argument("at least one user required");
    if (gamma.size() != num_users())
        throw std::invalid_argument("one SINR target per user required");
    const Eigen::Index nt = channels[0].size();
    if (nt < 1)
        throw std::invalid_argument("empty channel vector");
    for (const auto &h : channels)
        if (h.size() != nt)
            throw std::invalid_argument("channel dimensions differ between users");
    for (int k = 0; k < num_users(); ++k)
        if (!(gamma(k) >= 0.0) || !std::isfinite(gamma(k)))
            throw std::invalid_argument("SINR targets must be finite and nonnegative");
    if (!(noise_mw > 0.0) || !std::isfinite(noise_mw))
        throw std::invalid_argument("noise power must be positive");
}

SdpSolution solve_sdp(const PowerMinSdp &problem, const SdpOptions &opts)
{
    problem.validate();
    const int k = problem.num_users();
    const int nt = problem.num_antennas();

    SdpSolution sol;
    sol.covariance.assign(k, Eigen::MatrixXcd::Zero(nt, nt));
    sol.dual_slack.assign(k, Eigen::MatrixXcd::Zero(nt, nt));
    sol.dual = Eigen::VectorXd::Zero(k);

    double u2 = 0.0;
    for (const auto &h : problem.channels)
        u2 = std::max(u2, h.squaredNorm());

    // A user with a positive target but no channel is a one-line Farkas ray.
    for (int i = 0; i < k; ++i)
        if (problem.gamma(i) > 0.0 && problem.channels[i].squaredNorm() == 0.0)
        {
            sol.status = SdpStatus::infeasible;
            sol.dual(i) = 1.0;
            return sol;
        }

    // Zero covariances are optimal when every target is zero, and the only
    // remaining option when every channel is zero (positive targets with a
    // zero channel were caught above).
    if (u2 == 0.0 || problem.gamma.maxCoeff() <= 0.0)
    {
        sol.status = SdpStatus::optimal;
        for (int i = 0; i < k; ++i)
            sol.dual_slack[i] = Eigen::MatrixXcd::Identity(nt, nt);
        return sol;
    }

    ConicForm f = build_form(problem, u2);

    // Infeasible start on the central ray.
    double bscale = 1.0 + f.b.cwiseAbs().maxCoeff();
    double ascale = 1.0;
    for (int i = 0; i < k; ++i)
        for (const auto &ab : f.a[i])
            ascale = std::max(ascale, ab.norm());
    Iterate it;
    it.x.resize(f.dim.size());
    it.s.resize(f.dim.size());
    for (std::size_t b = 0; b < f.dim.size(); ++b)
    {
        it.x[b] = 10.0 * bscale * Eigen::MatrixXd::Identity(f.dim[b], f.dim[b]);
        it.s[b] = 10.0 * ascale * Eigen::MatrixXd::Identity(f.dim[b], f.dim[b]);
    }
    it.y = Eigen::VectorXd::Zero(k);

    const int nb = static_cast<int>(f.dim.size());
    double cnorm = 1.0;
    for (const auto &cb : f.c)
        cnorm += cb.norm();

    auto fill_solution = [&](const Iterate &cur, int iters) {
        double scale = problem.noise_mw / u2;
        for (int i = 0; i < k; ++i)
        {
            sol.covariance[i] = scale * unembed(cur.x[i]);
            sol.dual_slack[i] = unembed(2.0 * cur.s[i]);
        }
        sol.dual = cur.y / u2;
        sol.primal_mw = 0.0;
        for (int i = 0; i < k; ++i)
            sol.primal_mw += sol.covariance[i].real().trace();
        sol.dual_mw = 0.0;
        for (int i = 0; i < k; ++i)
            sol.dual_mw += problem.gamma(i) * problem.noise_mw * sol.dual(i);
        sol.iterations = iters;
    };

    for (int iter = 0; iter <= opts.max_iter; ++iter)
    {
        // Residuals and duality measure.
        Eigen::VectorXd rp = f.b;
        for (int i = 0; i < k; ++i)
            for (int b = 0; b < nb; ++b)
                rp(i) -= trdot(f.a[i][b], it.x[b]);
        std::vector<Eigen::MatrixXd> rd(nb);
        double rdnorm = 0.0;
        for (int b = 0; b < nb; ++b)
        {
            rd[b] = f.c[b] - it.s[b];
            for (int j = 0; j < k; ++j)
                rd[b] -= it.y(j) * f.a[j][b];
            rdnorm += rd[b].squaredNorm();
        }
        rdnorm = std::sqrt(rdnorm);

        double mu = 0.0;
        for (int b = 0; b < nb; ++b)
            mu += it.x[b].cwiseProduct(it.s[b]).sum();
        mu /= f.total_dim;

        double obj_p = 0.0;
        for (int b = 0; b < nb; ++b)
            obj_p += trdot(f.c[b], it.x[b]);
        double obj_d = f.b.dot(it.y);

        sol.primal_residual = rp.norm() / (1.0 + f.b.norm());
        sol.dual_residual = rdnorm / cnorm;
        sol.rel_gap = std::abs(obj_p - obj_d) / (1.0 + std::abs(obj_p) + std::abs(obj_d));

        if (sol.primal_residual < opts.tol && sol.dual_residual < opts.tol &&
            sol.rel_gap < opts.tol)
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::optimal;
            return sol;
        }
        if (iter >= 5 && sol.primal_residual > 1.0e3 * opts.tol &&
            is_infeasibility_ray(f, it.y))
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::infeasible;
            sol.dual = it.y.cwiseMax(0.0);
            sol.dual /= std::max(sol.dual.norm(), 1.0e-300);
            return sol;
        }
        if (iter == opts.max_iter)
            break;

        std::vector<Eigen::MatrixXd> sinv(nb);
        bool chol_ok = true;
        for (int b = 0; b < nb && chol_ok; ++b)
        {
            Eigen::LLT<Eigen::MatrixXd> llt(it.s[b]);
            if (llt.info() != Eigen::Success)
                chol_ok = false;
            else
                sinv[b] = llt.solve(Eigen::MatrixXd::Identity(f.dim[b], f.dim[b]));
        }
        if (!chol_ok)
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::numerical_error;
            return sol;
        }

        Direction aff;
        if (!newton_direction(f, it, sinv, rd, rp, 0.0, nullptr, aff))
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::numerical_error;
            return sol;
        }
        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b)
        {
            ap = std::min(ap, opts.step_frac * step_to_boundary(it.x[b], aff.dx[b]));
            ad = std::min(ad, opts.step_frac * step_to_boundary(it.s[b], aff.ds[b]));
        }

        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            mu_aff += (it.x[b] + ap * aff.dx[b])
                          .cwiseProduct(it.s[b] + ad * aff.ds[b])
                          .sum();
        mu_aff /= f.total_dim;
        double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

        Direction dir;
        if (!newton_direction(f, it, sinv, rd, rp, sigma * mu, &aff, dir))
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::numerical_error;
            return sol;
        }
        ap = 1.0;
        ad = 1.0;
        for (int b = 0; b < nb; ++b)
        {
            ap = std::min(ap, opts.step_frac * step_to_boundary(it.x[b], dir.dx[b]));
            ad = std::min(ad, opts.step_frac * step_to_boundary(it.s[b], dir.ds[b]));
        }
        if (!(ap > 0.0) || !(ad > 0.0))
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::numerical_error;
            return sol;
        }
        for (int b = 0; b < nb; ++b)
        {
            it.x[b] += ap * dir.dx[b];
            it.s[b] += ad * dir.ds[b];
        }
        it.y += ad * dir.dy;
        if (!it.y.allFinite())
        {
            fill_solution(it, iter);
            sol.status = SdpStatus::numerical_error;
            return sol;
        }
    }

    fill_solution(it, opts.max_iter);
    sol.status = is_infeasibility_ray(f, it.y) ? SdpStatus::infeasible
                                               : SdpStatus::max_iterations;
    return sol;
}

RankOneExtraction rank_one_extract(const PowerMinSdp &problem, const SdpSolution &sol,
                                   double ratio_tol)
{
    const int k = problem.num_users();
    const int nt = problem.num_antennas();
    RankOneExtraction out;
    out.precoder = Eigen::MatrixXcd::Zero(nt, k);
    out.exact = true;

    for (int i = 0; i < k; ++i)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sol.covariance[i]);
        const Eigen::VectorXd &lam = es.eigenvalues(); // ascending
        double lmax = lam(nt - 1);
        if (lmax <= 0.0)
            continue; // zero covariance, zero column
        double second = nt > 1 ? std::max(lam(nt - 2), 0.0) : 0.0;
        bool rank_one = second <= ratio_tol * lmax;
        double amp = rank_one ? std::sqrt(lmax)
                              : std::sqrt(std::max(sol.covariance[i].real().trace(), 0.0));
        out.precoder.col(i) = amp * es.eigenvectors().col(nt - 1);
        out.exact = out.exact && rank_one;
    }

    out.power_mw = out.precoder.squaredNorm();
    out.feasible = true;
    for (int i = 0; i < k; ++i)
    {
        double got = achieved_sinr(problem, out.precoder, i);
        if (got < problem.gamma(i) * (1.0 - 1.0e-6))
            out.feasible = false;
    }
    return out;
}

double achieved_sinr(const PowerMinSdp &problem, const Eigen::MatrixXcd &precoder, int k)
{
    double sig = std::norm(problem.channels.at(k).dot(precoder.col(k)));
    double intf = 0.0;
    for (Eigen::Index j = 0; j < precoder.cols(); ++j)
        if (j != k)
            intf += std::norm(problem.channels[k].dot(precoder.col(j)));
    return sig / (intf + problem.noise_mw);
}

} // namespace irsforge
