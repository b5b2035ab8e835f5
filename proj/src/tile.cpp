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

#include "irsforge/tile.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

void check_positive(double v, const char *what)
{
    if (!(v > 0.0))
        throw std::invalid_argument(std::string(what) + " must be positive");
}

} // namespace

TileGeometry TileGeometry::from_counts(int qx, int qy, double dx, double dy, double l_uc)
{
    if (qx <= 0 || qy <= 0 || qx % 2 != 0 || qy % 2 != 0)
        throw std::invalid_argument("unit cell counts must be positive and even");
    check_positive(dx, "cell pitch dx");
    check_positive(dy, "cell pitch dy");
    check_positive(l_uc, "cell size l_uc");
    if (l_uc > dx + 1e-12 || l_uc > dy + 1e-12)
        throw std::invalid_argument("cell size l_uc cannot exceed the pitch");
    return {qx * dx, qy * dy, dx, dy, l_uc, qx, qy};
}

TileGeometry TileGeometry::from_size(double lx, double ly, double d, double l_uc)
{
    check_positive(d, "cell pitch");
    double fx = lx / d, fy = ly / d;
    long qx = std::lround(fx), qy = std::lround(fy);
    if (std::abs(fx - static_cast<double>(qx)) > 1e-9 || std::abs(fy - static_cast<double>(qy)) > 1e-9)
        throw std::invalid_argument("tile side must be an integer multiple of the pitch");
    return from_counts(static_cast<int>(qx), static_cast<int>(qy), d, d, l_uc);
}

double PhaseQuantizer::quantize(double beta) const
{
    if (ideal())
        return beta;
    double step = two_pi / static_cast<double>(1 << bits);
    double q = std::round(beta / step) * step;
    q = std::fmod(q, two_pi);
    if (q < 0.0)
        q += two_pi;
    return q;
}

double TileResponse::magnitude_db() const
{
    return 20.0 * std::log10(std::abs(value));
}

TileResponse continuous_response(double lx, double ly, const SteeringTarget &target,
                                 const IncidentAngle &inc, const ReflectionAngle &obs, double tau)
{
    check_positive(lx, "tile side lx");
    check_positive(ly, "tile side ly");
    double ax = combined_ax(inc, obs) - combined_ax(target.inc, target.refl);
    double ay = combined_ay(inc, obs) - combined_ay(target.inc, target.refl);
    double mag = sqrt_four_pi * tau * lx * ly * g_tilde(inc, obs);
    double pattern = sinc(pi * lx * ax) * sinc(pi * ly * ay);
    return {mag * pattern * std::polar(1.0, pi / 2.0 + target.beta0)};
}

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double> &x, std::vector<double> &w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i)
    {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it)
        {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k)
            {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

std::complex<double> radiation_integral(double lx, double ly,
                                        const std::function<double(double, double)> &beta,
                                        double axc, double ayc, int n)
{
    std::vector<double> xs, ws;
    gauss_legendre(n, xs, ws);
    std::complex<double> acc{0.0, 0.0};
    for (int iy = 0; iy < n; ++iy)
    {
        double y = 0.5 * ly * xs[iy];
        std::complex<double> row{0.0, 0.0};
        for (int ix = 0; ix < n; ++ix)
        {
            double x = 0.5 * lx * xs[ix];
            double ph = two_pi * (axc * x + ayc * y) + beta(x, y);
            row += ws[ix] * std::polar(1.0, ph);
        }
        acc += ws[iy] * row;
    }
    return acc * (0.25 * lx * ly);
}

} // namespace

TileResponse continuous_response_numeric(double lx, double ly,
                                         const std::function<double(double, double)> &beta,
                                         const IncidentAngle &inc, const ReflectionAngle &obs,
                                         double tau, double rel_tol)
{
    check_positive(lx, "tile side lx");
    check_positive(ly, "tile side ly");
    double axc = combined_ax(inc, obs);
    double ayc = combined_ay(inc, obs);
    double gt = g_tilde(inc, obs);
    // Overall sign fixed to the closed-form convention (+j); the radiation
    // integral is otherwise free in sign.
    std::complex<double> front = j1i * sqrt_four_pi * tau * gt;
    double scale = sqrt_four_pi * tau * lx * ly * std::max(gt, 1e-12);

    std::complex<double> prev = front * radiation_integral(lx, ly, beta, axc, ayc, 16);
    for (int n = 32; n <= 2048; n *= 2)
    {
        std::complex<double> cur = front * radiation_integral(lx, ly, beta, axc, ayc, n);
        double denom = std::max(std::abs(cur), 1e-9 * scale);
        if (std::abs(cur - prev) <= rel_tol * denom)
            return {cur};
        prev = cur;
    }
    return {prev};
}

std::complex<double> unit_cell_factor(const TileGeometry &geom, const IncidentAngle &inc,
                                      const ReflectionAngle &obs, double tau)
{
    double axc = combined_ax(inc, obs);
    double ayc = combined_ay(inc, obs);
    double mag = sqrt_four_pi * tau * geom.l_uc * geom.l_uc * g_tilde(inc, obs);
    return j1i * mag * sinc(pi * geom.l_uc * axc) * sinc(pi * geom.l_uc * ayc);
}

Eigen::MatrixXd phase_profile_discrete(const TileGeometry &geom, const SteeringTarget &target)
{
    double axs = combined_ax(target.inc, target.refl);
    double ays = combined_ay(target.inc, target.refl);
    Eigen::MatrixXd beta(geom.qx, geom.qy);
    for (int ix = 0; ix < geom.qx; ++ix)
    {
        double bx = -two_pi * geom.dx * axs * TileGeometry::cell_offset(ix, geom.qx);
        for (int iy = 0; iy < geom.qy; ++iy)
        {
            double by = -two_pi * geom.dy * ays * TileGeometry::cell_offset(iy, geom.qy);
            beta(ix, iy) = bx + by + target.beta0;
        }
    }
    return beta;
}

TileResponse discrete_response(const TileGeometry &geom, const SteeringTarget &target,
                               const IncidentAngle &inc, const ReflectionAngle &obs, double tau,
                               const PhaseQuantizer &quant)
{
    if (!quant.ideal())
    {
        Eigen::MatrixXd beta = phase_profile_discrete(geom, target);
        for (int ix = 0; ix < geom.qx; ++ix)
            for (int iy = 0; iy < geom.qy; ++iy)
                beta(ix, iy) = quant.quantize(beta(ix, iy));
        return brute_force_discrete(geom, beta, inc, obs, tau);
    }
    double wx = two_pi * geom.dx * (combined_ax(inc, obs) - combined_ax(target.inc, target.refl));
    double wy = two_pi * geom.dy * (combined_ay(inc, obs) - combined_ay(target.inc, target.refl));
    std::complex<double> g_uc = unit_cell_factor(geom, inc, obs, tau);
    double kernel = dirichlet_ratio(0.5 * wx, geom.qx) * dirichlet_ratio(0.5 * wy, geom.qy);
    return {g_uc * kernel * std::polar(1.0, target.beta0 + 0.5 * (wx + wy))};
}

TileResponse brute_force_discrete(const TileGeometry &geom, const Eigen::MatrixXd &beta,
                                  const IncidentAngle &inc, const ReflectionAngle &obs, double tau)
{
    if (beta.rows() != geom.qx || beta.cols() != geom.qy)
        throw std::invalid_argument("phase profile dimensions do not match the tile");
    double axc = combined_ax(inc, obs);
    double ayc = combined_ay(inc, obs);
    std::complex<double> acc{0.0, 0.0};
    for (int ix = 0; ix < geom.qx; ++ix)
    {
        double px = two_pi * geom.dx * axc * TileGeometry::cell_offset(ix, geom.qx);
        for (int iy = 0; iy < geom.qy; ++iy)
        {
            double py = two_pi * geom.dy * ayc * TileGeometry::cell_offset(iy, geom.qy);
            acc += std::polar(1.0, beta(ix, iy) + px + py);
        }
    }
    return {unit_cell_factor(geom, inc, obs, tau) * acc};
}

double irs_pathloss(const TileResponse &g, double rho_t, double rho_r, double lambda)
{
    check_positive(rho_t, "distance rho_t");
    check_positive(rho_r, "distance rho_r");
    check_positive(lambda, "wavelength");
    double pl_t = std::pow(lambda / (4.0 * pi * rho_t), 2);
    double pl_r = std::pow(lambda / (4.0 * pi * rho_r), 2);
    return 4.0 * pi * std::norm(g.value) * pl_t * pl_r;
}

double min_required_area(double lambda, double rho_d, double rho_t, double rho_r)
{
    check_positive(lambda, "wavelength");
    check_positive(rho_d, "distance rho_d");
    check_positive(rho_t, "distance rho_t");
    check_positive(rho_r, "distance rho_r");
    return lambda * rho_t * rho_r / rho_d;
}

long min_required_unit_cells(double lambda, double rho_d, double rho_t, double rho_r, double l_uc)
{
    check_positive(l_uc, "cell size l_uc");
    double area = min_required_area(lambda, rho_d, rho_t, rho_r);
    return static_cast<long>(std::ceil(area / (l_uc * l_uc) - 1e-9));
}

double passivity_tau(const IncidentAngle &inc, const SteeringTarget &target)
{
    DirectionCosines at = direction_cosines(inc);
    double dx = combined_ax(target.inc, target.refl) - at.ax;
    double dy = combined_ay(target.inc, target.refl) - at.ay;
    double s = std::hypot(dx, dy);
    if (s > 1.0 + 1e-12)
        throw EvanescentError("target reflection is evanescent for this incidence");
    s = std::min(s, 1.0);
    double cos_r = std::sqrt(std::max(0.0, 1.0 - s * s));
    if (cos_r == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::sqrt(std::cos(inc.theta) / cos_r);
}

} // namespace irsforge
