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

#include "irsforge/angles.hpp"

#include "irsforge/common.hpp"

namespace irsforge {

namespace {

double wrap_two_pi(double a)
{
    double w = std::fmod(a, two_pi);
    if (w < 0.0)
        w += two_pi;
    return w;
}

} // namespace

IncidentAngle IncidentAngle::from_degrees(double theta_deg, double phi_deg, double pol_deg)
{
    return {deg2rad(theta_deg), wrap_two_pi(deg2rad(phi_deg)), wrap_two_pi(deg2rad(pol_deg))};
}

bool IncidentAngle::valid() const
{
    return theta >= 0.0 && theta <= pi / 2.0 && phi >= 0.0 && phi < two_pi && pol >= 0.0 && pol < two_pi;
}

ReflectionAngle ReflectionAngle::from_degrees(double theta_deg, double phi_deg)
{
    return {deg2rad(theta_deg), wrap_two_pi(deg2rad(phi_deg))};
}

bool ReflectionAngle::valid() const
{
    return theta >= 0.0 && theta <= pi / 2.0 && phi >= 0.0 && phi < two_pi;
}

DirectionCosines direction_cosines(double theta, double phi)
{
    double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double c_factor(const IncidentAngle &inc)
{
    DirectionCosines a = direction_cosines(inc);
    double a_xy = std::cos(inc.pol) * a.ax + std::sin(inc.pol) * a.ay;
    double d2 = a_xy * a_xy + a.az * a.az;
    if (d2 == 0.0)
        return 1.0; // grazing incidence with in-plane H, limit of az/|az|
    return a.az / std::sqrt(d2);
}

PolarizationFrame polarization_frame(const IncidentAngle &inc)
{
    DirectionCosines a = direction_cosines(inc);
    double c = c_factor(inc);
    double b = 1.0;
    // The z-component magnitude is sqrt(1-c^2); its sign must oppose the
    // in-plane projection a_xy so that a_h stays transverse to the
    // propagation axis.
    double a_xy = std::cos(inc.pol) * a.ax + std::sin(inc.pol) * a.ay;
    double den = std::hypot(a_xy, a.az);
    double hz = den == 0.0 ? 0.0 : -a_xy / den;
    Vec3 a_h{b * c * std::cos(inc.pol), b * c * std::sin(inc.pol), b * hz};
    Vec3 a_t = a.vec();
    return {a_t.cross(a_h), a_h, b};
}

double g_tilde(const IncidentAngle &inc, const ReflectionAngle &obs)
{
    double cp = std::cos(inc.pol), sp = std::sin(inc.pol);
    double ctr = std::cos(obs.theta);
    double cpr = std::cos(obs.phi), spr = std::sin(obs.phi);
    double u = cp * ctr * spr - sp * ctr * cpr;
    double v = sp * spr + cp * cpr;
    return c_factor(inc) * std::hypot(u, v);
}

} // namespace irsforge
