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
// Spherical-angle types and the polarization geometry of a reflecting
// surface lying in the x-y plane.  Angles are radians internally; degrees
// appear only at construction/serialization boundaries.

#pragma once

#include <cmath>

namespace irsforge {

struct Vec3
{
    double x = 0.0, y = 0.0, z = 0.0;

    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3 &o) const
    {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

// Direction of an incident plane wave: elevation theta from the surface
// normal (+z), azimuth phi, and the polarization angle pol describing the
// orientation of the incident E-field around the propagation axis.
struct IncidentAngle
{
    double theta = 0.0; // [0, pi/2]
    double phi = 0.0;   // [0, 2*pi)
    double pol = 0.0;   // [0, 2*pi)

    static IncidentAngle from_degrees(double theta_deg, double phi_deg, double pol_deg);
    bool valid() const;
};

// Observation (reflection) direction.
struct ReflectionAngle
{
    double theta = 0.0; // [0, pi/2]
    double phi = 0.0;   // [0, 2*pi)

    static ReflectionAngle from_degrees(double theta_deg, double phi_deg);
    bool valid() const;
};

// Direction cosines (A_x, A_y, A_z) of a unit vector pointing away from the
// surface toward the source or observation point.
struct DirectionCosines
{
    double ax = 0.0, ay = 0.0, az = 0.0;

    Vec3 vec() const { return {ax, ay, az}; }
};

DirectionCosines direction_cosines(double theta, double phi);
inline DirectionCosines direction_cosines(const IncidentAngle &a) { return direction_cosines(a.theta, a.phi); }
inline DirectionCosines direction_cosines(const ReflectionAngle &a) { return direction_cosines(a.theta, a.phi); }

// Sum of incident and observation direction cosines; this combination is
// what the tile phase response depends on.
inline double combined_ax(const IncidentAngle &t, const ReflectionAngle &r)
{
    return direction_cosines(t).ax + direction_cosines(r).ax;
}
inline double combined_ay(const IncidentAngle &t, const ReflectionAngle &r)
{
    return direction_cosines(t).ay + direction_cosines(r).ay;
}

// Projection factor of the incident magnetic field onto the surface,
// c = A_z / sqrt(A_xy^2 + A_z^2) with A_xy the in-plane component along the
// polarization direction.  Lies in [cos(theta), 1].  The 0/0 corner at
// grazing incidence with A_xy = 0 is resolved by continuity to 1.
double c_factor(const IncidentAngle &inc);

// Orthonormal polarization basis attached to an incident wave: a_h is the
// direction of the magnetic field, a_e = a_t x a_h that of the electric
// field.  The overall sign b of a_h is a free convention; it is fixed to +1.
struct PolarizationFrame
{
    Vec3 a_e;
    Vec3 a_h;
    double b = 1.0;
};

PolarizationFrame polarization_frame(const IncidentAngle &inc);

// Angular factor of the reflected far field, the product of c and the
// projection of the induced surface current onto the observation
// polarization basis.  Dimensionless, in [0, 1].
double g_tilde(const IncidentAngle &inc, const ReflectionAngle &obs);

} // namespace irsforge
