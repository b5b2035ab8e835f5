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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace irsforge {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double sqrt_four_pi = 3.5449077018110318;

// Propagation speed used when converting a carrier frequency to a wavelength.
// The engineering convention 3e8 m/s is used throughout; tile sizing laws at
// 5/10/28 GHz depend on it.
inline constexpr double speed_of_light = 3.0e8;

inline constexpr std::complex<double> j1i{0.0, 1.0};

inline double deg2rad(double d) { return d * (pi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / pi); }

// Power ratios. db2lin(3.01) ~ 2.
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm2mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw2dbm(double mw) { return 10.0 * std::log10(mw); }

inline double wavelength_from_freq(double f_hz) { return speed_of_light / f_hz; }

// sinc(x) = sin(x)/x, sinc(0) = 1.  Not the normalized variant.
inline double sinc(double x)
{
    double ax = std::abs(x);
    if (ax < 1.0e-4)
    {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// Dirichlet ratio sin(Q*x)/sin(x) for integer Q, stable for all x.
//
// The removable singularities at x = l*pi (value Q*(-1)^((Q-1)l)) and the
// precision loss of the naive quotient near them are handled by reducing the
// argument, x = l*pi + r with |r| <= pi/2, using a two-term split of pi so
// that r keeps ~1e-17 absolute accuracy, and evaluating (+-1)^..*sin(Q r)/sin(r)
// which is well conditioned everywhere.
inline double dirichlet_ratio(double x, int q)
{
    constexpr double pi_hi = 3.14159265358979311600e+00; // pi rounded to double
    constexpr double pi_lo = 1.22464679914735320717e-16; // pi - pi_hi
    double l = std::round(x / pi);
    double r = (x - l * pi_hi) - l * pi_lo;
    double sign = (static_cast<long long>(l) * (q - 1)) % 2 == 0 ? 1.0 : -1.0;
    if (std::abs(r) < 1.0e-4)
    {
        // sin(Qr)/sin(r) = Q * (1 - (Q^2-1) r^2/6 + ...)
        double r2 = r * r;
        double q2 = static_cast<double>(q) * q;
        return sign * q * (1.0 - (q2 - 1.0) * r2 / 6.0 + (q2 - 1.0) * (3.0 * q2 - 7.0) * r2 * r2 / 360.0);
    }
    return sign * std::sin(q * r) / std::sin(r);
}

// --------------------------------------------------------------------------
// Deterministic random numbers.
//
// All randomness in the toolkit flows from one master seed.  Independent
// streams (per realization, per purpose) are derived by mixing the master
// seed with a counter through splitmix64, then drive an xoshiro-style
// generator.  The distributions below are implemented explicitly so results
// are identical across standard libraries.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive a child seed from a master seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

class Rng
{
  public:
    explicit Rng(std::uint64_t seed)
    {
        // Seed the four xoshiro256++ words through splitmix64.
        std::uint64_t x = seed;
        for (auto &w : s)
        {
            x = splitmix64(x);
            w = x == 0 ? 0x9e3779b97f4a7c15ULL : x;
        }
    }

    std::uint64_t next_u64()
    {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (deterministic across platforms).
    double normal()
    {
        if (have_spare)
        {
            have_spare = false;
            return spare;
        }
        double u1 = 0.0;
        do
        {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare = r * std::sin(two_pi * u2);
        have_spare = true;
        return r * std::cos(two_pi * u2);
    }

    // Circularly symmetric complex normal, CN(0,1): unit variance in total.
    std::complex<double> cgauss()
    {
        double re = normal() * 0.7071067811865476;
        double im = normal() * 0.7071067811865476;
        return {re, im};
    }

  private:
    std::uint64_t s[4];
    bool have_spare = false;
    double spare = 0.0;
};

// FNV-1a, used for config fingerprints in run manifests.
inline std::uint64_t fnv1a(const std::string &text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr const char *toolkit_version = "1.0.0";

} // namespace irsforge
