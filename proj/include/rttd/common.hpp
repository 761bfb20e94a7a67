// SPDX-License-Identifier: Apache-2.0
//
// rainbow-ttd: wideband true-time-delay array simulation and single-symbol
// beam-training toolkit
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
#include <random>
#include <vector>

namespace rttd {

using cxd = std::complex<double>;
using cvec = std::vector<cxd>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Speed of light in vacuum [m/s].
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

/// Power ratio to decibel and back.
inline double pow2db(double p) { return 10.0 * std::log10(p); }
inline double db2pow(double db) { return std::pow(10.0, db / 10.0); }

/// Amplitude ratio to decibel and back.
inline double mag2db(double a) { return 20.0 * std::log10(a); }
inline double db2mag(double db) { return std::pow(10.0, db / 20.0); }

/// Positive modulo: result in [0, m) for any finite x.
inline double pmod(double x, double m)
{
    double r = std::fmod(x, m);
    return (r < 0.0) ? r + m : r;
}

inline double clamp_unit(double x) { return (x < -1.0) ? -1.0 : (x > 1.0 ? 1.0 : x); }

/// exp(j*phase) for a real phase in radians.
inline cxd cis(double phase) { return cxd(std::cos(phase), std::sin(phase)); }

// --- Reproducible random streams ----------------------------------------
//
// Monte Carlo contract: trial i of a run with base seed s uses seed s + i.
// Inside one trial, independent draws (channel, impairments, pilots, noise)
// come from separate streams so that adding a consumer does not shift the
// draws of the others.

enum class RngStream : std::uint32_t {
    truth = 0,
    channel = 1,
    impairment = 2,
    pilots = 3,
    noise = 4, // noise for symbol d uses stream noise + d
};

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) { return base_seed + trial; }

inline std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream, std::uint32_t substream = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream) + 16u * substream, 0x9e3779b9u};
    return std::mt19937_64(seq);
}

/// Circularly symmetric complex Gaussian with total variance `var`.
inline cxd draw_cn(std::mt19937_64& rng, double var)
{
    std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
    double re = n(rng);
    double im = n(rng);
    return cxd(re, im);
}

} // namespace rttd
