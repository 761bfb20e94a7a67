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

#include <limits>

#include "rttd/array.hpp"
#include "rttd/common.hpp"

namespace rttd {

// Closed-form beam-squint metrics for phase-shifter-only arrays. A PS
// combiner matches the response only at the carrier; away from it the beam
// direction drifts and the gain behaves like a bandpass filter over
// frequency.

/// Squint of one phase setting at one frequency.
struct SquintReport {
    double intended_angle_rad = 0.0;
    double freq_hz = 0.0;
    double actual_angle_rad = 0.0;
    double error_rad = 0.0;
    bool clipped = false; // arcsine argument fell outside [-1, 1]
};

/// Direction a phase difference `delta_phi_rad` actually points to at
/// `freq_hz`: theta = asin((fc/f) * dPhi/pi). Out-of-range arguments are
/// clamped to +-1 (the beam is pushed past endfire); callers that need the
/// clip indicator should use squint_report.
inline double intended_aoa(double delta_phi_rad, double freq_hz, double carrier_hz)
{
    detail::check_freq(freq_hz);
    return std::asin(clamp_unit((carrier_hz / freq_hz) * (delta_phi_rad / pi)));
}

/// Full squint evaluation of a PS setting designed for
/// `intended_angle_rad` (half-wavelength spacing) observed at `freq_hz`.
inline SquintReport squint_report(double intended_angle_rad, double freq_hz, double carrier_hz)
{
    detail::check_angle(intended_angle_rad);
    detail::check_freq(freq_hz);
    double arg = (carrier_hz / freq_hz) * std::sin(intended_angle_rad);
    SquintReport r;
    r.intended_angle_rad = intended_angle_rad;
    r.freq_hz = freq_hz;
    r.clipped = std::abs(arg) > 1.0;
    r.actual_angle_rad = std::asin(clamp_unit(arg));
    r.error_rad = std::abs(r.actual_angle_rad - intended_angle_rad);
    return r;
}

/// Worst-case angular error of a PS beam over a band of fractional
/// bandwidth `fbw`. The lower band edge fc - BW/2 dominates, giving
///
///     dTheta_max = |asin(sin(theta) / (1 - fbw/2)) - theta|
///
/// with the arcsine argument clamped to +-1 (optionally flagged through
/// `clipped`).
inline double max_angular_error(double intended_angle_rad, double fbw, bool* clipped = nullptr)
{
    detail::check_angle(intended_angle_rad);
    if (!(fbw > 0.0 && fbw < 2.0))
        throw std::invalid_argument("max_angular_error: fractional bandwidth must lie in (0, 2)");
    double arg = std::sin(intended_angle_rad) / (1.0 - fbw / 2.0);
    if (clipped)
        *clipped = std::abs(arg) > 1.0;
    return std::abs(std::asin(clamp_unit(arg)) - intended_angle_rad);
}

/// 3-dB fractional bandwidth of an N-element PS beam steered to
/// `angle_rad`, FBW ~= 1.772 / (N |sin(theta)|). Broadside has no squint
/// and returns +infinity.
inline double fractional_bandwidth_3db(int n_elements, double angle_rad)
{
    if (n_elements < 2)
        throw std::invalid_argument("fractional_bandwidth_3db: need at least 2 elements");
    detail::check_angle(angle_rad);
    double s = std::abs(std::sin(angle_rad));
    if (s == 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.772 / (static_cast<double>(n_elements) * s);
}

/// Normalized gain G(f)/N of a PS combiner steered to `steer_angle_rad`,
/// evaluated on a strictly increasing grid of absolute frequencies.
inline std::vector<double> gain_vs_frequency_curve(int n_elements, double steer_angle_rad,
                                                   const std::vector<double>& freq_grid_hz, double carrier_hz)
{
    if (freq_grid_hz.empty())
        throw std::invalid_argument("gain_vs_frequency_curve: empty frequency grid");
    for (std::size_t i = 1; i < freq_grid_hz.size(); ++i)
        if (!(freq_grid_hz[i] > freq_grid_hz[i - 1]))
            throw std::invalid_argument("gain_vs_frequency_curve: frequency grid must be strictly increasing");

    ArrayGeometry geo = ArrayGeometry::linear(n_elements, carrier_hz);
    TapConfig taps = ps_combiner(geo, steer_angle_rad);
    std::vector<double> out(freq_grid_hz.size());
    for (std::size_t i = 0; i < freq_grid_hz.size(); ++i)
        out[i] = beamforming_gain(taps, geo, steer_angle_rad, freq_grid_hz[i]) / static_cast<double>(n_elements);
    return out;
}

/// Numerically measured 3-dB fractional width of the PS gain curve around
/// the carrier: locates the half-power crossings on both sides by stepping
/// out and bisecting. Independent of the closed-form FBW expression.
inline double measure_fbw_3db(int n_elements, double steer_angle_rad, double carrier_hz)
{
    ArrayGeometry geo = ArrayGeometry::linear(n_elements, carrier_hz);
    TapConfig taps = ps_combiner(geo, steer_angle_rad);
    const double target = static_cast<double>(n_elements) / std::sqrt(2.0);

    auto gain_at = [&](double f) { return beamforming_gain(taps, geo, steer_angle_rad, f); };

    auto crossing = [&](double direction) {
        double step = carrier_hz * 1e-4;
        double lo = carrier_hz;
        double hi = carrier_hz;
        while (gain_at(hi) > target) {
            lo = hi;
            hi += direction * step;
            step *= 2.0;
            if (std::abs(hi - carrier_hz) > carrier_hz)
                throw std::runtime_error("measure_fbw_3db: no 3-dB crossing within one carrier of offset");
        }
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (gain_at(mid) > target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    double f_hi = crossing(+1.0);
    double f_lo = crossing(-1.0);
    return (f_hi - f_lo) / carrier_hz;
}

} // namespace rttd
