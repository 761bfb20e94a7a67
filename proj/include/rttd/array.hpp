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

#include <stdexcept>
#include <string>

#include "rttd/common.hpp"

namespace rttd {

/// Spatial response convention used when evaluating array vectors.
///
/// `frequency_dependent` is the physical wideband model: the inter-element
/// phase progression scales with the signal frequency (beam squint).
/// `frequency_flat` evaluates the response at the carrier irrespective of
/// the signal frequency, the common narrowband-receiver assumption.
enum class ResponseModel {
    frequency_dependent,
    frequency_flat,
};

/// Where in the receive chain a delay tap physically sits. Baseband delays
/// rotate by the offset from the carrier, 2*pi*(f - fc)*tau; RF delays
/// rotate by the absolute frequency, 2*pi*f*tau.
enum class DelayModel {
    baseband,
    rf,
};

inline const char* to_string(ResponseModel m)
{
    return m == ResponseModel::frequency_dependent ? "frequency_dependent" : "frequency_flat";
}
inline const char* to_string(DelayModel m) { return m == DelayModel::baseband ? "baseband" : "rf"; }

/// Uniform linear or planar array layout. Element pitch is given in carrier
/// wavelengths (half-wavelength by default). Planar elements are indexed
/// x-major: element (ix, iy) lives at flat index ix * n_y + iy.
struct ArrayGeometry {
    enum class Kind { linear, planar };

    Kind kind = Kind::linear;
    int n_x = 1;
    int n_y = 1;
    double spacing_wavelengths = 0.5;
    double carrier_hz = 0.0;

    static ArrayGeometry linear(int n, double carrier_hz, double spacing_wavelengths = 0.5)
    {
        ArrayGeometry g{Kind::linear, n, 1, spacing_wavelengths, carrier_hz};
        g.validate();
        return g;
    }

    static ArrayGeometry planar(int n_x, int n_y, double carrier_hz, double spacing_wavelengths = 0.5)
    {
        ArrayGeometry g{Kind::planar, n_x, n_y, spacing_wavelengths, carrier_hz};
        g.validate();
        return g;
    }

    int total_elements() const { return n_x * n_y; }

    double wavelength_m() const { return speed_of_light / carrier_hz; }
    double spacing_m() const { return spacing_wavelengths * wavelength_m(); }

    void validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("ArrayGeometry: element count must be >= 1 in every dimension");
        if (kind == Kind::linear && n_y != 1)
            throw std::invalid_argument("ArrayGeometry: linear array must have n_y == 1");
        if (spacing_wavelengths <= 0.0)
            throw std::invalid_argument("ArrayGeometry: element spacing must be positive");
        if (carrier_hz <= 0.0)
            throw std::invalid_argument("ArrayGeometry: carrier frequency must be positive");
    }
};

/// Per-element gain, delay and phase taps of a combiner. Nominal
/// configurations use unit gains; impairment models perturb all three.
struct TapConfig {
    std::vector<double> gains;      // alpha_n, dimensionless
    std::vector<double> delays_s;   // tau_n [s]
    std::vector<double> phases_rad; // phi_n [rad]

    std::size_t size() const { return gains.size(); }

    static TapConfig nominal(std::size_t n)
    {
        TapConfig t;
        t.gains.assign(n, 1.0);
        t.delays_s.assign(n, 0.0);
        t.phases_rad.assign(n, 0.0);
        return t;
    }

    void validate() const
    {
        if (delays_s.size() != gains.size() || phases_rad.size() != gains.size())
            throw std::invalid_argument("TapConfig: gain/delay/phase vectors must have equal length");
        for (double g : gains)
            if (g < 0.0)
                throw std::invalid_argument("TapConfig: gains must be nonnegative");
    }
};

/// Array response for one (frequency, angle) pair; entries have unit
/// magnitude for an ideal array.
struct SpatialResponse {
    cvec values;
};

namespace detail {

inline void check_angle(double angle_rad)
{
    if (!(std::abs(angle_rad) <= pi / 2.0))
        throw std::domain_error("angle must lie in [-pi/2, pi/2]");
}

inline void check_freq(double freq_hz)
{
    if (!(freq_hz > 0.0))
        throw std::domain_error("frequency must be positive");
}

} // namespace detail

/// Phase-shift difference between neighboring elements for a plane wave from
/// `angle_rad` observed at `freq_hz`:
///
///     dPhi = 2*pi*f * d*sin(theta)/c
///
/// equal to pi*sin(theta)*f/fc for half-wavelength spacing.
inline double phase_difference(const ArrayGeometry& geometry, double angle_rad, double freq_hz)
{
    detail::check_angle(angle_rad);
    detail::check_freq(freq_hz);
    double delta_t = geometry.spacing_m() * std::sin(angle_rad) / speed_of_light;
    return two_pi * freq_hz * delta_t;
}

/// Response of a linear array: entry n is exp(-j*n*dPhi), n = 0..N-1.
inline SpatialResponse spatial_response(const ArrayGeometry& geometry, double angle_rad, double freq_hz,
                                        ResponseModel model = ResponseModel::frequency_dependent)
{
    if (geometry.kind != ArrayGeometry::Kind::linear)
        throw std::invalid_argument("spatial_response: use spatial_response_planar for planar arrays");
    double f_eval = (model == ResponseModel::frequency_flat) ? geometry.carrier_hz : freq_hz;
    detail::check_freq(freq_hz);
    double dphi = phase_difference(geometry, angle_rad, f_eval);

    SpatialResponse r;
    r.values.resize(static_cast<std::size_t>(geometry.n_x));
    for (int n = 0; n < geometry.n_x; ++n)
        r.values[static_cast<std::size_t>(n)] = cis(-static_cast<double>(n) * dphi);
    return r;
}

/// Response of a planar array towards spherical direction (theta, phi),
/// using direction cosines u = sin(theta)cos(phi), v = sin(theta)sin(phi).
inline SpatialResponse spatial_response_planar(const ArrayGeometry& geometry, double theta_rad, double phi_rad,
                                               double freq_hz,
                                               ResponseModel model = ResponseModel::frequency_dependent)
{
    detail::check_freq(freq_hz);
    double f_eval = (model == ResponseModel::frequency_flat) ? geometry.carrier_hz : freq_hz;
    double u = std::sin(theta_rad) * std::cos(phi_rad);
    double v = std::sin(theta_rad) * std::sin(phi_rad);
    double k = two_pi * f_eval * geometry.spacing_m() / speed_of_light;

    SpatialResponse r;
    r.values.resize(static_cast<std::size_t>(geometry.total_elements()));
    for (int ix = 0; ix < geometry.n_x; ++ix)
        for (int iy = 0; iy < geometry.n_y; ++iy)
            r.values[static_cast<std::size_t>(ix * geometry.n_y + iy)] =
                cis(-(k * u * ix + k * v * iy));
    return r;
}

/// Frequency-flat phase-shifter combiner steered to `steer_angle_rad`:
/// zero delays, unit gains, phases (n-1)*pi*sin(theta) for half-lambda pitch.
inline TapConfig ps_combiner(const ArrayGeometry& geometry, double steer_angle_rad)
{
    detail::check_angle(steer_angle_rad);
    auto n = static_cast<std::size_t>(geometry.total_elements());
    TapConfig t = TapConfig::nominal(n);
    double dphi = phase_difference(geometry, steer_angle_rad, geometry.carrier_hz);
    for (std::size_t i = 0; i < n; ++i)
        t.phases_rad[i] = static_cast<double>(i) * dphi;
    return t;
}

/// Delay-matched true-time-delay combiner steered to `steer_angle_rad`.
///
/// Delays are tau_n = (n-1)*d*sin(theta)/c. Under the baseband delay model a
/// compensating phase tap 2*pi*fc*tau_n is required so that the effective
/// branch rotation equals a full RF delay; under the RF model the delay
/// alone aligns all frequencies and the phases stay zero. Either way the
/// combiner holds the full array gain across the band.
inline TapConfig ttd_combiner(const ArrayGeometry& geometry, double steer_angle_rad,
                              DelayModel model = DelayModel::baseband)
{
    detail::check_angle(steer_angle_rad);
    if (geometry.kind != ArrayGeometry::Kind::linear)
        throw std::invalid_argument("ttd_combiner: linear geometry expected");
    auto n = static_cast<std::size_t>(geometry.total_elements());
    TapConfig t = TapConfig::nominal(n);
    double delta_t = geometry.spacing_m() * std::sin(steer_angle_rad) / speed_of_light;
    for (std::size_t i = 0; i < n; ++i) {
        t.delays_s[i] = static_cast<double>(i) * delta_t;
        t.phases_rad[i] = (model == DelayModel::baseband) ? two_pi * geometry.carrier_hz * t.delays_s[i] : 0.0;
    }
    return t;
}

/// Frequency-dependent combiner weight vector,
///
///     w_n(f) = alpha_n * exp(-j*(2*pi*(f - fc)*tau_n + phi_n))
///
/// for the baseband delay model; the RF model replaces (f - fc) by f.
/// At f = fc baseband delays contribute nothing and the weights reduce to
/// pure gain/phase taps.
inline cvec combiner_weights(const TapConfig& taps, double freq_hz, double carrier_hz,
                             DelayModel model = DelayModel::baseband)
{
    taps.validate();
    double f_ref = (model == DelayModel::baseband) ? freq_hz - carrier_hz : freq_hz;
    cvec w(taps.size());
    for (std::size_t n = 0; n < taps.size(); ++n)
        w[n] = taps.gains[n] * cis(-(two_pi * f_ref * taps.delays_s[n] + taps.phases_rad[n]));
    return w;
}

/// |w^H a| for two equal-length complex vectors.
inline double combined_gain(const cvec& weights, const cvec& response)
{
    if (weights.size() != response.size())
        throw std::invalid_argument("combined_gain: dimension mismatch");
    cxd acc(0.0, 0.0);
    for (std::size_t n = 0; n < weights.size(); ++n)
        acc += std::conj(weights[n]) * response[n];
    return std::abs(acc);
}

/// Beamforming gain G = |w(f)^H a(theta, f)| of a tap configuration against
/// a plane wave from `angle_rad` at `freq_hz`. Bounded by the sum of the tap
/// gains; equals N when the weights conjugate-match the response.
inline double beamforming_gain(const TapConfig& taps, const ArrayGeometry& geometry, double angle_rad,
                               double freq_hz, ResponseModel response = ResponseModel::frequency_dependent,
                               DelayModel delay_model = DelayModel::baseband)
{
    if (static_cast<int>(taps.size()) != geometry.total_elements())
        throw std::invalid_argument("beamforming_gain: taps do not match geometry");
    cvec w = combiner_weights(taps, freq_hz, geometry.carrier_hz, delay_model);
    SpatialResponse a = spatial_response(geometry, angle_rad, freq_hz, response);
    return combined_gain(w, a.values);
}

/// Planar-array variant of beamforming_gain for direction (theta, phi).
inline double beamforming_gain_planar(const TapConfig& taps, const ArrayGeometry& geometry, double theta_rad,
                                      double phi_rad, double freq_hz,
                                      ResponseModel response = ResponseModel::frequency_dependent,
                                      DelayModel delay_model = DelayModel::baseband)
{
    if (static_cast<int>(taps.size()) != geometry.total_elements())
        throw std::invalid_argument("beamforming_gain_planar: taps do not match geometry");
    cvec w = combiner_weights(taps, freq_hz, geometry.carrier_hz, delay_model);
    SpatialResponse a = spatial_response_planar(geometry, theta_rad, phi_rad, freq_hz, response);
    return combined_gain(w, a.values);
}

} // namespace rttd
