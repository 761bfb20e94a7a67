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

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rttd/array.hpp"
#include "rttd/common.hpp"
#include "rttd/waveform.hpp"

namespace rttd {

// A rainbow codebook deliberately exaggerates beam squint: linearly growing
// per-element delays make every subcarrier of one OFDM symbol point at its
// own angle, so a single symbol probes the whole angular range at once.

/// Angle probed by a subcarrier at baseband offset `baseband_freq_hz` under
/// per-element delay step `delta_tau_s`:
///
///     theta = asin(mod(2*f*dtau + 1, 2) - 1)
///
/// The map is periodic in f with period 1/dtau and returns angles in
/// [-pi/2, pi/2).
inline double frequency_to_angle(double baseband_freq_hz, double delta_tau_s)
{
    if (!(delta_tau_s > 0.0))
        throw std::invalid_argument("frequency_to_angle: delay step must be positive");
    return std::asin(pmod(2.0 * baseband_freq_hz * delta_tau_s + 1.0, 2.0) - 1.0);
}

namespace detail {

/// Sine of the probed direction including a beam rotation; the rotation
/// shifts the sine of the angle (the phase taps add a frequency-flat phase
/// gradient) and wraps modulo the sine domain.
inline double mapped_sine(double baseband_freq_hz, double delta_tau_s, double rotation_rad)
{
    return pmod(2.0 * baseband_freq_hz * delta_tau_s + std::sin(rotation_rad) + 1.0, 2.0) - 1.0;
}

/// True when the rotation pushed this subcarrier's beam past endfire so the
/// mapped sine wrapped around.
inline bool rotation_wrapped(double baseband_freq_hz, double delta_tau_s, double rotation_rad)
{
    double unrotated = pmod(2.0 * baseband_freq_hz * delta_tau_s + 1.0, 2.0) - 1.0;
    double shifted = unrotated + std::sin(rotation_rad);
    return shifted < -1.0 || shifted >= 1.0;
}

} // namespace detail

/// One probed direction: the beam angle and the loaded-subcarrier positions
/// (indices into the sorted loaded set) that map onto it.
struct ProbeDirection {
    double angle_rad = 0.0;
    std::vector<int> subcarrier_positions;
    bool wrapped = false;
};

/// Frequency->angle codebook realized by a true-time-delay tap
/// configuration over a sparse OFDM grid.
struct RainbowCodebook {
    TapConfig taps;
    double delta_tau_s = 0.0; // R / BW
    int diversity = 1;        // R subcarriers per probed direction
    double rotation_rad = 0.0;
    std::vector<ProbeDirection> directions; // sorted by angle, |directions| == D

    OfdmSpec ofdm;
    int n_elements = 0;
    double carrier_hz = 0.0;
    DelayModel delay_model = DelayModel::baseband;

    int num_directions() const { return static_cast<int>(directions.size()); }

    /// Baseband offset of the m-th loaded subcarrier (position in the
    /// sorted loaded set).
    double baseband_hz(int position) const
    {
        return subcarrier_baseband_hz(ofdm.loaded_indices[static_cast<std::size_t>(position)], ofdm.m_total,
                                      ofdm.bandwidth_hz);
    }

    /// Direction group of the m-th loaded subcarrier.
    int group_of(int position) const { return _group_of[static_cast<std::size_t>(position)]; }

    /// Angle probed by the m-th loaded subcarrier (its group's angle).
    double angle_of(int position) const
    {
        return directions[static_cast<std::size_t>(group_of(position))].angle_rad;
    }

    double max_delay_s() const
    {
        return *std::max_element(taps.delays_s.begin(), taps.delays_s.end());
    }

    std::vector<int> _group_of; // per loaded position
};

/// Build the rainbow codebook for an N-element linear array over the loaded
/// subcarriers of `ofdm`:
///
///   - delay taps  tau_n = (n-1) * R/BW,
///   - phase taps  phi_n = (n-1) * pi * sin(rotation)        (baseband model)
///                 minus the carrier rotation 2*pi*fc*tau_n  (RF model),
///
/// and the frequency->angle map over the loaded grid. Subcarriers whose
/// mapped angles coincide under the R/BW periodicity form one probed
/// direction; the build fails if the loaded set does not split into exactly
/// D = M/R directions of R subcarriers each.
inline RainbowCodebook build_rainbow_codebook(int n_elements, const OfdmSpec& ofdm, int diversity,
                                              double rotation_rad, DelayModel delay_model = DelayModel::baseband,
                                              double carrier_hz = 0.0)
{
    ofdm.validate();
    if (n_elements < 2)
        throw std::invalid_argument("build_rainbow_codebook: need at least 2 elements");
    if (diversity < 1)
        throw std::invalid_argument("build_rainbow_codebook: diversity must be >= 1");
    if (!(std::abs(rotation_rad) <= pi / 2.0))
        throw std::invalid_argument("build_rainbow_codebook: rotation must lie in [-pi/2, pi/2]");
    if (delay_model == DelayModel::rf && !(carrier_hz > 0.0))
        throw std::invalid_argument("build_rainbow_codebook: RF delay model requires the carrier frequency");

    const int m = ofdm.loaded_count();
    if (m % diversity != 0)
        throw std::invalid_argument("build_rainbow_codebook: loaded subcarrier count must be divisible by the "
                                    "diversity order (M = D*R)");
    const int n_dir = m / diversity;
    if (n_dir < 1)
        throw std::invalid_argument("build_rainbow_codebook: probing budget exceeded, D*R > loaded subcarriers");

    RainbowCodebook book;
    book.ofdm = ofdm;
    book.n_elements = n_elements;
    book.diversity = diversity;
    book.rotation_rad = rotation_rad;
    book.delta_tau_s = static_cast<double>(diversity) / ofdm.bandwidth_hz;
    book.carrier_hz = carrier_hz;
    book.delay_model = delay_model;

    book.taps = TapConfig::nominal(static_cast<std::size_t>(n_elements));
    const double dphi = pi * std::sin(rotation_rad);
    for (int n = 0; n < n_elements; ++n) {
        double tau = static_cast<double>(n) * book.delta_tau_s;
        book.taps.delays_s[static_cast<std::size_t>(n)] = tau;
        double phase = static_cast<double>(n) * dphi;
        if (delay_model == DelayModel::rf)
            phase -= two_pi * carrier_hz * tau; // emulate the baseband design with RF delay lines
        book.taps.phases_rad[static_cast<std::size_t>(n)] = phase;
    }

    // Mapped sine of every loaded subcarrier.
    std::vector<double> sines(static_cast<std::size_t>(m));
    std::vector<bool> wrapped(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double f = subcarrier_baseband_hz(ofdm.loaded_indices[static_cast<std::size_t>(i)], ofdm.m_total,
                                          ofdm.bandwidth_hz);
        sines[static_cast<std::size_t>(i)] = detail::mapped_sine(f, book.delta_tau_s, rotation_rad);
        wrapped[static_cast<std::size_t>(i)] = detail::rotation_wrapped(f, book.delta_tau_s, rotation_rad);
    }

    // Cluster subcarriers whose sines coincide up to the slight drift the
    // finite grid introduces. Groups are separated by ~2/D, the drift is a
    // few parts in m_total, so half a group spacing is a safe threshold.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sines[static_cast<std::size_t>(a)] < sines[static_cast<std::size_t>(b)]; });

    const double gap = 1.0 / static_cast<double>(n_dir);
    std::vector<std::vector<int>> clusters;
    for (int idx : order) {
        double s = sines[static_cast<std::size_t>(idx)];
        if (clusters.empty() || s - sines[static_cast<std::size_t>(clusters.back().front())] > gap)
            clusters.emplace_back();
        clusters.back().push_back(idx);
    }
    // The sine domain is circular: a group can straddle the -1/+1 seam.
    if (clusters.size() > 1) {
        double first = sines[static_cast<std::size_t>(clusters.front().front())];
        double last = sines[static_cast<std::size_t>(clusters.back().front())];
        if (first + 2.0 - last <= gap) {
            auto& dst = clusters.front();
            dst.insert(dst.end(), clusters.back().begin(), clusters.back().end());
            clusters.pop_back();
        }
    }

    if (static_cast<int>(clusters.size()) != n_dir)
        throw std::invalid_argument("build_rainbow_codebook: loaded grid does not form D distinct directions");

    book._group_of.assign(static_cast<std::size_t>(m), -1);
    for (auto& members : clusters) {
        if (static_cast<int>(members.size()) != diversity)
            throw std::invalid_argument("build_rainbow_codebook: direction group does not contain exactly R "
                                        "subcarriers");
        // Circular mean of the member sines, referenced to the first member.
        double ref = sines[static_cast<std::size_t>(members.front())];
        double acc = 0.0;
        bool wrap_flag = false;
        for (int idx : members) {
            double d = pmod(sines[static_cast<std::size_t>(idx)] - ref + 1.0, 2.0) - 1.0;
            acc += d;
            wrap_flag = wrap_flag || wrapped[static_cast<std::size_t>(idx)];
        }
        double rep = pmod(ref + acc / static_cast<double>(members.size()) + 1.0, 2.0) - 1.0;

        ProbeDirection dir;
        dir.angle_rad = std::asin(rep);
        std::sort(members.begin(), members.end());
        dir.subcarrier_positions = members;
        dir.wrapped = wrap_flag;
        book.directions.push_back(std::move(dir));
    }

    std::sort(book.directions.begin(), book.directions.end(),
              [](const ProbeDirection& a, const ProbeDirection& b) { return a.angle_rad < b.angle_rad; });
    for (int g = 0; g < static_cast<int>(book.directions.size()); ++g)
        for (int pos : book.directions[static_cast<std::size_t>(g)].subcarrier_positions)
            book._group_of[static_cast<std::size_t>(pos)] = g;

    return book;
}

/// Convenience overload: codebook over a uniformly strided loading of
/// `m_loaded` subcarriers out of `m_total`.
inline RainbowCodebook build_rainbow_codebook(int n_elements, int m_total, int m_loaded, double bandwidth_hz,
                                              int diversity, double rotation_rad,
                                              DelayModel delay_model = DelayModel::baseband,
                                              double carrier_hz = 0.0)
{
    OfdmSpec spec;
    spec.m_total = m_total;
    spec.loaded_indices = uniform_loaded_indices(m_total, m_loaded);
    spec.bandwidth_hz = bandwidth_hz;
    spec.cp_len = 0;
    return build_rainbow_codebook(n_elements, spec, diversity, rotation_rad, delay_model, carrier_hz);
}

/// Rotate all probed directions by composing an additional rotation onto
/// the codebook (phase taps change by (n-1)*pi*sin(total rotation), beams
/// shift accordingly, wrapping past endfire is flagged per direction).
inline RainbowCodebook rotate_codebook(const RainbowCodebook& book, double rotation_rad)
{
    return build_rainbow_codebook(book.n_elements, book.ofdm, book.diversity,
                                  book.rotation_rad + rotation_rad, book.delay_model, book.carrier_hz);
}

// --- Planar (3D) rainbow beams --------------------------------------------

/// Delay plan of a planar rainbow array: element (i, j) is delayed by
/// (i-1)*dtau_x + (j-1)*dtau_y.
struct PlanarRainbowConfig {
    double delta_tau_x_s = 0.0;
    double delta_tau_y_s = 0.0;
    int n_x = 1;
    int n_y = 1;
    int subcarrier_count = 0;

    void validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("PlanarRainbowConfig: element counts must be >= 1");
        if (delta_tau_x_s < 0.0 || delta_tau_y_s < 0.0)
            throw std::invalid_argument("PlanarRainbowConfig: delay steps must be nonnegative");
    }

    double max_delay_s() const
    {
        return static_cast<double>(n_x - 1) * delta_tau_x_s + static_cast<double>(n_y - 1) * delta_tau_y_s;
    }

    /// Full-coverage 3D probing needs a delay range of at least
    /// 2*(N-1)/BW; reports whether this plan reaches it.
    bool meets_delay_range(double bandwidth_hz) const
    {
        double required = 2.0 * static_cast<double>(n_x * n_y - 1) / bandwidth_hz;
        return max_delay_s() >= required;
    }
};

/// Flattened tap configuration of a planar rainbow array (x-major element
/// order, zero phases, unit gains).
inline TapConfig build_planar_taps(const PlanarRainbowConfig& config)
{
    config.validate();
    auto n = static_cast<std::size_t>(config.n_x) * static_cast<std::size_t>(config.n_y);
    TapConfig taps = TapConfig::nominal(n);
    for (int ix = 0; ix < config.n_x; ++ix)
        for (int iy = 0; iy < config.n_y; ++iy)
            taps.delays_s[static_cast<std::size_t>(ix * config.n_y + iy)] =
                static_cast<double>(ix) * config.delta_tau_x_s + static_cast<double>(iy) * config.delta_tau_y_s;
    return taps;
}

struct ContourCell {
    double theta_rad;
    double phi_rad;
    double gain;
};

struct PlanarContour {
    std::vector<ContourCell> cells; // gain within level_db of the peak
    double peak_gain = 0.0;
    double peak_theta_rad = 0.0;
    double peak_phi_rad = 0.0;
};

/// Cells of a (theta, phi) grid where the planar beam stays within
/// `level_db` of its peak at `freq_hz`, plus the per-frequency peak itself
/// (planar rainbow beams do not all reach the full array gain).
inline PlanarContour planar_beam_contour(const TapConfig& taps, const ArrayGeometry& geometry, double freq_hz,
                                         double level_db = 3.0, int n_theta = 91, int n_phi = 181,
                                         ResponseModel response = ResponseModel::frequency_flat)
{
    if (geometry.kind != ArrayGeometry::Kind::planar)
        throw std::invalid_argument("planar_beam_contour: planar geometry expected");
    if (n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("planar_beam_contour: grid too small");

    std::vector<double> gains(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
    PlanarContour out;
    for (int it = 0; it < n_theta; ++it) {
        double theta = (pi / 2.0) * static_cast<double>(it) / static_cast<double>(n_theta - 1);
        for (int ip = 0; ip < n_phi; ++ip) {
            double phi = -pi + two_pi * static_cast<double>(ip) / static_cast<double>(n_phi);
            double g = beamforming_gain_planar(taps, geometry, theta, phi, freq_hz, response);
            gains[static_cast<std::size_t>(it * n_phi + ip)] = g;
            if (g > out.peak_gain) {
                out.peak_gain = g;
                out.peak_theta_rad = theta;
                out.peak_phi_rad = phi;
            }
        }
    }

    const double floor = out.peak_gain * db2mag(-level_db);
    for (int it = 0; it < n_theta; ++it) {
        double theta = (pi / 2.0) * static_cast<double>(it) / static_cast<double>(n_theta - 1);
        for (int ip = 0; ip < n_phi; ++ip) {
            double phi = -pi + two_pi * static_cast<double>(ip) / static_cast<double>(n_phi);
            double g = gains[static_cast<std::size_t>(it * n_phi + ip)];
            if (g >= floor)
                out.cells.push_back(ContourCell{theta, phi, g});
        }
    }
    return out;
}

} // namespace rttd
