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
#include <vector>

#include "rttd/array.hpp"
#include "rttd/codebook.hpp"
#include "rttd/common.hpp"

namespace rttd {

/// Large-scale path loss. The log-distance variant replaces the free-space
/// term with ref_loss_db + 10*exponent*log10(d / 1 m); its reference loss is
/// a configurable calibration constant, not a claim about any particular
/// measurement campaign.
struct PathLossModel {
    enum class Kind { free_space, log_distance };

    Kind kind = Kind::free_space;
    double exponent = 3.0;     // log_distance only
    double ref_loss_db = 88.0; // loss at 1 m, log_distance only
};

/// Link-budget inputs for the per-subcarrier SNR and for absolute-scale
/// Monte Carlo runs.
struct LinkBudget {
    double tx_power_w = 1.0;          // P_T
    double distance_m = 30.0;         // d
    double noise_psd_w_per_hz = 0.0;  // N_0
    double subcarrier_spacing_hz = 0; // BW / (M_tot - 1)
    int n_tx = 1;
    int n_rx = 1;
    double carrier_hz = 0.0;
    PathLossModel pathloss;

    void validate() const
    {
        if (tx_power_w <= 0.0 || distance_m <= 0.0 || noise_psd_w_per_hz <= 0.0 ||
            subcarrier_spacing_hz <= 0.0 || carrier_hz <= 0.0)
            throw std::invalid_argument("LinkBudget: powers, distances and frequencies must be positive");
        if (n_tx < 1 || n_rx < 1)
            throw std::invalid_argument("LinkBudget: antenna counts must be >= 1");
    }

    double wavelength_m() const { return speed_of_light / carrier_hz; }

    /// Linear isotropic path gain (inverse path loss) at the configured
    /// distance.
    double path_gain_linear() const
    {
        if (pathloss.kind == PathLossModel::Kind::free_space) {
            double a = wavelength_m() / (4.0 * pi * distance_m);
            return a * a;
        }
        double loss_db = pathloss.ref_loss_db + 10.0 * pathloss.exponent * std::log10(distance_m);
        return db2pow(-loss_db);
    }
};

/// Per-subcarrier SNR when the transmit power is divided among `loaded_count`
/// subcarriers,
///
///     SNR_sc = G_T * G_R * PL * P_T / (dBW * N_0 * M),
///
/// with linear array gains G_T = N_T^2, G_R = N_R^2 and PL the linear path
/// gain (lambda^2/(4 pi d)^2 under free space). Linear scale.
inline double snr_per_subcarrier(const LinkBudget& budget, int loaded_count)
{
    budget.validate();
    if (loaded_count < 1)
        throw std::invalid_argument("snr_per_subcarrier: loaded count must be >= 1");
    double g_t = static_cast<double>(budget.n_tx) * static_cast<double>(budget.n_tx);
    double g_r = static_cast<double>(budget.n_rx) * static_cast<double>(budget.n_rx);
    return g_t * g_r * budget.path_gain_linear() * budget.tx_power_w /
           (budget.subcarrier_spacing_hz * budget.noise_psd_w_per_hz * static_cast<double>(loaded_count));
}

/// Small-scale channel composition for one realization.
struct ChannelModel {
    enum class Kind { single_path_los, multipath };

    Kind kind = Kind::single_path_los;
    int extra_paths = 2;              // multipath only
    double extra_path_power_db = -6.0; // mean power of each extra path vs the main one
    double delay_spread_s = 40e-9;     // extra-path delays drawn uniform in [0, spread]
    bool frequency_flat_response = true;
};

/// One propagation path: complex amplitude (transmit pilot power and path
/// loss folded in), departure/arrival angles and excess delay.
struct ChannelPath {
    cxd amplitude;
    double aoa_rad = 0.0;
    double aod_rad = 0.0;
    double delay_s = 0.0;
};

/// Frequency-domain channel over the loaded subcarriers: a sum of plane-wave
/// paths, H[m] = sum_p g_p e^{-j 2 pi f_m tau_p} a_R(theta_p) a_T(psi_p)^H.
/// Matrices are materialized on demand; the receive-side composition used by
/// the simulator works on the path list directly.
struct ChannelRealization {
    std::vector<ChannelPath> paths;
    std::vector<double> loaded_baseband_hz;
    ArrayGeometry geometry_rx;
    ArrayGeometry geometry_tx;
    bool frequency_flat_response = true;

    double aoa_rad() const { return paths.front().aoa_rad; }
    double aod_rad() const { return paths.front().aod_rad; }

    ResponseModel response_model() const
    {
        return frequency_flat_response ? ResponseModel::frequency_flat : ResponseModel::frequency_dependent;
    }

    std::size_t loaded_count() const { return loaded_baseband_hz.size(); }

    /// Receive-side vector h_eff[m] = H[m] * v for the m-th loaded
    /// subcarrier and a given precoder.
    cvec rx_vector(std::size_t position, const cvec& precoder) const
    {
        if (static_cast<int>(precoder.size()) != geometry_tx.total_elements())
            throw std::invalid_argument("ChannelRealization: precoder length does not match the transmit array");
        double f_b = loaded_baseband_hz[position];
        double f_abs = geometry_rx.carrier_hz + f_b;

        cvec h(static_cast<std::size_t>(geometry_rx.total_elements()), cxd(0.0, 0.0));
        for (const auto& p : paths) {
            SpatialResponse a_t = spatial_response(geometry_tx, p.aod_rad, f_abs, response_model());
            cxd tx_factor(0.0, 0.0);
            for (std::size_t n = 0; n < a_t.values.size(); ++n)
                tx_factor += std::conj(a_t.values[n]) * precoder[n];
            cxd coef = p.amplitude * cis(-two_pi * f_b * p.delay_s) * tx_factor;
            SpatialResponse a_r = spatial_response(geometry_rx, p.aoa_rad, f_abs, response_model());
            for (std::size_t n = 0; n < h.size(); ++n)
                h[n] += coef * a_r.values[n];
        }
        return h;
    }

    /// Full N_R x N_T matrix of the m-th loaded subcarrier (row-major).
    std::vector<cvec> matrix(std::size_t position) const
    {
        double f_b = loaded_baseband_hz[position];
        double f_abs = geometry_rx.carrier_hz + f_b;
        auto n_r = static_cast<std::size_t>(geometry_rx.total_elements());
        auto n_t = static_cast<std::size_t>(geometry_tx.total_elements());
        std::vector<cvec> h(n_r, cvec(n_t, cxd(0.0, 0.0)));
        for (const auto& p : paths) {
            cxd coef = p.amplitude * cis(-two_pi * f_b * p.delay_s);
            SpatialResponse a_r = spatial_response(geometry_rx, p.aoa_rad, f_abs, response_model());
            SpatialResponse a_t = spatial_response(geometry_tx, p.aod_rad, f_abs, response_model());
            for (std::size_t r = 0; r < n_r; ++r)
                for (std::size_t t = 0; t < n_t; ++t)
                    h[r][t] += coef * a_r.values[r] * std::conj(a_t.values[t]);
        }
        return h;
    }
};

/// Draw one channel realization. The main path carries deterministic
/// magnitude sqrt(PL * P_T / M) (transmit power split across the loaded
/// subcarriers) and a random phase; extra paths draw complex Gaussian gains
/// at the configured relative power, angles uniform in sine, delays uniform
/// in [0, delay_spread].
inline ChannelRealization realize_channel(const ArrayGeometry& geometry_rx, const ArrayGeometry& geometry_tx,
                                          double aoa_rad, double aod_rad, const LinkBudget& budget,
                                          const std::vector<double>& loaded_baseband_hz,
                                          const ChannelModel& model, std::uint64_t rng_seed)
{
    detail::check_angle(aoa_rad);
    detail::check_angle(aod_rad);
    budget.validate();
    if (loaded_baseband_hz.empty())
        throw std::invalid_argument("realize_channel: no loaded subcarriers");

    auto rng = make_rng(rng_seed, RngStream::channel);
    std::uniform_real_distribution<double> uphase(0.0, two_pi);
    std::uniform_real_distribution<double> usine(-1.0, 1.0);
    std::uniform_real_distribution<double> udelay(0.0, model.delay_spread_s);

    ChannelRealization chan;
    chan.loaded_baseband_hz = loaded_baseband_hz;
    chan.geometry_rx = geometry_rx;
    chan.geometry_tx = geometry_tx;
    chan.frequency_flat_response = model.frequency_flat_response;

    const double main_power =
        budget.path_gain_linear() * budget.tx_power_w / static_cast<double>(loaded_baseband_hz.size());

    ChannelPath main;
    main.amplitude = std::sqrt(main_power) * cis(uphase(rng));
    main.aoa_rad = aoa_rad;
    main.aod_rad = aod_rad;
    main.delay_s = 0.0;
    chan.paths.push_back(main);

    if (model.kind == ChannelModel::Kind::multipath) {
        const double extra_power = main_power * db2pow(model.extra_path_power_db);
        for (int p = 0; p < model.extra_paths; ++p) {
            ChannelPath path;
            path.aoa_rad = std::asin(usine(rng));
            path.aod_rad = std::asin(usine(rng));
            path.delay_s = udelay(rng);
            path.amplitude = draw_cn(rng, extra_power);
            chan.paths.push_back(path);
        }
    }
    return chan;
}

/// Matched frequency-flat precoder pointing the transmit array at
/// `aod_rad` (unit-modulus entries, |a_T^H v| = N_T on boresight).
inline cvec matched_precoder(const ArrayGeometry& geometry_tx, double aod_rad)
{
    return spatial_response(geometry_tx, aod_rad, geometry_tx.carrier_hz, ResponseModel::frequency_flat).values;
}

/// Received training signal with separated components, for detection
/// bookkeeping.
struct ReceivedSignal {
    cvec y;                          // signal + combined noise, per loaded subcarrier
    cvec y_signal;                   // noiseless part
    double signal_power_total = 0.0; // sum_m |y_signal[m]|^2
    double noise_power_total = 0.0;  // expected: sigma^2 * sum_m ||w[m]||^2

    /// Detection rule: the training signal counts as detectable only while
    /// its total post-combining power is at least the post-combining noise
    /// power.
    bool detectable() const { return signal_power_total >= noise_power_total; }
};

/// Combine one OFDM training symbol through an explicit tap configuration:
/// Y[m] = w^H[m] H[m] v s[m] + w^H[m] n[m] over the loaded subcarriers,
/// with i.i.d. per-element complex Gaussian noise of variance `noise_var`.
inline ReceivedSignal received_signal_detail(const TapConfig& taps, DelayModel delay_model, double carrier_hz,
                                             const ChannelRealization& channel, const cvec& precoder,
                                             const cvec& pilots, double noise_var, std::uint64_t rng_seed,
                                             std::uint32_t noise_substream = 0)
{
    taps.validate();
    if (static_cast<int>(taps.size()) != channel.geometry_rx.total_elements())
        throw std::invalid_argument("received_signal: taps do not match the receive array");
    if (pilots.size() != channel.loaded_count())
        throw std::invalid_argument("received_signal: pilot count does not match loaded subcarriers");
    if (noise_var < 0.0)
        throw std::invalid_argument("received_signal: noise variance must be nonnegative");

    auto rng = make_rng(rng_seed, RngStream::noise, noise_substream);

    ReceivedSignal out;
    out.y.resize(channel.loaded_count());
    out.y_signal.resize(channel.loaded_count());

    for (std::size_t m = 0; m < channel.loaded_count(); ++m) {
        double f_abs = carrier_hz + channel.loaded_baseband_hz[m];
        cvec w = combiner_weights(taps, f_abs, carrier_hz, delay_model);
        cvec h = channel.rx_vector(m, precoder);

        cxd sig(0.0, 0.0);
        double w_norm2 = 0.0;
        cxd combined_noise(0.0, 0.0);
        for (std::size_t n = 0; n < w.size(); ++n) {
            sig += std::conj(w[n]) * h[n];
            w_norm2 += std::norm(w[n]);
            combined_noise += std::conj(w[n]) * draw_cn(rng, noise_var);
        }
        sig *= pilots[m];

        out.y_signal[m] = sig;
        out.y[m] = sig + combined_noise;
        out.signal_power_total += std::norm(sig);
        out.noise_power_total += noise_var * w_norm2;
    }
    return out;
}

/// Received training signal through a rainbow codebook's taps.
inline cvec received_signal(const RainbowCodebook& book, const ChannelRealization& channel, const cvec& precoder,
                            const cvec& pilots, double noise_var, std::uint64_t rng_seed)
{
    if (channel.loaded_count() != static_cast<std::size_t>(book.ofdm.loaded_count()))
        throw std::invalid_argument("received_signal: codebook and channel subcarrier sets differ");
    return received_signal_detail(book.taps, book.delay_model, book.carrier_hz > 0.0 ? book.carrier_hz
                                                                                     : channel.geometry_rx.carrier_hz,
                                  channel, precoder, pilots, noise_var, rng_seed)
        .y;
}

} // namespace rttd
