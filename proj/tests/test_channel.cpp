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

#include <catch2/catch.hpp>

#include "rttd/channel.hpp"

using namespace rttd;

namespace {

const double fc = 60e9;
const double bw = 2e9;

LinkBudget default_budget()
{
    LinkBudget b;
    b.tx_power_w = 1.0;
    b.distance_m = 30.0;
    b.noise_psd_w_per_hz = 4e-20;
    b.subcarrier_spacing_hz = bw / 4095.0;
    b.n_tx = 128;
    b.n_rx = 16;
    b.carrier_hz = fc;
    return b;
}

std::vector<double> loaded_freqs(int m_total, int m)
{
    std::vector<double> f;
    for (int bin : uniform_loaded_indices(m_total, m))
        f.push_back(subcarrier_baseband_hz(bin, m_total, bw));
    return f;
}

} // namespace

TEST_CASE("per-subcarrier SNR scales inversely with the loading")
{
    auto b = default_budget();
    double snr128 = snr_per_subcarrier(b, 128);
    double snr256 = snr_per_subcarrier(b, 256);
    CHECK(snr128 / snr256 == Approx(2.0).epsilon(1e-12));

    double sparse_gain_db = pow2db(snr_per_subcarrier(b, 128) / snr_per_subcarrier(b, 4096));
    CHECK(sparse_gain_db == Approx(10.0 * std::log10(32.0)).margin(1e-9));
    CHECK(sparse_gain_db == Approx(15.05).margin(0.01));
}

TEST_CASE("free-space SNR follows the inverse-square law")
{
    auto b = default_budget();
    double near = snr_per_subcarrier(b, 128);
    b.distance_m *= 2.0;
    double far = snr_per_subcarrier(b, 128);
    CHECK(pow2db(near / far) == Approx(6.0206).margin(1e-3));
}

TEST_CASE("log-distance path gain")
{
    auto b = default_budget();
    b.pathloss.kind = PathLossModel::Kind::log_distance;
    b.pathloss.exponent = 3.0;
    b.pathloss.ref_loss_db = 88.0;
    b.distance_m = 100.0;
    CHECK(pow2db(b.path_gain_linear()) == Approx(-(88.0 + 30.0 * 2.0)).margin(1e-9));
    CHECK_THROWS_AS(snr_per_subcarrier(b, 0), std::invalid_argument);
}

TEST_CASE("single-path realization is rank one and frequency flat")
{
    auto rx = ArrayGeometry::linear(8, fc);
    auto tx = ArrayGeometry::linear(16, fc);
    ChannelModel model;
    auto chan = realize_channel(rx, tx, deg2rad(25.0), deg2rad(-10.0), default_budget(), loaded_freqs(256, 16),
                                model, 5);

    REQUIRE(chan.paths.size() == 1);
    auto h0 = chan.matrix(0);
    auto h_last = chan.matrix(15);

    // Rank-one structure: H = g * a_R a_T^H reproduced entry by entry.
    auto a_r = spatial_response(rx, deg2rad(25.0), fc, ResponseModel::frequency_flat);
    auto a_t = spatial_response(tx, deg2rad(-10.0), fc, ResponseModel::frequency_flat);
    cxd g = chan.paths[0].amplitude;
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t t = 0; t < 16; ++t) {
            CHECK(std::abs(h0[r][t] - g * a_r.values[r] * std::conj(a_t.values[t])) < 1e-12 * std::abs(g));
            CHECK(std::abs(h0[r][t] - h_last[r][t]) < 1e-12 * std::abs(g));
        }

    double expected_amp2 = default_budget().path_gain_linear() * 1.0 / 16.0;
    CHECK(std::norm(g) == Approx(expected_amp2).epsilon(1e-12));
}

TEST_CASE("channel realizations are seed deterministic")
{
    auto rx = ArrayGeometry::linear(8, fc);
    auto tx = ArrayGeometry::linear(16, fc);
    ChannelModel model;
    model.kind = ChannelModel::Kind::multipath;
    model.extra_paths = 3;
    auto freqs = loaded_freqs(256, 16);

    auto a = realize_channel(rx, tx, 0.3, 0.1, default_budget(), freqs, model, 99);
    auto b = realize_channel(rx, tx, 0.3, 0.1, default_budget(), freqs, model, 99);
    auto c = realize_channel(rx, tx, 0.3, 0.1, default_budget(), freqs, model, 100);

    REQUIRE(a.paths.size() == 4);
    for (std::size_t p = 0; p < a.paths.size(); ++p) {
        CHECK(a.paths[p].amplitude == b.paths[p].amplitude);
        CHECK(a.paths[p].aoa_rad == b.paths[p].aoa_rad);
        CHECK(a.paths[p].delay_s == b.paths[p].delay_s);
    }
    bool differs = false;
    for (std::size_t p = 0; p < a.paths.size(); ++p)
        differs = differs || a.paths[p].amplitude != c.paths[p].amplitude;
    CHECK(differs);
}

TEST_CASE("matched precoder reaches the full transmit array gain")
{
    auto tx = ArrayGeometry::linear(128, fc);
    double aod = deg2rad(17.0);
    cvec v = matched_precoder(tx, aod);
    auto a_t = spatial_response(tx, aod, fc, ResponseModel::frequency_flat);
    cxd acc(0.0, 0.0);
    for (std::size_t n = 0; n < v.size(); ++n)
        acc += std::conj(a_t.values[n]) * v[n];
    CHECK(std::abs(acc) == Approx(128.0).epsilon(1e-12));
}

TEST_CASE("noiseless received signal peaks on the probed direction")
{
    const int n_rx = 16;
    auto rx = ArrayGeometry::linear(n_rx, fc);
    auto tx = ArrayGeometry::linear(32, fc);
    auto book = build_rainbow_codebook(n_rx, 4096, 16, bw, 1, 0.0, DelayModel::baseband, fc);

    std::vector<double> freqs;
    for (int m = 0; m < 16; ++m)
        freqs.push_back(book.baseband_hz(m));

    // Truth angle = the probe angle of group 5.
    int target = 5;
    double truth = book.directions[static_cast<std::size_t>(target)].angle_rad;
    int target_pos = book.directions[static_cast<std::size_t>(target)].subcarrier_positions.front();

    ChannelModel model;
    auto chan = realize_channel(rx, tx, truth, 0.0, default_budget(), freqs, model, 3);
    cvec pilots(16, cxd(1.0, 0.0));
    cvec v = matched_precoder(tx, 0.0);

    cvec y = received_signal(book, chan, v, pilots, 0.0, 3);
    std::size_t best = 0;
    for (std::size_t m = 1; m < y.size(); ++m)
        if (std::abs(y[m]) > std::abs(y[best]))
            best = m;
    CHECK(static_cast<int>(best) == target_pos);
}

TEST_CASE("received signal validates dimensions")
{
    auto rx = ArrayGeometry::linear(8, fc);
    auto tx = ArrayGeometry::linear(16, fc);
    auto book = build_rainbow_codebook(8, 256, 16, bw, 1, 0.0, DelayModel::baseband, fc);
    auto freqs = loaded_freqs(256, 16);
    ChannelModel model;
    auto chan = realize_channel(rx, tx, 0.1, 0.0, default_budget(), freqs, model, 1);
    cvec v = matched_precoder(tx, 0.0);

    cvec short_pilots(8, cxd(1.0, 0.0));
    CHECK_THROWS_AS(received_signal(book, chan, v, short_pilots, 0.0, 1), std::invalid_argument);

    cvec bad_precoder(4, cxd(1.0, 0.0));
    cvec pilots(16, cxd(1.0, 0.0));
    CHECK_THROWS_AS(received_signal(book, chan, bad_precoder, pilots, 0.0, 1), std::invalid_argument);
}

TEST_CASE("post-combining noise variance equals sigma^2 times the squared gain budget")
{
    const int n_rx = 8;
    const int m = 64;
    auto rx = ArrayGeometry::linear(n_rx, fc);
    auto tx = ArrayGeometry::linear(2, fc);

    TapConfig taps = TapConfig::nominal(n_rx);
    std::mt19937_64 grng(17);
    std::uniform_real_distribution<double> ugain(0.2, 1.8);
    double gain2_sum = 0.0;
    for (std::size_t n = 0; n < taps.size(); ++n) {
        taps.gains[n] = ugain(grng);
        gain2_sum += taps.gains[n] * taps.gains[n];
    }

    // Starve the signal so y is essentially combined noise.
    auto budget = default_budget();
    budget.tx_power_w = 1e-30;
    ChannelModel model;
    auto freqs = loaded_freqs(4096, m);
    auto chan = realize_channel(rx, tx, 0.2, 0.0, budget, freqs, model, 2);
    cvec pilots(m, cxd(1.0, 0.0));
    cvec v = matched_precoder(tx, 0.0);

    const double sigma2 = 0.37;
    const int symbols = 1600; // 1600 * 64 > 1e5 noise samples
    double acc = 0.0;
    std::size_t count = 0;
    for (int t = 0; t < symbols; ++t) {
        auto rs = received_signal_detail(taps, DelayModel::baseband, fc, chan, v, pilots, sigma2,
                                         static_cast<std::uint64_t>(t));
        for (const auto& yv : rs.y) {
            acc += std::norm(yv);
            ++count;
        }
    }
    double measured = acc / static_cast<double>(count);
    CHECK(measured == Approx(sigma2 * gain2_sum).epsilon(0.02));
}

TEST_CASE("received signal scales linearly in pilots and precoder")
{
    auto rx = ArrayGeometry::linear(8, fc);
    auto tx = ArrayGeometry::linear(16, fc);
    auto book = build_rainbow_codebook(8, 256, 16, bw, 1, 0.0, DelayModel::baseband, fc);
    auto freqs = loaded_freqs(256, 16);
    ChannelModel model;
    auto chan = realize_channel(rx, tx, 0.25, 0.05, default_budget(), freqs, model, 8);
    cvec v = matched_precoder(tx, 0.05);
    cvec pilots(16, cxd(1.0, 0.0));

    auto y1 = received_signal(book, chan, v, pilots, 0.0, 1);

    cvec pilots3 = pilots;
    for (auto& p : pilots3)
        p *= cxd(0.0, 3.0);
    auto y3 = received_signal(book, chan, v, pilots3, 0.0, 1);

    cvec v2 = v;
    for (auto& x : v2)
        x *= 2.0;
    auto yv2 = received_signal(book, chan, v2, pilots, 0.0, 1);

    for (std::size_t i = 0; i < y1.size(); ++i) {
        CHECK(std::abs(y3[i] - cxd(0.0, 3.0) * y1[i]) < 1e-9 * std::abs(y1[i]) + 1e-30);
        CHECK(std::abs(yv2[i] - 2.0 * y1[i]) < 1e-9 * std::abs(y1[i]) + 1e-30);
    }
}

TEST_CASE("noiseless magnitudes trace the codebook beampattern at the truth angle")
{
    const int n_rx = 16;
    auto rx = ArrayGeometry::linear(n_rx, fc);
    auto tx = ArrayGeometry::linear(8, fc);
    auto book = build_rainbow_codebook(n_rx, 4096, 32, bw, 1, 0.0, DelayModel::baseband, fc);
    std::vector<double> freqs;
    for (int m = 0; m < 32; ++m)
        freqs.push_back(book.baseband_hz(m));

    double truth = deg2rad(23.0);
    ChannelModel model;
    auto chan = realize_channel(rx, tx, truth, 0.0, default_budget(), freqs, model, 4);
    cvec pilots(32, cxd(1.0, 0.0));
    cvec v = matched_precoder(tx, 0.0);
    auto y = received_signal(book, chan, v, pilots, 0.0, 4);

    double scale = 0.0;
    for (int m = 0; m < 32; ++m) {
        double g = beamforming_gain(book.taps, rx, truth, fc + freqs[static_cast<std::size_t>(m)],
                                    ResponseModel::frequency_flat, book.delay_model);
        if (g > 1e-6) {
            scale = std::abs(y[static_cast<std::size_t>(m)]) / g;
            break;
        }
    }
    REQUIRE(scale > 0.0);
    for (int m = 0; m < 32; ++m) {
        double g = beamforming_gain(book.taps, rx, truth, fc + freqs[static_cast<std::size_t>(m)],
                                    ResponseModel::frequency_flat, book.delay_model);
        CHECK(std::abs(y[static_cast<std::size_t>(m)]) == Approx(scale * g).margin(scale * 1e-6));
    }
}

TEST_CASE("detection threshold is exactly signal versus noise power")
{
    ReceivedSignal rs;
    rs.signal_power_total = 1.0;
    rs.noise_power_total = 1.0;
    CHECK(rs.detectable()); // equality still counts as detectable

    rs.signal_power_total = std::nextafter(1.0, 0.0);
    CHECK_FALSE(rs.detectable());

    rs.signal_power_total = 2.0;
    CHECK(rs.detectable());
}
