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

#include <algorithm>

#include "rttd/channel.hpp"
#include "rttd/estimation.hpp"

using namespace rttd;

namespace {

const double fc = 60e9;
const double bw = 2e9;

struct Setup {
    ArrayGeometry rx = ArrayGeometry::linear(16, fc);
    ArrayGeometry tx = ArrayGeometry::linear(16, fc);
    RainbowCodebook book;
    std::vector<double> freqs;
    LinkBudget budget;

    explicit Setup(int diversity = 1, int loaded = 16)
    {
        book = build_rainbow_codebook(16, 4096, loaded, bw, diversity, 0.0, DelayModel::baseband, fc);
        for (int m = 0; m < loaded; ++m)
            freqs.push_back(book.baseband_hz(m));
        budget.tx_power_w = 1.0;
        budget.distance_m = 10.0;
        budget.noise_psd_w_per_hz = 1e-19;
        budget.subcarrier_spacing_hz = bw / 4095.0;
        budget.n_tx = 16;
        budget.n_rx = 16;
        budget.carrier_hz = fc;
    }

    cvec receive(double truth_rad, double noise_var, std::uint64_t seed) const
    {
        ChannelModel model;
        auto chan = realize_channel(rx, tx, truth_rad, 0.0, budget, freqs, model, seed);
        cvec pilots(freqs.size(), cxd(1.0, 0.0));
        return received_signal(book, chan, matched_precoder(tx, 0.0), pilots, noise_var, seed);
    }
};

} // namespace

TEST_CASE("coarse estimate wins on the probed direction without noise")
{
    Setup s;
    for (int g : {0, 4, 9, 15}) {
        double truth = s.book.directions[static_cast<std::size_t>(g)].angle_rad;
        auto res = coarse_estimate(s.receive(truth, 0.0, 31), s.book);
        CHECK(res.winning_group == g);
        CHECK(res.coarse_angle_rad == Approx(truth).margin(1e-12));
    }
}

TEST_CASE("coarse estimate breaks ties toward the first group")
{
    Setup s;
    cvec y(16, cxd(0.5, -0.5));
    auto res = coarse_estimate(y, s.book);
    CHECK(res.winning_group == 0);
    CHECK(res.coarse_angle_rad == Approx(s.book.directions[0].angle_rad));
}

TEST_CASE("coarse estimate is invariant to complex scaling of the input")
{
    Setup s;
    auto y = s.receive(deg2rad(20.0), 0.1, 7);
    auto base = coarse_estimate(y, s.book);

    cvec scaled = y;
    for (auto& v : scaled)
        v *= cxd(-1.7, 2.3);
    auto res = coarse_estimate(scaled, s.book);
    CHECK(res.winning_group == base.winning_group);
    CHECK(res.coarse_angle_rad == base.coarse_angle_rad);
}

TEST_CASE("per-direction power ignores ordering inside a group")
{
    Setup s(4, 64); // D = 16, R = 4
    auto y = s.receive(deg2rad(-12.0), 0.05, 13);
    auto base = coarse_estimate(y, s.book);

    // Swap the measurements of two subcarriers of the same group.
    cvec permuted = y;
    const auto& members = s.book.directions[3].subcarrier_positions;
    REQUIRE(members.size() == 4);
    std::swap(permuted[static_cast<std::size_t>(members[0])], permuted[static_cast<std::size_t>(members[3])]);
    auto res = coarse_estimate(permuted, s.book);
    for (std::size_t g = 0; g < base.per_direction_power.size(); ++g)
        CHECK(res.per_direction_power[g] == Approx(base.per_direction_power[g]).epsilon(1e-12));

    CHECK_THROWS_AS(coarse_estimate(cvec(63, cxd(1.0, 0.0)), s.book), std::invalid_argument);
}

TEST_CASE("dictionary rows peak at the matching probed direction")
{
    Setup s;
    auto dict = build_gain_dictionary(s.book, s.rx, 1024);
    CHECK(dict.size() == 1024);
    CHECK(dict.num_directions == 16);

    for (int g : {1, 8, 14}) {
        double probe = s.book.directions[static_cast<std::size_t>(g)].angle_rad;
        // Closest dictionary candidate to the probe angle.
        int q_near = 0;
        for (int q = 1; q < dict.size(); ++q)
            if (std::abs(dict.candidate_angles_rad[static_cast<std::size_t>(q)] - probe) <
                std::abs(dict.candidate_angles_rad[static_cast<std::size_t>(q_near)] - probe))
                q_near = q;
        const double* row = dict.row(q_near, CorrelationMetric::amplitude);
        int best = static_cast<int>(std::max_element(row, row + dict.num_directions) - row);
        CHECK(best == g);
    }

    // Rows carry unit Euclidean norm.
    for (int q : {0, 511, 1023}) {
        const double* row = dict.row(q, CorrelationMetric::amplitude);
        double norm2 = 0.0;
        for (int g = 0; g < dict.num_directions; ++g)
            norm2 += row[g] * row[g];
        CHECK(norm2 == Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(build_gain_dictionary(s.book, s.rx, 8), std::invalid_argument);
}

TEST_CASE("degenerate dictionary cannot beat the coarse grid")
{
    Setup s;
    auto dict = build_gain_dictionary(s.book, s.rx, 16);
    double truth = deg2rad(18.4); // off-grid
    auto res = coarse_estimate(s.receive(truth, 0.0, 3), s.book);
    double refined = refined_estimate(res, dict);
    // With Q == D the candidate grid is as coarse as the probing grid.
    CHECK(std::abs(refined - res.coarse_angle_rad) < 2.0 * pi / 16.0);
    CHECK(std::abs(refined - truth) > 1e-3);
}

TEST_CASE("refinement beats the coarse quantization off grid")
{
    Setup s;
    auto dict = build_gain_dictionary(s.book, s.rx, 1024);

    for (double truth_deg : {-37.3, -8.1, 11.7, 33.9}) {
        double truth = deg2rad(truth_deg);
        auto res = coarse_estimate(s.receive(truth, 0.0, 17), s.book);
        double refined = refined_estimate(res, dict);
        CHECK(std::abs(refined - truth) < std::abs(res.coarse_angle_rad - truth));
        CHECK(std::abs(refined - truth) < deg2rad(0.5));
    }
}

TEST_CASE("refinement recovers a dictionary angle exactly")
{
    Setup s;
    auto dict = build_gain_dictionary(s.book, s.rx, 512);
    double truth = dict.candidate_angles_rad[300];
    auto res = coarse_estimate(s.receive(truth, 0.0, 23), s.book);

    for (CorrelationMetric metric : {CorrelationMetric::amplitude, CorrelationMetric::power}) {
        double refined = refined_estimate(res, dict, metric);
        CHECK(refined == dict.candidate_angles_rad[300]);
    }
}

TEST_CASE("rmse of angle batches")
{
    CHECK(rmse({0.3, 0.3, 0.3}, 0.3) == Approx(0.0).margin(1e-12));
    CHECK(rmse({deg2rad(1.0), deg2rad(-1.0)}, 0.0) == Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(rmse({}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rmse_paired({0.1}, {0.1, 0.2}), std::invalid_argument);
}
