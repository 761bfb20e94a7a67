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

#include "rttd/squint.hpp"

using namespace rttd;

namespace {
const double fc = 60e9;
}

TEST_CASE("intended AoA identities")
{
    CHECK(intended_aoa(0.0, 0.93 * fc, fc) == Approx(0.0).margin(1e-15));
    CHECK(intended_aoa(pi * std::sin(deg2rad(45.0)), fc, fc) == Approx(deg2rad(45.0)).epsilon(1e-12));
    CHECK(rad2deg(intended_aoa(pi * std::sin(deg2rad(45.0)), 0.9 * fc, fc)) == Approx(51.78).epsilon(1e-3));
}

TEST_CASE("squint report flags clipped arcsine arguments")
{
    auto ok = squint_report(deg2rad(45.0), fc, fc);
    CHECK_FALSE(ok.clipped);
    CHECK(ok.error_rad == Approx(0.0).margin(1e-12));

    // Steep angle at a frequency far below the carrier pushes past endfire.
    auto clipped = squint_report(deg2rad(80.0), 0.8 * fc, fc);
    CHECK(clipped.clipped);
    CHECK(clipped.actual_angle_rad == Approx(pi / 2.0));
    CHECK(clipped.error_rad >= 0.0);
    CHECK(std::abs(clipped.actual_angle_rad) <= pi / 2.0);
}

TEST_CASE("maximum angular error closed form")
{
    CHECK(max_angular_error(0.0, 0.3) == Approx(0.0).margin(1e-15));

    // theta = 45 deg, fbw = 0.2: asin(sin(45)/0.9) - 45 deg.
    CHECK(rad2deg(max_angular_error(deg2rad(45.0), 0.2)) == Approx(6.78).epsilon(2e-3));

    // Largest plotted fractional bandwidth: the worst error over [0, 60] deg
    // reaches the low twenties.
    double peak = 0.0;
    for (double a = 0.0; a <= 60.0; a += 0.1)
        peak = std::max(peak, rad2deg(max_angular_error(deg2rad(a), 0.25)));
    CHECK(peak >= 20.0);
    CHECK(peak <= 24.0);

    CHECK_THROWS_AS(max_angular_error(deg2rad(30.0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(max_angular_error(deg2rad(30.0), 2.0), std::invalid_argument);
}

TEST_CASE("maximum angular error grows with fractional bandwidth and is even in the angle")
{
    for (double theta_deg : {10.0, 30.0, 45.0, 60.0}) {
        double prev = 0.0;
        for (double fbw = 0.02; fbw <= 0.4; fbw += 0.02) {
            double err = max_angular_error(deg2rad(theta_deg), fbw);
            CHECK(err >= prev - 1e-15);
            prev = err;
        }
        CHECK(max_angular_error(deg2rad(-theta_deg), 0.21) ==
              Approx(max_angular_error(deg2rad(theta_deg), 0.21)).epsilon(1e-12));
    }
}

TEST_CASE("3-dB fractional bandwidth closed form")
{
    CHECK(fractional_bandwidth_3db(16, pi / 2.0) == Approx(0.11075).epsilon(1e-6));
    CHECK(fractional_bandwidth_3db(64, deg2rad(45.0)) == Approx(0.039156).epsilon(1e-4));
    CHECK(std::isinf(fractional_bandwidth_3db(32, 0.0)));
    CHECK_THROWS_AS(fractional_bandwidth_3db(1, deg2rad(45.0)), std::invalid_argument);
}

TEST_CASE("gain curve peaks exactly at the carrier and narrows with N")
{
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i)
        grid.push_back(fc * (0.9 + 0.2 * i / 200.0));

    auto g4 = gain_vs_frequency_curve(4, deg2rad(45.0), grid, fc);
    auto g16 = gain_vs_frequency_curve(16, deg2rad(45.0), grid, fc);
    auto g64 = gain_vs_frequency_curve(64, deg2rad(45.0), grid, fc);

    // Exactly 1 at f == fc (grid point 100).
    CHECK(g4[100] == 1.0);
    CHECK(g16[100] == 1.0);
    CHECK(g64[100] == 1.0);

    // Wider arrays squint harder at every offset within the narrow band.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i == 100)
            continue;
        CHECK(g4[i] >= g16[i] - 1e-12);
        CHECK(g16[i] >= g64[i] - 1e-12);
    }

    CHECK_THROWS_AS(gain_vs_frequency_curve(8, 0.3, std::vector<double>{2e9, 2e9}, fc), std::invalid_argument);
}

TEST_CASE("numeric 3-dB width agrees with the closed form")
{
    for (int n : {16, 64}) {
        double measured = measure_fbw_3db(n, deg2rad(45.0), fc);
        double formula = fractional_bandwidth_3db(n, deg2rad(45.0));
        CHECK(std::abs(measured - formula) / formula < 0.05);
    }
}
