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

#include <optional>
#include <stdexcept>
#include <vector>

#include "rttd/array.hpp"
#include "rttd/codebook.hpp"
#include "rttd/common.hpp"

namespace rttd {

// Frequency-domain direction finding from a single rainbow training symbol:
// the subcarrier group with the strongest mean power names the coarse
// angle; correlating the whole power profile against a dense dictionary of
// expected gain shapes refines it below the probing grid.

/// How a measured per-direction power profile is matched against the
/// dictionary: on amplitudes (square-rooted powers) or on powers directly.
enum class CorrelationMetric { amplitude, power };

inline const char* to_string(CorrelationMetric m)
{
    return m == CorrelationMetric::amplitude ? "amplitude" : "power";
}

struct EstimationResult {
    double coarse_angle_rad = 0.0;
    std::optional<double> refined_angle_rad;
    std::vector<double> per_direction_power;
    int winning_group = 0;
};

/// Coarse estimate: mean |Y|^2 per probed direction, winner takes its
/// (rotated) codebook angle. Ties break toward the smaller direction index.
inline EstimationResult coarse_estimate(const cvec& y, const RainbowCodebook& book)
{
    if (static_cast<int>(y.size()) != book.ofdm.loaded_count())
        throw std::invalid_argument("coarse_estimate: received vector length does not match the codebook");

    EstimationResult res;
    res.per_direction_power.assign(book.directions.size(), 0.0);
    for (std::size_t g = 0; g < book.directions.size(); ++g) {
        const auto& members = book.directions[g].subcarrier_positions;
        double acc = 0.0;
        for (int pos : members)
            acc += std::norm(y[static_cast<std::size_t>(pos)]);
        res.per_direction_power[g] = acc / static_cast<double>(members.size());
    }

    int best = 0;
    for (int g = 1; g < static_cast<int>(res.per_direction_power.size()); ++g)
        if (res.per_direction_power[static_cast<std::size_t>(g)] >
            res.per_direction_power[static_cast<std::size_t>(best)])
            best = g;
    res.winning_group = best;
    res.coarse_angle_rad = book.directions[static_cast<std::size_t>(best)].angle_rad;
    return res;
}

/// Oversampled dictionary of expected per-direction combining-gain
/// profiles. Row q holds, for each probed direction, the mean combining
/// gain a source at candidate angle q would produce on that direction's
/// subcarriers. Rows are unit-norm; candidates are uniform in sine.
struct GainDictionary {
    std::vector<double> candidate_angles_rad;  // Q entries
    std::vector<double> amplitude_rows;        // Q x D, row-major, unit norm
    std::vector<double> power_rows;            // Q x D, row-major, unit norm
    int num_directions = 0;

    int size() const { return static_cast<int>(candidate_angles_rad.size()); }

    const double* row(int q, CorrelationMetric metric) const
    {
        const auto& rows = (metric == CorrelationMetric::amplitude) ? amplitude_rows : power_rows;
        return rows.data() + static_cast<std::size_t>(q) * static_cast<std::size_t>(num_directions);
    }
};

inline GainDictionary build_gain_dictionary(const RainbowCodebook& book, const ArrayGeometry& geometry, int q,
                                            ResponseModel response = ResponseModel::frequency_flat)
{
    if (q < book.num_directions())
        throw std::invalid_argument("build_gain_dictionary: dictionary must be at least as dense as the probing "
                                    "grid");
    if (static_cast<int>(book.taps.size()) != geometry.total_elements())
        throw std::invalid_argument("build_gain_dictionary: codebook does not match geometry");

    const int d = book.num_directions();
    GainDictionary dict;
    dict.num_directions = d;
    dict.candidate_angles_rad.resize(static_cast<std::size_t>(q));
    dict.amplitude_rows.assign(static_cast<std::size_t>(q) * static_cast<std::size_t>(d), 0.0);
    dict.power_rows.assign(static_cast<std::size_t>(q) * static_cast<std::size_t>(d), 0.0);

    for (int iq = 0; iq < q; ++iq) {
        double sine = -1.0 + 2.0 * (static_cast<double>(iq) + 0.5) / static_cast<double>(q);
        double angle = std::asin(sine);
        dict.candidate_angles_rad[static_cast<std::size_t>(iq)] = angle;

        double* amp_row = dict.amplitude_rows.data() + static_cast<std::size_t>(iq) * static_cast<std::size_t>(d);
        double* pow_row = dict.power_rows.data() + static_cast<std::size_t>(iq) * static_cast<std::size_t>(d);
        for (int g = 0; g < d; ++g) {
            const auto& members = book.directions[static_cast<std::size_t>(g)].subcarrier_positions;
            double mean_pow = 0.0;
            for (int pos : members) {
                double f_abs = geometry.carrier_hz + book.baseband_hz(pos);
                double gain = beamforming_gain(book.taps, geometry, angle, f_abs, response, book.delay_model);
                mean_pow += gain * gain;
            }
            mean_pow /= static_cast<double>(members.size());
            pow_row[g] = mean_pow;
            amp_row[g] = std::sqrt(mean_pow);
        }

        auto normalize = [d](double* row) {
            double norm2 = 0.0;
            for (int g = 0; g < d; ++g)
                norm2 += row[g] * row[g];
            double inv = (norm2 > 0.0) ? 1.0 / std::sqrt(norm2) : 0.0;
            for (int g = 0; g < d; ++g)
                row[g] *= inv;
        };
        normalize(amp_row);
        normalize(pow_row);
    }
    return dict;
}

/// Dictionary refinement: the candidate whose normalized gain profile
/// correlates best with the measured per-direction profile. Ties break
/// toward the smaller candidate index.
inline double refined_estimate(const EstimationResult& result, const GainDictionary& dict,
                               CorrelationMetric metric = CorrelationMetric::amplitude)
{
    if (static_cast<int>(result.per_direction_power.size()) != dict.num_directions)
        throw std::invalid_argument("refined_estimate: dictionary was built for a different codebook");

    const int d = dict.num_directions;
    std::vector<double> meas(static_cast<std::size_t>(d));
    for (int g = 0; g < d; ++g) {
        double p = result.per_direction_power[static_cast<std::size_t>(g)];
        meas[static_cast<std::size_t>(g)] = (metric == CorrelationMetric::amplitude) ? std::sqrt(p) : p;
    }

    int best = 0;
    double best_score = -1.0;
    for (int q = 0; q < dict.size(); ++q) {
        const double* row = dict.row(q, metric);
        double score = 0.0;
        for (int g = 0; g < d; ++g)
            score += row[g] * meas[static_cast<std::size_t>(g)];
        if (score > best_score) {
            best_score = score;
            best = q;
        }
    }
    return dict.candidate_angles_rad[static_cast<std::size_t>(best)];
}

/// Root-mean-square angular error in degrees of a batch of estimates
/// (radians) against one ground truth (radians).
inline double rmse(const std::vector<double>& estimates_rad, double truth_rad)
{
    if (estimates_rad.empty())
        throw std::invalid_argument("rmse: empty input");
    double acc = 0.0;
    for (double e : estimates_rad) {
        double err = rad2deg(e - truth_rad);
        acc += err * err;
    }
    return std::sqrt(acc / static_cast<double>(estimates_rad.size()));
}

/// RMSE in degrees over paired (estimate, truth) samples in radians.
inline double rmse_paired(const std::vector<double>& estimates_rad, const std::vector<double>& truths_rad)
{
    if (estimates_rad.empty() || estimates_rad.size() != truths_rad.size())
        throw std::invalid_argument("rmse_paired: need equally many estimates and truths");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates_rad.size(); ++i) {
        double err = rad2deg(estimates_rad[i] - truths_rad[i]);
        acc += err * err;
    }
    return std::sqrt(acc / static_cast<double>(estimates_rad.size()));
}

} // namespace rttd
