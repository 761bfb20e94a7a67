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

#include <string>
#include <vector>

#include "rttd/channel.hpp"
#include "rttd/estimation.hpp"
#include "rttd/impairments.hpp"
#include "rttd/scenario.hpp"

namespace rttd {

// End-to-end Monte Carlo machinery: one trial draws a truth angle, a
// channel, a hardware-error realization, pilots and noise, then runs both
// estimators on the single received training symbol. Trial i of a run is
// fully determined by base_seed + i.

/// Scenario compiled into ready-to-use domain objects.
struct AssembledScenario {
    ScenarioConfig config;
    ArrayGeometry rx_geometry;
    ArrayGeometry tx_geometry;
    OfdmSpec ofdm;
    RainbowCodebook book;
    GainDictionary dictionary;
    cvec precoder;
    LinkBudget budget;
    ChannelModel channel_model;
    ImpairmentSpec impairments;
    CorrelationMetric metric = CorrelationMetric::amplitude;
    double noise_var = 0.0; // per element, per subcarrier
    std::vector<double> loaded_baseband_hz;

    int num_directions() const { return book.num_directions(); }
};

/// Reference per-element signal power of the dominant path under the
/// matched precoder, used to pin the receive SNR.
inline double reference_element_power(const LinkBudget& budget, int loaded_count)
{
    double amp2 = budget.path_gain_linear() * budget.tx_power_w / static_cast<double>(loaded_count);
    return amp2 * static_cast<double>(budget.n_tx) * static_cast<double>(budget.n_tx);
}

inline AssembledScenario assemble_scenario(const ScenarioConfig& config)
{
    config.validate();
    AssembledScenario s;
    s.config = config;
    try {
        s.rx_geometry = config.rx_geometry();
        s.tx_geometry = config.tx_geometry();
        s.ofdm = config.ofdm_spec();
        s.book = config.codebook();
        s.budget = config.link_budget();
        s.channel_model = config.channel_model_params();
        s.impairments = config.impairment_spec();
        s.metric = config.metric_enum();
        s.precoder = matched_precoder(s.tx_geometry, deg2rad(config.aod_deg));
        s.dictionary = build_gain_dictionary(s.book, s.rx_geometry, config.dictionary_size,
                                             config.response_model_enum());
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }

    s.loaded_baseband_hz.reserve(s.ofdm.loaded_indices.size());
    for (int bin : s.ofdm.loaded_indices)
        s.loaded_baseband_hz.push_back(subcarrier_baseband_hz(bin, s.ofdm.m_total, s.ofdm.bandwidth_hz));

    if (config.snr_mode_enum() == SnrMode::pinned)
        s.noise_var = reference_element_power(s.budget, s.ofdm.loaded_count()) / db2pow(config.snr_db);
    else
        s.noise_var = s.budget.noise_psd_w_per_hz * s.budget.subcarrier_spacing_hz;
    return s;
}

struct TrialOutcome {
    double truth_rad = 0.0;
    double coarse_rad = 0.0;
    double refined_rad = 0.0;
    bool detected = false;
};

inline double draw_truth_angle(std::uint64_t seed, double max_angle_rad)
{
    auto rng = make_rng(seed, RngStream::truth);
    std::uniform_real_distribution<double> usine(-std::sin(max_angle_rad), std::sin(max_angle_rad));
    return std::asin(usine(rng));
}

inline cvec draw_pilots(std::uint64_t seed, int count, Constellation constellation, std::uint32_t substream = 0)
{
    auto rng = make_rng(seed, RngStream::pilots, substream);
    cvec s(static_cast<std::size_t>(count));
    for (auto& x : s)
        x = draw_pilot(rng, constellation);
    return s;
}

/// One single-symbol training trial through the rainbow codebook with the
/// given hardware-error realization.
inline TrialOutcome run_ttd_trial(const AssembledScenario& s, const ImpairmentSpec& impairments,
                                  std::uint64_t trial_index)
{
    std::uint64_t seed = trial_seed(s.config.base_seed, trial_index);

    TrialOutcome out;
    out.truth_rad = draw_truth_angle(seed, deg2rad(s.config.truth_max_angle_deg));

    ChannelRealization chan =
        realize_channel(s.rx_geometry, s.tx_geometry, out.truth_rad, deg2rad(s.config.aod_deg), s.budget,
                        s.loaded_baseband_hz, s.channel_model, seed);
    // Errors model static hardware state per realization; by default every
    // trial gets a fresh realization, the static mode freezes one for the
    // whole run.
    std::uint64_t impairment_seed = s.config.impairment_redraw_per_trial ? seed : s.config.base_seed;
    TapConfig taps = perturb_taps(s.book.taps, impairments, impairment_seed);
    cvec pilots = draw_pilots(seed, s.ofdm.loaded_count(), s.ofdm.constellation);

    ReceivedSignal rx = received_signal_detail(taps, s.book.delay_model, s.rx_geometry.carrier_hz, chan,
                                               s.precoder, pilots, s.noise_var, seed);

    EstimationResult est = coarse_estimate(rx.y, s.book);
    out.coarse_rad = est.coarse_angle_rad;
    out.refined_rad = refined_estimate(est, s.dictionary, s.metric);
    out.detected = rx.detectable();
    return out;
}

/// Exhaustive phase-shifter beam sweep over the same probing grid: one OFDM
/// symbol per direction, full-band (all loaded subcarriers) combining per
/// beam, winner by total received power. Shares the trial's channel draw
/// with the TTD path so comparisons are paired.
struct SweepOutcome {
    double estimate_rad = 0.0;
    bool detected = false;
    int symbols_used = 0;
};

inline SweepOutcome run_paa_sweep_trial(const AssembledScenario& s, double truth_rad, std::uint64_t trial_index)
{
    std::uint64_t seed = trial_seed(s.config.base_seed, trial_index);
    ChannelRealization chan = realize_channel(s.rx_geometry, s.tx_geometry, truth_rad,
                                              deg2rad(s.config.aod_deg), s.budget, s.loaded_baseband_hz,
                                              s.channel_model, seed);

    SweepOutcome out;
    out.symbols_used = s.num_directions();
    double best_power = -1.0;
    int best = 0;
    bool best_detectable = false;
    for (int g = 0; g < s.num_directions(); ++g) {
        double angle = s.book.directions[static_cast<std::size_t>(g)].angle_rad;
        TapConfig taps = ps_combiner(s.rx_geometry, angle);
        cvec pilots = draw_pilots(seed, s.ofdm.loaded_count(), s.ofdm.constellation,
                                  static_cast<std::uint32_t>(g + 1));
        ReceivedSignal rx =
            received_signal_detail(taps, DelayModel::baseband, s.rx_geometry.carrier_hz, chan, s.precoder,
                                   pilots, s.noise_var, seed, static_cast<std::uint32_t>(g + 1));
        double total = 0.0;
        for (const auto& y : rx.y)
            total += std::norm(y);
        if (total > best_power) {
            best_power = total;
            best = g;
            best_detectable = rx.detectable();
        }
    }
    out.estimate_rad = s.book.directions[static_cast<std::size_t>(best)].angle_rad;
    out.detected = best_detectable;
    return out;
}

struct RmseSummary {
    double coarse_rmse_deg = 0.0;
    double refined_rmse_deg = 0.0;
    double detect_rate = 0.0;
};

/// RMSE of both estimators over `trials` independent trials with the given
/// error realization model.
inline RmseSummary run_scenario_rmse(const AssembledScenario& s, const ImpairmentSpec& impairments, int trials)
{
    std::vector<double> coarse(static_cast<std::size_t>(trials));
    std::vector<double> refined(static_cast<std::size_t>(trials));
    std::vector<double> truth(static_cast<std::size_t>(trials));
    int detected = 0;
    for (int t = 0; t < trials; ++t) {
        TrialOutcome o = run_ttd_trial(s, impairments, static_cast<std::uint64_t>(t));
        coarse[static_cast<std::size_t>(t)] = o.coarse_rad;
        refined[static_cast<std::size_t>(t)] = o.refined_rad;
        truth[static_cast<std::size_t>(t)] = o.truth_rad;
        detected += o.detected ? 1 : 0;
    }
    RmseSummary r;
    r.coarse_rmse_deg = rmse_paired(coarse, truth);
    r.refined_rmse_deg = rmse_paired(refined, truth);
    r.detect_rate = static_cast<double>(detected) / static_cast<double>(trials);
    return r;
}

enum class SweepAxis { gain, phase, delay };

inline const char* to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::gain: return "gain";
    case SweepAxis::phase: return "phase";
    default: return "delay";
    }
}

struct SweepPoint {
    double grid_value = 0.0; // dB, degrees or seconds depending on the axis
    double coarse_rmse_deg = 0.0;
    double refined_rmse_deg = 0.0;
};

/// Sensitivity of both estimators to one hardware-error axis; the other two
/// sigmas stay zero. Grid values are sigma_gain [dB], sigma_phase [rad] or
/// sigma_delay [s]. Errors are redrawn every trial.
inline std::vector<SweepPoint> sensitivity_sweep(const ScenarioConfig& config, SweepAxis axis,
                                                 const std::vector<double>& grid, int trials,
                                                 std::uint64_t rng_seed)
{
    if (trials < 1)
        throw config_error("sensitivity_sweep: need at least one trial");
    if (grid.empty())
        throw config_error("sensitivity_sweep: empty grid");

    ScenarioConfig run_config = config;
    run_config.base_seed = rng_seed;
    run_config.sigma_gain_db = 0.0;
    run_config.sigma_phase_deg = 0.0;
    run_config.sigma_delay_ps = 0.0;
    AssembledScenario s = assemble_scenario(run_config);

    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (double value : grid) {
        ImpairmentSpec imp;
        imp.delay_model = s.book.delay_model;
        switch (axis) {
        case SweepAxis::gain: imp.sigma_gain_db = value; break;
        case SweepAxis::phase: imp.sigma_phase_rad = value; break;
        case SweepAxis::delay: imp.sigma_delay_s = value; break;
        }
        imp.validate();
        RmseSummary r = run_scenario_rmse(s, imp, trials);
        out.push_back(SweepPoint{value, r.coarse_rmse_deg, r.refined_rmse_deg});
    }
    return out;
}

struct MethodComparison {
    std::string method;
    int overhead_symbols = 0;
    double rmse_deg = 0.0;
    double detect_rate = 0.0;
};

/// One per-trial record for optional CSV dumps.
struct TrialRecord {
    int trial = 0;
    double truth_deg = 0.0;
    double coarse_deg = 0.0;
    double refined_deg = 0.0;
};

/// Paired single-symbol training vs exhaustive beam sweeping over identical
/// channel draws. When `records` is given it receives one entry per trial.
inline std::vector<MethodComparison> compare_sweeping(const ScenarioConfig& config,
                                                      std::vector<TrialRecord>* records = nullptr)
{
    AssembledScenario s = assemble_scenario(config);
    const int trials = config.trials;

    std::vector<double> truth(static_cast<std::size_t>(trials));
    std::vector<double> coarse(static_cast<std::size_t>(trials));
    std::vector<double> refined(static_cast<std::size_t>(trials));
    std::vector<double> paa(static_cast<std::size_t>(trials));
    int ttd_detected = 0;
    int paa_detected = 0;

    if (records)
        records->clear();
    for (int t = 0; t < trials; ++t) {
        TrialOutcome o = run_ttd_trial(s, s.impairments, static_cast<std::uint64_t>(t));
        SweepOutcome p = run_paa_sweep_trial(s, o.truth_rad, static_cast<std::uint64_t>(t));
        truth[static_cast<std::size_t>(t)] = o.truth_rad;
        coarse[static_cast<std::size_t>(t)] = o.coarse_rad;
        refined[static_cast<std::size_t>(t)] = o.refined_rad;
        paa[static_cast<std::size_t>(t)] = p.estimate_rad;
        ttd_detected += o.detected ? 1 : 0;
        paa_detected += p.detected ? 1 : 0;
        if (records)
            records->push_back(TrialRecord{t, rad2deg(o.truth_rad), rad2deg(o.coarse_rad),
                                           rad2deg(o.refined_rad)});
    }

    auto rate = [&](int n) { return static_cast<double>(n) / static_cast<double>(trials); };
    return {
        MethodComparison{"ttd_coarse", 1, rmse_paired(coarse, truth), rate(ttd_detected)},
        MethodComparison{"ttd_refined", 1, rmse_paired(refined, truth), rate(ttd_detected)},
        MethodComparison{"paa_sweep", s.num_directions(), rmse_paired(paa, truth), rate(paa_detected)},
    };
}

} // namespace rttd
