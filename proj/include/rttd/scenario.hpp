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

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rttd/channel.hpp"
#include "rttd/codebook.hpp"
#include "rttd/estimation.hpp"
#include "rttd/impairments.hpp"
#include "rttd/waveform.hpp"

namespace rttd {

/// A malformed or self-inconsistent configuration (CLI exit code 2).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A violated runtime invariant (CLI exit code 3).
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SnrMode { pinned, from_budget };

inline const char* to_string(SnrMode m) { return m == SnrMode::pinned ? "pinned" : "from_budget"; }

/// Per-experiment knobs. Everything an experiment sweeps over lives here so
/// that one config file fully determines one run.
struct ExperimentParams {
    // squint-error
    std::vector<double> squint_fbw{0.05, 0.15, 0.25};
    double squint_max_angle_deg = 60.0;
    double squint_angle_step_deg = 0.5;

    // gain-vs-freq
    std::vector<int> gain_curve_elements{4, 16, 64};
    double gain_curve_angle_deg = 45.0;
    int gain_curve_points = 401;
    double gain_curve_span = 0.4; // normalized frequency span around the carrier

    // codebook-map
    int codebook_map_angles = 361; // dense gain-map resolution

    // papr-ccdf
    int papr_trials = 10000;
    int papr_oversample = 4; // second pass; 0 disables
    double papr_ccdf_level = 1e-2;

    // impairment-sweep
    std::vector<double> impair_gain_grid_db{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> impair_phase_grid_deg{0.0, 5.0, 10.0, 15.0, 20.0, 30.0, 45.0};
    std::vector<double> impair_delay_grid_ps{0.0, 25.0, 50.0, 75.0, 100.0, 125.0, 150.0};
    std::vector<double> impair_delay_rf_grid_ps{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};

    // distance-rmse
    std::vector<double> distance_grid_m{25, 50, 75, 100, 125, 150, 175, 200, 225, 250};

    // planar-contour
    int planar_n_x = 4;
    int planar_n_y = 2;
    double planar_dtau_x_bw = 1.0; // delay steps in units of 1/BW
    double planar_dtau_y_bw = 7.0;
    int planar_subcarriers = 10;
    double planar_level_db = 3.0;
    int planar_grid_theta = 91;
    int planar_grid_phi = 181;

    // Monte Carlo experiments: also dump one CSV row per trial.
    bool dump_trials = false;

    bool operator==(const ExperimentParams&) const = default;
};

/// Complete description of one simulation scenario. This is the CLI
/// boundary type: angles are kept in degrees and delays in picoseconds
/// exactly as they appear in the config file; the assembly helpers convert
/// to the library's internal radian/second units.
struct ScenarioConfig {
    // arrays
    int n_rx = 16;
    int n_tx = 128;
    double carrier_hz = 60e9;
    double spacing_wavelengths = 0.5;

    // ofdm
    int m_total = 4096;
    int loaded_count = 128;
    double bandwidth_hz = 2e9;
    int cp_len = 128;
    std::string constellation = "qpsk";

    // codebook
    int diversity = 4;
    double rotation_deg = 0.0;
    std::string delay_model = "baseband";
    std::string response_model = "frequency_flat";

    // link budget
    double tx_power_w = 1.0;
    double distance_m = 30.0;
    double noise_psd_w_per_hz = 4e-20;
    std::string pathloss_model = "free_space";
    double pathloss_exponent = 3.0;
    double pathloss_ref_db = 92.0; // calibration constant of the log-distance default

    // channel
    std::string channel_model = "single_path_los";
    int extra_paths = 2;
    double extra_path_power_db = -6.0;
    double delay_spread_ns = 40.0;
    double aod_deg = 0.0;

    // impairments
    double sigma_gain_db = 0.0;
    double sigma_phase_deg = 0.0;
    double sigma_delay_ps = 0.0;
    bool impairment_redraw_per_trial = true; // false: one static error realization per run

    // estimator
    int dictionary_size = 1024;
    std::string correlation_metric = "amplitude";

    // run control
    std::string snr_mode = "pinned";
    double snr_db = 0.0;
    int trials = 500;
    std::uint64_t base_seed = 1;
    double truth_max_angle_deg = 60.0;
    std::string output_dir = "out";

    ExperimentParams experiment;

    bool operator==(const ScenarioConfig&) const = default;

    // --- assembly helpers -------------------------------------------------

    Constellation constellation_enum() const
    {
        if (constellation == "bpsk")
            return Constellation::bpsk;
        if (constellation == "qpsk")
            return Constellation::qpsk;
        throw config_error("unknown constellation: " + constellation);
    }

    DelayModel delay_model_enum() const
    {
        if (delay_model == "baseband")
            return DelayModel::baseband;
        if (delay_model == "rf")
            return DelayModel::rf;
        throw config_error("unknown delay model: " + delay_model);
    }

    ResponseModel response_model_enum() const
    {
        if (response_model == "frequency_flat")
            return ResponseModel::frequency_flat;
        if (response_model == "frequency_dependent")
            return ResponseModel::frequency_dependent;
        throw config_error("unknown response model: " + response_model);
    }

    CorrelationMetric metric_enum() const
    {
        if (correlation_metric == "amplitude")
            return CorrelationMetric::amplitude;
        if (correlation_metric == "power")
            return CorrelationMetric::power;
        throw config_error("unknown correlation metric: " + correlation_metric);
    }

    SnrMode snr_mode_enum() const
    {
        if (snr_mode == "pinned")
            return SnrMode::pinned;
        if (snr_mode == "from_budget")
            return SnrMode::from_budget;
        throw config_error("unknown snr mode: " + snr_mode);
    }

    ChannelModel::Kind channel_kind_enum() const
    {
        if (channel_model == "single_path_los")
            return ChannelModel::Kind::single_path_los;
        if (channel_model == "multipath")
            return ChannelModel::Kind::multipath;
        throw config_error("unknown channel model: " + channel_model);
    }

    ArrayGeometry rx_geometry() const { return ArrayGeometry::linear(n_rx, carrier_hz, spacing_wavelengths); }
    ArrayGeometry tx_geometry() const { return ArrayGeometry::linear(n_tx, carrier_hz, spacing_wavelengths); }

    OfdmSpec ofdm_spec() const
    {
        OfdmSpec spec;
        spec.m_total = m_total;
        spec.loaded_indices = uniform_loaded_indices(m_total, loaded_count);
        spec.bandwidth_hz = bandwidth_hz;
        spec.cp_len = cp_len;
        spec.constellation = constellation_enum();
        return spec;
    }

    LinkBudget link_budget() const
    {
        LinkBudget b;
        b.tx_power_w = tx_power_w;
        b.distance_m = distance_m;
        b.noise_psd_w_per_hz = noise_psd_w_per_hz;
        b.subcarrier_spacing_hz = bandwidth_hz / static_cast<double>(m_total - 1);
        b.n_tx = n_tx;
        b.n_rx = n_rx;
        b.carrier_hz = carrier_hz;
        if (pathloss_model == "free_space") {
            b.pathloss.kind = PathLossModel::Kind::free_space;
        } else if (pathloss_model == "log_distance") {
            b.pathloss.kind = PathLossModel::Kind::log_distance;
            b.pathloss.exponent = pathloss_exponent;
            b.pathloss.ref_loss_db = pathloss_ref_db;
        } else {
            throw config_error("unknown path loss model: " + pathloss_model);
        }
        return b;
    }

    ChannelModel channel_model_params() const
    {
        ChannelModel m;
        m.kind = channel_kind_enum();
        m.extra_paths = extra_paths;
        m.extra_path_power_db = extra_path_power_db;
        m.delay_spread_s = delay_spread_ns * 1e-9;
        m.frequency_flat_response = response_model_enum() == ResponseModel::frequency_flat;
        return m;
    }

    ImpairmentSpec impairment_spec() const
    {
        ImpairmentSpec s;
        s.sigma_gain_db = sigma_gain_db;
        s.sigma_phase_rad = deg2rad(sigma_phase_deg);
        s.sigma_delay_s = sigma_delay_ps * 1e-12;
        s.delay_model = delay_model_enum();
        return s;
    }

    RainbowCodebook codebook() const
    {
        return build_rainbow_codebook(n_rx, ofdm_spec(), diversity, deg2rad(rotation_deg), delay_model_enum(),
                                      carrier_hz);
    }

    /// Consistency checks beyond per-field validation. Throws config_error.
    void validate() const
    {
        auto guard = [](bool ok, const char* msg) {
            if (!ok)
                throw config_error(msg);
        };
        guard(n_rx >= 2 && n_tx >= 1, "antenna counts out of range");
        guard(carrier_hz > 0.0 && bandwidth_hz > 0.0, "carrier and bandwidth must be positive");
        guard(bandwidth_hz < 2.0 * carrier_hz, "bandwidth exceeds twice the carrier");
        guard(m_total >= 2 && loaded_count >= 1 && loaded_count <= m_total,
              "loaded subcarriers out of range");
        guard(m_total % loaded_count == 0, "loaded count must divide the subcarrier grid");
        guard(cp_len >= 0 && cp_len < m_total, "cyclic prefix out of range");
        guard(diversity >= 1 && loaded_count % diversity == 0,
              "probing budget must satisfy M = D * R over the loaded subcarriers");
        guard(std::abs(rotation_deg) <= 90.0, "rotation outside +-90 degrees");
        guard(dictionary_size >= loaded_count / diversity, "dictionary smaller than the probing grid");
        guard(trials >= 1, "need at least one trial");
        guard(sigma_gain_db >= 0.0 && sigma_phase_deg >= 0.0 && sigma_delay_ps >= 0.0,
              "impairment sigmas must be nonnegative");
        guard(truth_max_angle_deg > 0.0 && truth_max_angle_deg <= 90.0, "truth angle range out of bounds");
        guard(std::abs(aod_deg) <= 90.0, "departure angle outside +-90 degrees");
        constellation_enum();
        delay_model_enum();
        response_model_enum();
        metric_enum();
        snr_mode_enum();
        channel_kind_enum();
        link_budget().validate();
    }
};

// --- JSON (de)serialization ------------------------------------------------

inline void to_json(nlohmann::json& j, const ExperimentParams& p)
{
    j = nlohmann::json{{"squint_fbw", p.squint_fbw},
                       {"squint_max_angle_deg", p.squint_max_angle_deg},
                       {"squint_angle_step_deg", p.squint_angle_step_deg},
                       {"gain_curve_elements", p.gain_curve_elements},
                       {"gain_curve_angle_deg", p.gain_curve_angle_deg},
                       {"gain_curve_points", p.gain_curve_points},
                       {"gain_curve_span", p.gain_curve_span},
                       {"codebook_map_angles", p.codebook_map_angles},
                       {"papr_trials", p.papr_trials},
                       {"papr_oversample", p.papr_oversample},
                       {"papr_ccdf_level", p.papr_ccdf_level},
                       {"impair_gain_grid_db", p.impair_gain_grid_db},
                       {"impair_phase_grid_deg", p.impair_phase_grid_deg},
                       {"impair_delay_grid_ps", p.impair_delay_grid_ps},
                       {"impair_delay_rf_grid_ps", p.impair_delay_rf_grid_ps},
                       {"distance_grid_m", p.distance_grid_m},
                       {"planar_n_x", p.planar_n_x},
                       {"planar_n_y", p.planar_n_y},
                       {"planar_dtau_x_bw", p.planar_dtau_x_bw},
                       {"planar_dtau_y_bw", p.planar_dtau_y_bw},
                       {"planar_subcarriers", p.planar_subcarriers},
                       {"planar_level_db", p.planar_level_db},
                       {"planar_grid_theta", p.planar_grid_theta},
                       {"planar_grid_phi", p.planar_grid_phi},
                       {"dump_trials", p.dump_trials}};
}

inline void from_json(const nlohmann::json& j, ExperimentParams& p)
{
    ExperimentParams d;
    p.squint_fbw = j.value("squint_fbw", d.squint_fbw);
    p.squint_max_angle_deg = j.value("squint_max_angle_deg", d.squint_max_angle_deg);
    p.squint_angle_step_deg = j.value("squint_angle_step_deg", d.squint_angle_step_deg);
    p.gain_curve_elements = j.value("gain_curve_elements", d.gain_curve_elements);
    p.gain_curve_angle_deg = j.value("gain_curve_angle_deg", d.gain_curve_angle_deg);
    p.gain_curve_points = j.value("gain_curve_points", d.gain_curve_points);
    p.gain_curve_span = j.value("gain_curve_span", d.gain_curve_span);
    p.codebook_map_angles = j.value("codebook_map_angles", d.codebook_map_angles);
    p.papr_trials = j.value("papr_trials", d.papr_trials);
    p.papr_oversample = j.value("papr_oversample", d.papr_oversample);
    p.papr_ccdf_level = j.value("papr_ccdf_level", d.papr_ccdf_level);
    p.impair_gain_grid_db = j.value("impair_gain_grid_db", d.impair_gain_grid_db);
    p.impair_phase_grid_deg = j.value("impair_phase_grid_deg", d.impair_phase_grid_deg);
    p.impair_delay_grid_ps = j.value("impair_delay_grid_ps", d.impair_delay_grid_ps);
    p.impair_delay_rf_grid_ps = j.value("impair_delay_rf_grid_ps", d.impair_delay_rf_grid_ps);
    p.distance_grid_m = j.value("distance_grid_m", d.distance_grid_m);
    p.planar_n_x = j.value("planar_n_x", d.planar_n_x);
    p.planar_n_y = j.value("planar_n_y", d.planar_n_y);
    p.planar_dtau_x_bw = j.value("planar_dtau_x_bw", d.planar_dtau_x_bw);
    p.planar_dtau_y_bw = j.value("planar_dtau_y_bw", d.planar_dtau_y_bw);
    p.planar_subcarriers = j.value("planar_subcarriers", d.planar_subcarriers);
    p.planar_level_db = j.value("planar_level_db", d.planar_level_db);
    p.planar_grid_theta = j.value("planar_grid_theta", d.planar_grid_theta);
    p.planar_grid_phi = j.value("planar_grid_phi", d.planar_grid_phi);
    p.dump_trials = j.value("dump_trials", d.dump_trials);
}

inline void to_json(nlohmann::json& j, const ScenarioConfig& c)
{
    j = nlohmann::json{
        {"arrays",
         {{"n_rx", c.n_rx},
          {"n_tx", c.n_tx},
          {"carrier_hz", c.carrier_hz},
          {"spacing_wavelengths", c.spacing_wavelengths}}},
        {"ofdm",
         {{"m_total", c.m_total},
          {"loaded_count", c.loaded_count},
          {"bandwidth_hz", c.bandwidth_hz},
          {"cp_len", c.cp_len},
          {"constellation", c.constellation}}},
        {"codebook",
         {{"diversity", c.diversity},
          {"rotation_deg", c.rotation_deg},
          {"delay_model", c.delay_model},
          {"response_model", c.response_model}}},
        {"budget",
         {{"tx_power_w", c.tx_power_w},
          {"distance_m", c.distance_m},
          {"noise_psd_w_per_hz", c.noise_psd_w_per_hz},
          {"pathloss_model", c.pathloss_model},
          {"pathloss_exponent", c.pathloss_exponent},
          {"pathloss_ref_db", c.pathloss_ref_db}}},
        {"channel",
         {{"model", c.channel_model},
          {"extra_paths", c.extra_paths},
          {"extra_path_power_db", c.extra_path_power_db},
          {"delay_spread_ns", c.delay_spread_ns},
          {"aod_deg", c.aod_deg}}},
        {"impairments",
         {{"sigma_gain_db", c.sigma_gain_db},
          {"sigma_phase_deg", c.sigma_phase_deg},
          {"sigma_delay_ps", c.sigma_delay_ps},
          {"redraw_per_trial", c.impairment_redraw_per_trial}}},
        {"estimator", {{"dictionary_size", c.dictionary_size}, {"correlation_metric", c.correlation_metric}}},
        {"run",
         {{"snr_mode", c.snr_mode},
          {"snr_db", c.snr_db},
          {"trials", c.trials},
          {"base_seed", c.base_seed},
          {"truth_max_angle_deg", c.truth_max_angle_deg},
          {"output_dir", c.output_dir}}},
        {"experiment", c.experiment}};
}

inline void from_json(const nlohmann::json& j, ScenarioConfig& c)
{
    ScenarioConfig d;
    auto sec = [&j](const char* name) { return j.contains(name) ? j.at(name) : nlohmann::json::object(); };

    nlohmann::json a = sec("arrays");
    c.n_rx = a.value("n_rx", d.n_rx);
    c.n_tx = a.value("n_tx", d.n_tx);
    c.carrier_hz = a.value("carrier_hz", d.carrier_hz);
    c.spacing_wavelengths = a.value("spacing_wavelengths", d.spacing_wavelengths);

    nlohmann::json o = sec("ofdm");
    c.m_total = o.value("m_total", d.m_total);
    c.loaded_count = o.value("loaded_count", d.loaded_count);
    c.bandwidth_hz = o.value("bandwidth_hz", d.bandwidth_hz);
    c.cp_len = o.value("cp_len", d.cp_len);
    c.constellation = o.value("constellation", d.constellation);

    nlohmann::json k = sec("codebook");
    c.diversity = k.value("diversity", d.diversity);
    c.rotation_deg = k.value("rotation_deg", d.rotation_deg);
    c.delay_model = k.value("delay_model", d.delay_model);
    c.response_model = k.value("response_model", d.response_model);

    nlohmann::json b = sec("budget");
    c.tx_power_w = b.value("tx_power_w", d.tx_power_w);
    c.distance_m = b.value("distance_m", d.distance_m);
    c.noise_psd_w_per_hz = b.value("noise_psd_w_per_hz", d.noise_psd_w_per_hz);
    c.pathloss_model = b.value("pathloss_model", d.pathloss_model);
    c.pathloss_exponent = b.value("pathloss_exponent", d.pathloss_exponent);
    c.pathloss_ref_db = b.value("pathloss_ref_db", d.pathloss_ref_db);

    nlohmann::json ch = sec("channel");
    c.channel_model = ch.value("model", d.channel_model);
    c.extra_paths = ch.value("extra_paths", d.extra_paths);
    c.extra_path_power_db = ch.value("extra_path_power_db", d.extra_path_power_db);
    c.delay_spread_ns = ch.value("delay_spread_ns", d.delay_spread_ns);
    c.aod_deg = ch.value("aod_deg", d.aod_deg);

    nlohmann::json im = sec("impairments");
    c.sigma_gain_db = im.value("sigma_gain_db", d.sigma_gain_db);
    c.sigma_phase_deg = im.value("sigma_phase_deg", d.sigma_phase_deg);
    c.sigma_delay_ps = im.value("sigma_delay_ps", d.sigma_delay_ps);
    c.impairment_redraw_per_trial = im.value("redraw_per_trial", d.impairment_redraw_per_trial);

    nlohmann::json e = sec("estimator");
    c.dictionary_size = e.value("dictionary_size", d.dictionary_size);
    c.correlation_metric = e.value("correlation_metric", d.correlation_metric);

    nlohmann::json r = sec("run");
    c.snr_mode = r.value("snr_mode", d.snr_mode);
    c.snr_db = r.value("snr_db", d.snr_db);
    c.trials = r.value("trials", d.trials);
    c.base_seed = r.value("base_seed", d.base_seed);
    c.truth_max_angle_deg = r.value("truth_max_angle_deg", d.truth_max_angle_deg);
    c.output_dir = r.value("output_dir", d.output_dir);

    if (j.contains("experiment"))
        c.experiment = j.at("experiment").get<ExperimentParams>();
    else
        c.experiment = ExperimentParams{};
}

inline std::string serialize_config(const ScenarioConfig& c)
{
    nlohmann::json j = c;
    return j.dump(2) + "\n";
}

inline ScenarioConfig parse_config(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse failure: ") + e.what());
    }
    try {
        return j.get<ScenarioConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config field error: ") + e.what());
    }
}

inline ScenarioConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

/// Apply one `section.key=value` override onto the serialized form.
inline void apply_override(ScenarioConfig& config, const std::string& assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must have the form section.key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    nlohmann::json j = config;
    nlohmann::json* node = &j;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty())
            throw config_error("bad override path: " + path);
        if (!node->contains(key))
            throw config_error("unknown config key: " + path);
        node = &(*node)[key];
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }

    // Interpret the value with the same type the field already has.
    try {
        if (node->is_string())
            *node = value;
        else
            *node = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
        throw config_error("cannot parse override value: " + assignment);
    }
    config = j.get<ScenarioConfig>();
}

} // namespace rttd
