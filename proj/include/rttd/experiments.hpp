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

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rttd/csv.hpp"
#include "rttd/montecarlo.hpp"
#include "rttd/squint.hpp"

namespace rttd {

struct ExperimentResult {
    std::string name;
    std::map<std::string, double> metrics;
    std::vector<std::string> files;

    std::string summary() const
    {
        std::ostringstream os;
        os << name << ":";
        for (const auto& [k, v] : metrics)
            os << " " << k << "=" << csv_num(v);
        return os.str();
    }
};

inline const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names{"squint-error",     "gain-vs-freq",  "codebook-map",
                                                "impairment-sweep", "papr-ccdf",     "distance-rmse",
                                                "planar-contour",   "compare-sweeping"};
    return names;
}

/// Shipped defaults, specialized per experiment.
inline ScenarioConfig default_config(const std::string& experiment)
{
    ScenarioConfig c;
    if (experiment == "codebook-map") {
        c.diversity = 1;
        c.loaded_count = 16;
    } else if (experiment == "distance-rmse") {
        c.pathloss_model = "log_distance";
        c.channel_model = "multipath";
        c.snr_mode = "from_budget";
        c.trials = 200;
    }
    return c;
}

namespace detail {

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

inline std::string out_path(const std::string& dir, const std::string& file)
{
    return (std::filesystem::path(dir) / file).string();
}

inline std::string plot_script(const std::string& csv_name, const std::string& title, const std::string& x,
                               const std::string& y, const std::string& series)
{
    std::ostringstream os;
    os << "#!/usr/bin/env python3\n"
       << "# Plots " << csv_name << "; requires matplotlib.\n"
       << "import csv\n"
       << "from collections import defaultdict\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "series = defaultdict(lambda: ([], []))\n"
       << "with open('" << csv_name << "') as f:\n"
       << "    for row in csv.DictReader(f):\n"
       << "        xs, ys = series['" << series << "=' + row['" << series << "']]\n"
       << "        xs.append(float(row['" << x << "']))\n"
       << "        ys.append(float(row['" << y << "']))\n\n"
       << "for label, (xs, ys) in sorted(series.items()):\n"
       << "    plt.plot(xs, ys, label=label)\n"
       << "plt.xlabel('" << x << "')\n"
       << "plt.ylabel('" << y << "')\n"
       << "plt.title('" << title << "')\n"
       << "plt.legend()\n"
       << "plt.grid(True)\n"
       << "plt.savefig('" << csv_name << ".png', dpi=150)\n";
    return os.str();
}

} // namespace detail

// --- Individual experiments -------------------------------------------------

/// Worst-case angular error of PS-only beams vs intended angle, one curve
/// per fractional bandwidth.
inline ExperimentResult run_squint_error(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& p = config.experiment;
    if (p.squint_fbw.empty())
        throw config_error("squint-error: no fractional bandwidths configured");

    ExperimentResult res;
    res.name = "squint-error";
    std::string csv = detail::out_path(out_dir, "squint_error.csv");
    CsvWriter w(csv, {"fbw", "angle_deg", "max_error_deg"});

    double largest_fbw = 0.0;
    double peak_at_largest = 0.0;
    for (double fbw : p.squint_fbw) {
        double peak = 0.0;
        for (double a = 0.0; a <= p.squint_max_angle_deg + 1e-9; a += p.squint_angle_step_deg) {
            double err = rad2deg(max_angular_error(deg2rad(a), fbw));
            peak = std::max(peak, err);
            w.row({csv_num(fbw), csv_num(a), csv_num(err)});
        }
        if (fbw > largest_fbw) {
            largest_fbw = fbw;
            peak_at_largest = peak;
        }
    }
    res.metrics["largest_fbw"] = largest_fbw;
    res.metrics["peak_error_deg"] = peak_at_largest;
    res.files.push_back(csv);

    std::string script = detail::out_path(out_dir, "plot_squint_error.py");
    detail::write_text_file(script, detail::plot_script("squint_error.csv", "Max angular error of PS beams",
                                                        "angle_deg", "max_error_deg", "fbw"));
    res.files.push_back(script);
    return res;
}

/// Normalized PS beamforming gain vs normalized frequency for several array
/// sizes.
inline ExperimentResult run_gain_vs_freq(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& p = config.experiment;
    ExperimentResult res;
    res.name = "gain-vs-freq";
    std::string csv = detail::out_path(out_dir, "gain_vs_freq.csv");
    CsvWriter w(csv, {"n_elements", "normalized_freq", "gain_db"});

    double angle = deg2rad(p.gain_curve_angle_deg);
    double worst_dev = 0.0;
    for (int n : p.gain_curve_elements) {
        std::vector<double> grid(static_cast<std::size_t>(p.gain_curve_points));
        for (int i = 0; i < p.gain_curve_points; ++i)
            grid[static_cast<std::size_t>(i)] =
                config.carrier_hz *
                (1.0 - p.gain_curve_span / 2.0 +
                 p.gain_curve_span * static_cast<double>(i) / static_cast<double>(p.gain_curve_points - 1));
        std::vector<double> gain = gain_vs_frequency_curve(n, angle, grid, config.carrier_hz);
        for (int i = 0; i < p.gain_curve_points; ++i)
            w.row({csv_num(n), csv_num(grid[static_cast<std::size_t>(i)] / config.carrier_hz),
                   csv_num(mag2db(std::max(gain[static_cast<std::size_t>(i)], 1e-12)))});

        double measured = measure_fbw_3db(n, angle, config.carrier_hz);
        double formula = fractional_bandwidth_3db(n, angle);
        res.metrics["fbw_measured_n" + std::to_string(n)] = measured;
        res.metrics["fbw_formula_n" + std::to_string(n)] = formula;
        worst_dev = std::max(worst_dev, std::abs(measured - formula) / formula);
    }
    res.metrics["worst_fbw_rel_dev"] = worst_dev;
    res.files.push_back(csv);

    std::string script = detail::out_path(out_dir, "plot_gain_vs_freq.py");
    detail::write_text_file(script, detail::plot_script("gain_vs_freq.csv", "PS gain vs normalized frequency",
                                                        "normalized_freq", "gain_db", "n_elements"));
    res.files.push_back(script);
    return res;
}

/// Frequency->angle map of the configured rainbow codebook plus a dense
/// frequency-angle gain map for plotting.
inline ExperimentResult run_codebook_map(const ScenarioConfig& config, const std::string& out_dir)
{
    AssembledScenario s = assemble_scenario(config);
    const auto& book = s.book;

    ExperimentResult res;
    res.name = "codebook-map";
    std::string csv = detail::out_path(out_dir, "codebook_map.csv");
    CsvWriter w(csv, {"subcarrier_index", "baseband_freq_hz", "angle_deg", "direction_group"});
    for (int m = 0; m < book.ofdm.loaded_count(); ++m)
        w.row({csv_num(book.ofdm.loaded_indices[static_cast<std::size_t>(m)]), csv_num(book.baseband_hz(m)),
               csv_num(rad2deg(book.angle_of(m))), csv_num(book.group_of(m))});
    res.files.push_back(csv);

    // Dense gain map and a beam-pattern argmax cross-check of the map.
    const int n_angles = config.experiment.codebook_map_angles;
    std::string map_csv = detail::out_path(out_dir, "codebook_gainmap.csv");
    CsvWriter wm(map_csv, {"baseband_freq_hz", "angle_deg", "gain_db"});
    double worst_oracle_err = 0.0;
    for (int m = 0; m < book.ofdm.loaded_count(); ++m) {
        double f_abs = config.carrier_hz + book.baseband_hz(m);
        double best_gain = -1.0;
        double best_angle = 0.0;
        for (int i = 0; i < n_angles; ++i) {
            double a = -pi / 2.0 + pi * static_cast<double>(i) / static_cast<double>(n_angles - 1);
            double g = beamforming_gain(book.taps, s.rx_geometry, a, f_abs, config.response_model_enum(),
                                        book.delay_model);
            wm.row({csv_num(book.baseband_hz(m)), csv_num(rad2deg(a)), csv_num(mag2db(std::max(g, 1e-12)))});
            if (g > best_gain) {
                best_gain = g;
                best_angle = a;
            }
        }
        worst_oracle_err = std::max(worst_oracle_err, std::abs(rad2deg(best_angle - book.angle_of(m))));
    }
    res.files.push_back(map_csv);

    res.metrics["num_directions"] = book.num_directions();
    res.metrics["diversity"] = book.diversity;
    res.metrics["delta_tau_ns"] = book.delta_tau_s * 1e9;
    res.metrics["max_delay_ns"] = book.max_delay_s() * 1e9;
    res.metrics["argmax_map_err_deg"] = worst_oracle_err;

    std::string script = detail::out_path(out_dir, "plot_codebook_map.py");
    detail::write_text_file(script, detail::plot_script("codebook_map.csv", "Rainbow codebook frequency-angle map",
                                                        "baseband_freq_hz", "angle_deg", "direction_group"));
    res.files.push_back(script);
    return res;
}

/// RMSE sensitivity of both estimators to gain, phase and delay errors
/// (delay under both the baseband and the RF tap model).
inline ExperimentResult run_impairment_sweep(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& p = config.experiment;
    ExperimentResult res;
    res.name = "impairment-sweep";
    std::string csv = detail::out_path(out_dir, "impairment_sweep.csv");
    CsvWriter w(csv, {"sigma_value", "unit", "algorithm", "rmse_deg"});

    auto emit = [&w](const std::vector<SweepPoint>& pts, const char* unit, double scale) {
        for (const auto& pt : pts) {
            w.row({csv_num(pt.grid_value * scale), unit, "coarse", csv_num(pt.coarse_rmse_deg)});
            w.row({csv_num(pt.grid_value * scale), unit, "refined", csv_num(pt.refined_rmse_deg)});
        }
    };

    auto gain_pts = sensitivity_sweep(config, SweepAxis::gain, p.impair_gain_grid_db, config.trials,
                                      config.base_seed);
    emit(gain_pts, "dB", 1.0);

    std::vector<double> phase_rad;
    for (double d : p.impair_phase_grid_deg)
        phase_rad.push_back(deg2rad(d));
    auto phase_pts = sensitivity_sweep(config, SweepAxis::phase, phase_rad, config.trials, config.base_seed);
    for (auto& pt : phase_pts)
        pt.grid_value = rad2deg(pt.grid_value);
    emit(phase_pts, "deg", 1.0);

    std::vector<double> delay_s;
    for (double ps : p.impair_delay_grid_ps)
        delay_s.push_back(ps * 1e-12);
    ScenarioConfig bb = config;
    bb.delay_model = "baseband";
    auto delay_pts = sensitivity_sweep(bb, SweepAxis::delay, delay_s, config.trials, config.base_seed);
    emit(delay_pts, "ps_baseband", 1e12);

    std::vector<double> delay_rf_s;
    for (double ps : p.impair_delay_rf_grid_ps)
        delay_rf_s.push_back(ps * 1e-12);
    ScenarioConfig rf = config;
    rf.delay_model = "rf";
    auto delay_rf_pts = sensitivity_sweep(rf, SweepAxis::delay, delay_rf_s, config.trials, config.base_seed);
    emit(delay_rf_pts, "ps_rf", 1e12);

    res.metrics["coarse_baseline_deg"] = gain_pts.front().coarse_rmse_deg;
    res.metrics["refined_baseline_deg"] = gain_pts.front().refined_rmse_deg;
    res.metrics["refined_max_gain_axis_deg"] = gain_pts.back().refined_rmse_deg;
    res.metrics["refined_max_phase_axis_deg"] = phase_pts.back().refined_rmse_deg;
    res.metrics["refined_max_delay_bb_deg"] = delay_pts.back().refined_rmse_deg;
    res.metrics["refined_max_delay_rf_deg"] = delay_rf_pts.back().refined_rmse_deg;
    res.files.push_back(csv);

    std::string script = detail::out_path(out_dir, "plot_impairment_sweep.py");
    detail::write_text_file(script, detail::plot_script("impairment_sweep.csv", "Impact of hardware errors",
                                                        "sigma_value", "rmse_deg", "unit"));
    res.files.push_back(script);
    return res;
}

namespace detail {

inline std::pair<double, double> bootstrap_gap_ci(const std::vector<double>& sparse,
                                                  const std::vector<double>& full, double level, int resamples,
                                                  std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::size_t> pick_sparse(0, sparse.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_full(0, full.size() - 1);
    std::vector<double> gaps(static_cast<std::size_t>(resamples));
    std::vector<double> rs(sparse.size());
    std::vector<double> rf(full.size());
    for (int b = 0; b < resamples; ++b) {
        for (auto& x : rs)
            x = sparse[pick_sparse(rng)];
        for (auto& x : rf)
            x = full[pick_full(rng)];
        gaps[static_cast<std::size_t>(b)] = papr_at_ccdf(rf, level) - papr_at_ccdf(rs, level);
    }
    std::sort(gaps.begin(), gaps.end());
    auto lo = static_cast<std::size_t>(0.025 * static_cast<double>(resamples));
    auto hi = static_cast<std::size_t>(0.975 * static_cast<double>(resamples));
    hi = std::min(hi, gaps.size() - 1);
    return {gaps[lo], gaps[hi]};
}

} // namespace detail

/// Empirical PAPR CCDF of the sparse training waveform against a fully
/// loaded one, for both pilot constellations.
inline ExperimentResult run_papr_ccdf(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& p = config.experiment;
    if (p.papr_trials < 1000)
        throw config_error("papr-ccdf: need at least 1000 trials");

    ExperimentResult res;
    res.name = "papr-ccdf";

    auto make_spec = [&config](Constellation cst, int loaded) {
        OfdmSpec spec;
        spec.m_total = config.m_total;
        spec.loaded_indices = uniform_loaded_indices(config.m_total, loaded);
        spec.bandwidth_hz = config.bandwidth_hz;
        spec.cp_len = config.cp_len;
        spec.constellation = cst;
        return spec;
    };

    auto run_pass = [&](const std::string& file, int oversample) {
        std::string csv = detail::out_path(out_dir, file);
        CsvWriter w(csv, {"papr_db", "ccdf", "constellation", "loaded_count"});
        std::map<std::string, std::vector<double>> samples;
        for (Constellation cst : {Constellation::bpsk, Constellation::qpsk}) {
            for (int loaded : {config.loaded_count, config.m_total}) {
                OfdmSpec spec = make_spec(cst, loaded);
                auto vals = papr_samples(spec, p.papr_trials, config.base_seed, true, oversample);
                auto sorted = vals;
                std::sort(sorted.begin(), sorted.end());
                auto n = static_cast<double>(sorted.size());
                for (std::size_t k = 0; k < sorted.size(); ++k)
                    w.row({csv_num(sorted[k]), csv_num((n - static_cast<double>(k + 1)) / n), to_string(cst),
                           csv_num(loaded)});
                samples[std::string(to_string(cst)) + "/" + std::to_string(loaded)] = std::move(vals);
            }
        }
        res.files.push_back(csv);
        return samples;
    };

    auto samples = run_pass("papr_ccdf.csv", 1);
    if (p.papr_oversample > 1)
        run_pass("papr_ccdf_oversampled.csv", p.papr_oversample);

    const auto& sparse = samples.at(std::string(to_string(config.constellation_enum())) + "/" +
                                    std::to_string(config.loaded_count));
    const auto& full = samples.at(std::string(to_string(config.constellation_enum())) + "/" +
                                  std::to_string(config.m_total));
    double gap = papr_at_ccdf(full, p.papr_ccdf_level) - papr_at_ccdf(sparse, p.papr_ccdf_level);
    auto [lo, hi] = detail::bootstrap_gap_ci(sparse, full, p.papr_ccdf_level, 200, config.base_seed);
    res.metrics["gap_db"] = gap;
    res.metrics["gap_ci_lo_db"] = lo;
    res.metrics["gap_ci_hi_db"] = hi;
    res.metrics["ccdf_level"] = p.papr_ccdf_level;

    std::string script = detail::out_path(out_dir, "plot_papr_ccdf.py");
    detail::write_text_file(script, detail::plot_script("papr_ccdf.csv", "PAPR CCDF, sparse vs fully loaded",
                                                        "papr_db", "ccdf", "loaded_count"));
    res.files.push_back(script);
    return res;
}

/// RMSE of single-symbol training and exhaustive sweeping across link
/// distances, with the detectability cutoff of the sparse waveform.
inline ExperimentResult run_distance_rmse(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& grid = config.experiment.distance_grid_m;
    if (grid.empty())
        throw config_error("distance-rmse: empty distance grid");

    ExperimentResult res;
    res.name = "distance-rmse";
    std::string csv = detail::out_path(out_dir, "distance_rmse.csv");
    CsvWriter w(csv, {"distance_m", "algorithm", "rmse_deg", "detect_rate"});

    double cutoff = -1.0;
    for (double d : grid) {
        ScenarioConfig at = config;
        at.distance_m = d;
        auto rows = compare_sweeping(at);
        for (const auto& r : rows)
            w.row({csv_num(d), r.method, csv_num(r.rmse_deg), csv_num(r.detect_rate)});
        if (cutoff < 0.0 && rows.front().detect_rate < 0.5)
            cutoff = d;
    }
    res.metrics["cutoff_distance_m"] = cutoff;
    res.files.push_back(csv);

    std::string script = detail::out_path(out_dir, "plot_distance_rmse.py");
    detail::write_text_file(script, detail::plot_script("distance_rmse.csv", "AoA RMSE vs distance",
                                                        "distance_m", "rmse_deg", "algorithm"));
    res.files.push_back(script);
    return res;
}

/// 3-dB beam contours of a planar rainbow array, one probe direction per
/// subcarrier.
inline ExperimentResult run_planar_contour(const ScenarioConfig& config, const std::string& out_dir)
{
    const auto& p = config.experiment;
    PlanarRainbowConfig plan;
    plan.n_x = p.planar_n_x;
    plan.n_y = p.planar_n_y;
    plan.delta_tau_x_s = p.planar_dtau_x_bw / config.bandwidth_hz;
    plan.delta_tau_y_s = p.planar_dtau_y_bw / config.bandwidth_hz;
    plan.subcarrier_count = p.planar_subcarriers;
    plan.validate();
    if (p.planar_subcarriers < 1)
        throw config_error("planar-contour: need at least one subcarrier");

    ArrayGeometry geo = ArrayGeometry::planar(plan.n_x, plan.n_y, config.carrier_hz, config.spacing_wavelengths);
    TapConfig taps = build_planar_taps(plan);

    ExperimentResult res;
    res.name = "planar-contour";
    std::string cells_csv = detail::out_path(out_dir, "planar_contour.csv");
    std::string peaks_csv = detail::out_path(out_dir, "planar_peaks.csv");
    CsvWriter wc(cells_csv, {"subcarrier_index", "baseband_freq_hz", "theta_deg", "phi_deg", "gain_db"});
    CsvWriter wp(peaks_csv,
                 {"subcarrier_index", "baseband_freq_hz", "peak_gain_db", "peak_theta_deg", "peak_phi_deg"});

    double peak_min = 1e300;
    double peak_max = 0.0;
    for (int m = 0; m < p.planar_subcarriers; ++m) {
        double f_b = (p.planar_subcarriers == 1)
                         ? 0.0
                         : -config.bandwidth_hz / 2.0 + config.bandwidth_hz * static_cast<double>(m) /
                                                            static_cast<double>(p.planar_subcarriers - 1);
        PlanarContour contour = planar_beam_contour(taps, geo, config.carrier_hz + f_b, p.planar_level_db,
                                                    p.planar_grid_theta, p.planar_grid_phi,
                                                    config.response_model_enum());
        for (const auto& cell : contour.cells)
            wc.row({csv_num(m), csv_num(f_b), csv_num(rad2deg(cell.theta_rad)), csv_num(rad2deg(cell.phi_rad)),
                    csv_num(mag2db(std::max(cell.gain, 1e-12)))});
        wp.row({csv_num(m), csv_num(f_b), csv_num(mag2db(std::max(contour.peak_gain, 1e-12))),
                csv_num(rad2deg(contour.peak_theta_rad)), csv_num(rad2deg(contour.peak_phi_rad))});
        peak_min = std::min(peak_min, contour.peak_gain);
        peak_max = std::max(peak_max, contour.peak_gain);
    }
    res.files.push_back(cells_csv);
    res.files.push_back(peaks_csv);
    res.metrics["peak_gain_min_db"] = mag2db(peak_min);
    res.metrics["peak_gain_max_db"] = mag2db(peak_max);
    res.metrics["max_delay_x_bw"] = plan.max_delay_s() * config.bandwidth_hz;
    res.metrics["meets_delay_range"] = plan.meets_delay_range(config.bandwidth_hz) ? 1.0 : 0.0;

    std::string script = detail::out_path(out_dir, "plot_planar_contour.py");
    detail::write_text_file(script, detail::plot_script("planar_contour.csv", "Planar rainbow 3dB contours",
                                                        "phi_deg", "theta_deg", "subcarrier_index"));
    res.files.push_back(script);
    return res;
}

/// Paired single-symbol training vs exhaustive sweeping at one operating
/// point.
inline ExperimentResult run_compare_sweeping(const ScenarioConfig& config, const std::string& out_dir)
{
    std::vector<TrialRecord> records;
    auto rows = compare_sweeping(config, config.experiment.dump_trials ? &records : nullptr);

    ExperimentResult res;
    res.name = "compare-sweeping";
    std::string csv = detail::out_path(out_dir, "compare_sweeping.csv");
    CsvWriter w(csv, {"method", "overhead_symbols", "rmse_deg", "detect_rate"});
    for (const auto& r : rows) {
        w.row({r.method, csv_num(r.overhead_symbols), csv_num(r.rmse_deg), csv_num(r.detect_rate)});
        res.metrics[r.method + "_rmse_deg"] = r.rmse_deg;
        res.metrics[r.method + "_overhead"] = r.overhead_symbols;
    }
    res.files.push_back(csv);

    if (config.experiment.dump_trials) {
        std::string trials_csv = detail::out_path(out_dir, "trials.csv");
        CsvWriter wt(trials_csv, {"trial", "truth_deg", "coarse_deg", "refined_deg", "snr_db", "sigma_a",
                                  "sigma_p", "sigma_t"});
        for (const auto& r : records)
            wt.row({csv_num(r.trial), csv_num(r.truth_deg), csv_num(r.coarse_deg), csv_num(r.refined_deg),
                    csv_num(config.snr_db), csv_num(config.sigma_gain_db), csv_num(config.sigma_phase_deg),
                    csv_num(config.sigma_delay_ps)});
        res.files.push_back(trials_csv);
    }

    std::string script = detail::out_path(out_dir, "plot_compare_sweeping.py");
    detail::write_text_file(script, detail::plot_script("compare_sweeping.csv", "Training method comparison",
                                                        "overhead_symbols", "rmse_deg", "method"));
    res.files.push_back(script);
    return res;
}

/// Run one experiment into `out_dir`; writes the resolved config next to
/// the outputs so every run is reproducible from its artifacts.
inline ExperimentResult run_experiment(const std::string& name, const ScenarioConfig& config,
                                       const std::string& out_dir)
{
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw config_error("unknown experiment: " + name);

    config.validate();
    std::filesystem::create_directories(out_dir);

    ExperimentResult res;
    if (name == "squint-error")
        res = run_squint_error(config, out_dir);
    else if (name == "gain-vs-freq")
        res = run_gain_vs_freq(config, out_dir);
    else if (name == "codebook-map")
        res = run_codebook_map(config, out_dir);
    else if (name == "impairment-sweep")
        res = run_impairment_sweep(config, out_dir);
    else if (name == "papr-ccdf")
        res = run_papr_ccdf(config, out_dir);
    else if (name == "distance-rmse")
        res = run_distance_rmse(config, out_dir);
    else if (name == "planar-contour")
        res = run_planar_contour(config, out_dir);
    else
        res = run_compare_sweeping(config, out_dir);

    std::string cfg_path = detail::out_path(out_dir, "config_resolved.json");
    detail::write_text_file(cfg_path, serialize_config(config));
    res.files.push_back(cfg_path);
    return res;
}

} // namespace rttd
