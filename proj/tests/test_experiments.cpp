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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rttd/experiments.hpp"

using namespace rttd;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Parse a written CSV back into rows of cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path)
{
    std::vector<std::vector<std::string>> rows;
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

ScenarioConfig small_mc_config()
{
    ScenarioConfig c;
    c.loaded_count = 64;
    c.diversity = 4;
    c.dictionary_size = 128;
    c.trials = 20;
    c.experiment.impair_gain_grid_db = {0.0, 2.5};
    c.experiment.impair_phase_grid_deg = {0.0, 30.0};
    c.experiment.impair_delay_grid_ps = {0.0, 125.0};
    c.experiment.impair_delay_rf_grid_ps = {0.0, 1.5};
    return c;
}

} // namespace

TEST_CASE("config serialization round-trips exactly")
{
    ScenarioConfig c;
    CHECK(parse_config(serialize_config(c)) == c);

    c.rotation_deg = 7.3;
    c.snr_db = -2.5;
    c.base_seed = 987654321;
    c.pathloss_model = "log_distance";
    c.experiment.distance_grid_m = {10.0, 33.3};
    CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("config parsing reports failures as config errors")
{
    CHECK_THROWS_AS(parse_config("{ not json"), config_error);
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), config_error);

    ScenarioConfig c;
    c.loaded_count = 100; // does not divide 4096
    CHECK_THROWS_AS(c.validate(), config_error);

    c = ScenarioConfig{};
    c.diversity = 5; // does not divide 128
    CHECK_THROWS_AS(c.validate(), config_error);

    c = ScenarioConfig{};
    c.constellation = "64qam";
    CHECK_THROWS_AS(c.validate(), config_error);
}

TEST_CASE("config overrides address nested fields")
{
    ScenarioConfig c;
    apply_override(c, "budget.distance_m=55.5");
    CHECK(c.distance_m == 55.5);

    apply_override(c, "codebook.delay_model=rf");
    CHECK(c.delay_model == "rf");

    apply_override(c, "run.trials=17");
    CHECK(c.trials == 17);

    apply_override(c, "experiment.squint_fbw=[0.1,0.3]");
    CHECK(c.experiment.squint_fbw == std::vector<double>{0.1, 0.3});

    CHECK_THROWS_AS(apply_override(c, "nonsense"), config_error);
    CHECK_THROWS_AS(apply_override(c, "budget.unknown_key=1"), config_error);
    CHECK_THROWS_AS(apply_override(c, "run.trials=notanumber"), config_error);
}

TEST_CASE("unknown experiment names are config errors")
{
    ScenarioConfig c;
    CHECK_THROWS_AS(run_experiment("beam-me-up", c, "test_out_unknown"), config_error);
}

TEST_CASE("codebook-map experiment writes the map and validates it against the beam pattern")
{
    ScenarioConfig c = default_config("codebook-map");
    c.experiment.codebook_map_angles = 181;
    auto res = run_experiment("codebook-map", c, "test_out_map");

    CHECK(res.metrics.at("num_directions") == 16.0);
    CHECK(res.metrics.at("diversity") == 1.0);
    CHECK(res.metrics.at("delta_tau_ns") == Approx(0.5));
    CHECK(res.metrics.at("argmax_map_err_deg") < 1.5);

    auto rows = read_csv("test_out_map/codebook_map.csv");
    REQUIRE(rows.size() == 17); // header + 16 subcarriers
    CHECK(rows[0] == std::vector<std::string>{"subcarrier_index", "baseband_freq_hz", "angle_deg",
                                              "direction_group"});
}

TEST_CASE("experiments are byte-identical under equal seeds")
{
    ScenarioConfig c = small_mc_config();

    auto r1 = run_experiment("impairment-sweep", c, "test_out_det1");
    auto r2 = run_experiment("impairment-sweep", c, "test_out_det2");
    CHECK(read_file("test_out_det1/impairment_sweep.csv") == read_file("test_out_det2/impairment_sweep.csv"));
    CHECK(read_file("test_out_det1/config_resolved.json") == read_file("test_out_det2/config_resolved.json"));

    ScenarioConfig other = c;
    other.base_seed = 2;
    run_experiment("impairment-sweep", other, "test_out_det3");
    CHECK(read_file("test_out_det1/impairment_sweep.csv") != read_file("test_out_det3/impairment_sweep.csv"));
}

TEST_CASE("summary metrics match the emitted CSV")
{
    ScenarioConfig c = small_mc_config();
    c.trials = 40;
    auto res = run_experiment("compare-sweeping", c, "test_out_cmp");

    auto rows = read_csv("test_out_cmp/compare_sweeping.csv");
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string& method = rows[i][0];
        double overhead = std::stod(rows[i][1]);
        double rmse_deg = std::stod(rows[i][2]);
        CHECK(res.metrics.at(method + "_overhead") == Approx(overhead));
        CHECK(res.metrics.at(method + "_rmse_deg") == Approx(rmse_deg).epsilon(1e-9));
    }

    // Single-symbol training against a D-symbol sweep.
    CHECK(res.metrics.at("ttd_coarse_overhead") == 1.0);
    CHECK(res.metrics.at("paa_sweep_overhead") == 16.0);
    CHECK(res.summary().find("compare-sweeping:") == 0);
}

TEST_CASE("squint-error experiment reproduces the worst-case error peak")
{
    ScenarioConfig c;
    auto res = run_experiment("squint-error", c, "test_out_squint");
    CHECK(res.metrics.at("largest_fbw") == 0.25);
    CHECK(res.metrics.at("peak_error_deg") > 20.0);
    CHECK(res.metrics.at("peak_error_deg") < 24.0);

    auto rows = read_csv("test_out_squint/squint_error.csv");
    REQUIRE(rows.size() > 100);
    double recomputed_peak = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::stod(rows[i][0]) == 0.25)
            recomputed_peak = std::max(recomputed_peak, std::stod(rows[i][2]));
    CHECK(recomputed_peak == Approx(res.metrics.at("peak_error_deg")).epsilon(1e-9));
}

TEST_CASE("per-trial dumps are consistent with the summary RMSE")
{
    ScenarioConfig c = small_mc_config();
    c.trials = 30;
    c.experiment.dump_trials = true;
    auto res = run_experiment("compare-sweeping", c, "test_out_trials");

    auto rows = read_csv("test_out_trials/trials.csv");
    REQUIRE(rows.size() == 31);
    CHECK(rows[0] == std::vector<std::string>{"trial", "truth_deg", "coarse_deg", "refined_deg", "snr_db",
                                              "sigma_a", "sigma_p", "sigma_t"});
    double acc = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double err = std::stod(rows[i][3]) - std::stod(rows[i][1]);
        acc += err * err;
    }
    double recomputed = std::sqrt(acc / 30.0);
    CHECK(recomputed == Approx(res.metrics.at("ttd_refined_rmse_deg")).epsilon(1e-8));
}

TEST_CASE("shipped default configs match the built-in defaults")
{
    for (const auto& name : experiment_names()) {
        std::string path = std::string(RTTD_SOURCE_DIR) + "/configs/" + name + ".json";
        ScenarioConfig shipped = load_config(path);
        CHECK(shipped == default_config(name));
    }
}

TEST_CASE("planar-contour experiment emits per-frequency peaks")
{
    ScenarioConfig c;
    c.experiment.planar_grid_theta = 31;
    c.experiment.planar_grid_phi = 61;
    auto res = run_experiment("planar-contour", c, "test_out_planar");
    CHECK(res.metrics.at("max_delay_x_bw") == Approx(10.0));
    CHECK(res.metrics.at("meets_delay_range") == 0.0);
    CHECK(res.metrics.at("peak_gain_min_db") < res.metrics.at("peak_gain_max_db"));

    auto rows = read_csv("test_out_planar/planar_peaks.csv");
    REQUIRE(rows.size() == 11); // header + 10 subcarriers
}
