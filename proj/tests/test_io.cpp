// SPDX-License-Identifier: Apache-2.0
//
// riscal - turntable RIS link simulation and reflect-coefficient fitting
// Copyright (C) 2026 the riscal authors
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "riscal/io.hpp"

using namespace riscal;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory per test run
fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("riscal_io_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

SceneGeometry small_scene() {
    SceneGeometry scene;
    scene.layout.rows = 4;
    scene.layout.cols = 4;
    return scene;
}

} // namespace

TEST_CASE("hex state strings encode row-major msb-first") {
    std::vector<std::uint8_t> states(16, 0);
    states[0] = 1; // element 1 -> top bit of the first digit
    CHECK(states_to_hex(states) == "8000");

    states.assign(16, 0);
    states[15] = 1;
    CHECK(states_to_hex(states) == "0001");

    states.assign(16, 1);
    CHECK(states_to_hex(states) == "ffff");

    CHECK(states_from_hex("8000", 16) ==
          std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});

    CHECK_THROWS_AS(states_to_hex(std::vector<std::uint8_t>(13, 0)), data_error);
    CHECK_THROWS_AS(states_from_hex("8000", 32), data_error);
    CHECK_THROWS_AS(states_from_hex("80zz", 16), data_error);
}

TEST_CASE("hex encoding round-trips random state vectors") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> states(256);
        for (auto &s : states)
            s = static_cast<std::uint8_t>(rng() & 1);
        const std::string hex = states_to_hex(states);
        CHECK(hex.size() == 64);
        CHECK(states_from_hex(hex, 256) == states);
    }
}

TEST_CASE("scene files round-trip") {
    SceneGeometry scene = small_scene();
    scene.frequency_hz = 5.49e9;
    scene.tx_elevation_deg = 28.25;

    const fs::path path = scratch_dir() / "scene.json";
    save_scene(scene, path);
    const SceneGeometry loaded = load_scene(path);
    CHECK(loaded.layout.rows == scene.layout.rows);
    CHECK(loaded.layout.cols == scene.layout.cols);
    CHECK(loaded.layout.pitch_x_m == scene.layout.pitch_x_m);
    CHECK(loaded.layout.pitch_y_m == scene.layout.pitch_y_m);
    CHECK(loaded.tx_distance_m == scene.tx_distance_m);
    CHECK(loaded.tx_elevation_deg == scene.tx_elevation_deg);
    CHECK(loaded.rx_distance_m == scene.rx_distance_m);
    CHECK(loaded.frequency_hz == scene.frequency_hz);
}

TEST_CASE("scene loading errors are data errors") {
    CHECK_THROWS_AS(load_scene(scratch_dir() / "missing.json"), data_error);

    const fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(load_scene(bad), data_error);

    const fs::path wrong_type = scratch_dir() / "wrong.json";
    std::ofstream(wrong_type) << R"({"rows": "many"})";
    CHECK_THROWS_AS(load_scene(wrong_type), data_error);
}

TEST_CASE("partial scene files keep defaults for missing keys") {
    const fs::path path = scratch_dir() / "partial.json";
    std::ofstream(path) << R"({"rx_distance_m": 3.5})";
    const SceneGeometry loaded = load_scene(path);
    CHECK(loaded.rx_distance_m == 3.5);
    CHECK(loaded.layout.rows == 16);
    CHECK(loaded.frequency_hz == 5.53e9);
}

TEST_CASE("profile files round-trip") {
    AlphaProfile profile;
    profile.peak_db = -6.5;
    profile.edge_db = -20.0;
    profile.slope_max_rad_per_deg = 0.3;
    profile.phase_offsets_rad.assign(16, 0.0);
    profile.phase_offsets_rad[3] = 1.25;

    const fs::path path = scratch_dir() / "profile.json";
    save_profile(profile, path);
    const AlphaProfile loaded = load_profile(path);
    CHECK(loaded.peak_db == profile.peak_db);
    CHECK(loaded.edge_db == profile.edge_db);
    CHECK(loaded.slope_min_rad_per_deg == profile.slope_min_rad_per_deg);
    CHECK(loaded.slope_max_rad_per_deg == profile.slope_max_rad_per_deg);
    CHECK(loaded.phase_offsets_rad == profile.phase_offsets_rad);

    const fs::path inverted = scratch_dir() / "inverted.json";
    std::ofstream(inverted) << R"({"peak_db": -30, "edge_db": -7})";
    CHECK_THROWS_AS(load_profile(inverted), data_error);
}

TEST_CASE("config families round-trip through the csv format") {
    const SceneGeometry scene = small_scene();
    std::vector<ConfigFamily> families{
        single_element_family(scene, 0.0, all_off_config(scene.layout)),
        single_element_tiled_family(scene, 0.0, all_off_config(scene.layout)),
        offset_sweep(scene, 0.1),
        offset_sweep_tiled(scene, 0.1),
    };

    const fs::path path = scratch_dir() / "configs.csv";
    save_config_families(families, path);
    const std::vector<ConfigFamily> loaded = load_config_families(path, scene.layout);

    REQUIRE(loaded.size() == families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
        CHECK(loaded[f].kind == families[f].kind);
        CHECK(loaded[f].target_nu_deg == families[f].target_nu_deg);
        REQUIRE(loaded[f].size() == families[f].size());
        for (std::size_t i = 0; i < families[f].size(); ++i) {
            const FamilyEntry &original = families[f].entries[i];
            const FamilyEntry &restored = loaded[f].entries[i];
            CHECK(restored.config.id == original.config.id);
            CHECK(restored.config.states == original.config.states);
            CHECK(restored.c_t_rad == original.c_t_rad);
            CHECK(restored.element == original.element);
            CHECK(restored.tile == original.tile);
            CHECK(restored.duplicate == original.duplicate);
        }
    }

    // predictions are not stored but can be restored for a scene
    std::vector<ConfigFamily> refreshed = loaded;
    recompute_predicted(refreshed, scene);
    for (std::size_t f = 0; f < families.size(); ++f)
        for (std::size_t i = 0; i < families[f].size(); ++i)
            CHECK(refreshed[f].entries[i].predicted == families[f].entries[i].predicted);
}

TEST_CASE("config loading validates the header") {
    const fs::path path = scratch_dir() / "noheader.csv";
    std::ofstream(path) << "id,states\nx,00\n";
    CHECK_THROWS_AS(load_config_families(path, SurfaceLayout{}), data_error);
}

TEST_CASE("measurements round-trip with full precision") {
    std::vector<ChannelSample> samples;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        ChannelSample s;
        s.config_id = "cfg" + std::to_string(i);
        s.nu_deg = -60.0 + 7.3 * i;
        s.value = {value(rng) * 1e-6, value(rng) * 1e-6};
        samples.push_back(s);
    }

    const fs::path path = scratch_dir() / "meas.csv";
    save_measurements(samples, path);
    const std::vector<ChannelSample> loaded = load_measurements(path);
    REQUIRE(loaded.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(loaded[i].config_id == samples[i].config_id);
        CHECK(loaded[i].nu_deg == samples[i].nu_deg); // %.17g is lossless
        CHECK(loaded[i].value == samples[i].value);
    }

    CHECK_THROWS_AS(load_measurements(scratch_dir() / "missing.csv"), data_error);
}

TEST_CASE("beampattern files keep per-mode series") {
    Beampattern simulated;
    simulated.mode = "simulated";
    simulated.nu_deg = {-10.0, 0.0, 10.0};
    simulated.mag_db = {-120.0, -100.0, -118.5};
    Beampattern measured = simulated;
    measured.mode = "measured";
    measured.mag_db = {-121.0, -101.5, -119.0};

    const fs::path path = scratch_dir() / "pattern.csv";
    save_beampatterns({simulated, measured}, path);
    const std::vector<Beampattern> loaded = load_beampatterns(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].mode == "simulated");
    CHECK(loaded[0].nu_deg == simulated.nu_deg);
    CHECK(loaded[0].mag_db == simulated.mag_db);
    CHECK(loaded[1].mode == "measured");
    CHECK(loaded[1].mag_db == measured.mag_db);
}

TEST_CASE("alpha fit files round-trip including failures") {
    AlphaFitFile file;
    file.policy = "full";

    FitOutcome good;
    good.nu_deg = 0.0;
    FitReport report;
    report.alpha.nu_deg = 0.0;
    report.alpha.alpha = {{0.25, -0.5}, {1.125, 0.0}};
    report.residual_norm = 1.5e-9;
    report.condition_estimate = 42.0;
    report.rows_used = 20;
    report.ridge_used = 0.0;
    report.magnitude_violations = {2};
    good.report = report;

    FitOutcome bad;
    bad.nu_deg = 45.0;
    bad.error_message = "no usable rows";
    file.fits = {good, bad};

    const fs::path path = scratch_dir() / "alpha.json";
    save_alpha_fits(file, path);
    const AlphaFitFile loaded = load_alpha_fits(path);
    CHECK(loaded.policy == "full");
    REQUIRE(loaded.fits.size() == 2);
    REQUIRE(loaded.fits[0].ok());
    CHECK(loaded.fits[0].report->alpha.alpha == report.alpha.alpha);
    CHECK(loaded.fits[0].report->residual_norm == report.residual_norm);
    CHECK(loaded.fits[0].report->condition_estimate == report.condition_estimate);
    CHECK(loaded.fits[0].report->rows_used == report.rows_used);
    CHECK(loaded.fits[0].report->magnitude_violations == report.magnitude_violations);
    CHECK_FALSE(loaded.fits[1].ok());
    CHECK(loaded.fits[1].error_message == "no usable rows");

    const AlphaTable table = alpha_table_from_fits(loaded);
    REQUIRE(table.size() == 1); // the failed fit contributes nothing
    CHECK(table.at(0.0).alpha == report.alpha.alpha);
}

TEST_CASE("manifests list parameters, inputs, and outputs") {
    RunManifest manifest;
    manifest.version = "0.1.0";
    manifest.subcommand = "pipeline";
    manifest.parameters = {{"seed", "7"}, {"targets", "0,30"}};
    manifest.inputs = {"scene.json"};
    manifest.outputs = {"configs.csv", "alpha.json"};

    const fs::path path = scratch_dir() / "manifest.json";
    save_manifest(manifest, path);

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"subcommand\": \"pipeline\"") != std::string::npos);
    CHECK(text.find("\"targets\": \"0,30\"") != std::string::npos);
    CHECK(text.find("configs.csv") != std::string::npos);
    CHECK(text.find("alpha.json") != std::string::npos);

    const RunManifest loaded = load_manifest(path);
    CHECK(loaded.version == manifest.version);
    CHECK(loaded.subcommand == manifest.subcommand);
    CHECK(loaded.parameters == manifest.parameters);
    CHECK(loaded.inputs == manifest.inputs);
    CHECK(loaded.outputs == manifest.outputs);
}
