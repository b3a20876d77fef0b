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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "riscal/io.hpp"
#include "riscal/synthlab.hpp"

using namespace riscal;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("riscal_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string &args) {
    const std::string cmd =
        std::string(RISCAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_small_scene() {
    SceneGeometry scene;
    scene.layout.rows = 4;
    scene.layout.cols = 4;
    const fs::path path = scratch_dir() / "scene4.json";
    save_scene(scene, path);
    return path;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("gen-configs writes the single-element campaign") {
    const fs::path out = scratch_dir() / "single.csv";
    CHECK(run_cli("gen-configs --single --out " + out.string()) == 0);

    const std::vector<ConfigFamily> families = load_config_families(out, SurfaceLayout{});
    REQUIRE(families.size() == 1);
    CHECK(families[0].kind == FamilyKind::single_element);
    CHECK(families[0].size() == 256);
}

TEST_CASE("gen-configs without a family selection is a usage error") {
    CHECK(run_cli("gen-configs --out " + (scratch_dir() / "none.csv").string()) == 1);
}

TEST_CASE("gen-configs covers targets with tiled variants") {
    const fs::path scene = write_small_scene();
    const fs::path out = scratch_dir() / "full.csv";
    CHECK(run_cli("gen-configs --scene " + scene.string() +
                  " --target 0 --target 30 --single --tiled --out " + out.string()) == 0);

    SurfaceLayout layout;
    layout.rows = 4;
    layout.cols = 4;
    const std::vector<ConfigFamily> families = load_config_families(out, layout);
    REQUIRE(families.size() == 6);
    CHECK(families[0].kind == FamilyKind::single_element);
    CHECK(families[0].size() == 16);
    CHECK(families[1].kind == FamilyKind::single_element_tiled);
    CHECK(families[1].size() == 4);
    CHECK(families[2].kind == FamilyKind::offset_sweep);
    CHECK(families[2].size() == 360);
    CHECK(families[3].kind == FamilyKind::offset_sweep_tiled);
    CHECK(families[4].target_nu_deg == 30.0);
}

TEST_CASE("synthesize, fit, and recover through the command line") {
    const fs::path scene = write_small_scene();
    const fs::path configs = scratch_dir() / "fit_configs.csv";
    const fs::path measurements = scratch_dir() / "fit_meas.csv";
    const fs::path alpha = scratch_dir() / "fit_alpha.json";

    CHECK(run_cli("gen-configs --scene " + scene.string() + " --single --tiled --out " +
                  configs.string()) == 0);
    CHECK(run_cli("synth-measure --scene " + scene.string() + " --configs " +
                  configs.string() + " --nu 0 --nu 30 --out " + measurements.string()) == 0);
    CHECK(load_measurements(measurements).size() == 40); // (16 + 4) configs x 2 angles

    CHECK(run_cli("fit-alpha --scene " + scene.string() + " --configs " + configs.string() +
                  " --measurements " + measurements.string() +
                  " --policy single_tiled --out " + alpha.string()) == 0);

    const AlphaFitFile fits = load_alpha_fits(alpha);
    REQUIRE(fits.fits.size() == 2);
    const AlphaProfile profile;
    SurfaceLayout layout;
    layout.rows = 4;
    layout.cols = 4;
    for (const FitOutcome &outcome : fits.fits) {
        REQUIRE(outcome.ok());
        const AlphaVector truth = alpha_ground_truth(profile, layout, outcome.nu_deg);
        for (std::size_t i = 0; i < truth.alpha.size(); ++i)
            CHECK(std::abs(outcome.report->alpha.alpha[i] - truth.alpha[i]) <=
                  1e-8 * std::abs(truth.alpha[i]));
    }
}

TEST_CASE("missing input files exit with the data error code") {
    const fs::path scene = write_small_scene();
    const fs::path configs = scratch_dir() / "fit_configs.csv"; // exists from the fit test
    CHECK(run_cli("fit-alpha --scene " + scene.string() + " --configs " + configs.string() +
                  " --measurements " + (scratch_dir() / "nope.csv").string() + " --out " +
                  (scratch_dir() / "alpha_none.json").string()) == 2);
}

TEST_CASE("beampattern evaluates a stored configuration") {
    const fs::path scene = write_small_scene();
    const fs::path configs = scratch_dir() / "bp_configs.csv";
    const fs::path pattern = scratch_dir() / "bp.csv";
    CHECK(run_cli("gen-configs --scene " + scene.string() + " --single --out " +
                  configs.string()) == 0);
    CHECK(run_cli("beampattern --scene " + scene.string() + " --configs " + configs.string() +
                  " --config-id se_m001 --grid -10:5:10 --out " + pattern.string()) == 0);

    const std::vector<Beampattern> loaded = load_beampatterns(pattern);
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].mode == "simulated");
    CHECK(loaded[0].nu_deg == std::vector<double>{-10.0, -5.0, 0.0, 5.0, 10.0});

    CHECK(run_cli("beampattern --scene " + scene.string() + " --configs " + configs.string() +
                  " --config-id missing --grid -10:5:10 --out " + pattern.string()) == 2);
}

TEST_CASE("compare reports zero rmse for identical inputs") {
    const fs::path scene = write_small_scene();
    const fs::path configs = scratch_dir() / "cmp_configs.csv";
    const fs::path simulated = scratch_dir() / "cmp_sim.csv";
    const fs::path measured = scratch_dir() / "cmp_meas.csv";
    const fs::path out = scratch_dir() / "cmp_out.csv";
    const fs::path summary = scratch_dir() / "cmp_summary.json";

    CHECK(run_cli("gen-configs --scene " + scene.string() + " --single --out " +
                  configs.string()) == 0);
    CHECK(run_cli("beampattern --scene " + scene.string() + " --configs " + configs.string() +
                  " --config-id se_m001 --grid -20:5:20 --out " + simulated.string()) == 0);

    // relabel the simulated pattern as a measurement
    std::vector<Beampattern> patterns = load_beampatterns(simulated);
    patterns[0].mode = "measured";
    save_beampatterns(patterns, measured);

    CHECK(run_cli("compare --scene " + scene.string() + " --configs " + configs.string() +
                  " --config-id se_m001 --measured " + measured.string() +
                  " --target 0 --out " + out.string() + " --summary " + summary.string()) == 0);

    const std::string text = read_file(summary);
    CHECK(text.find("\"rmse_simulated_db\": 0") != std::string::npos);

    const std::vector<Beampattern> comparison = load_beampatterns(out);
    REQUIRE(comparison.size() == 2); // measured + simulated, no alpha given

    // a grid override resamples the measured pattern by nearest neighbour
    CHECK(run_cli("compare --scene " + scene.string() + " --configs " + configs.string() +
                  " --config-id se_m001 --measured " + measured.string() +
                  " --target 0 --grid -20:2:20 --out " + out.string()) == 0);
    const std::vector<Beampattern> resampled = load_beampatterns(out);
    REQUIRE(resampled.size() == 2);
    CHECK(resampled[0].nu_deg.size() == 21);
}

TEST_CASE("pipeline ingest mode consumes recorded measurements") {
    const fs::path scene = write_small_scene();
    const fs::path configs = scratch_dir() / "ingest_configs.csv";
    const fs::path measurements = scratch_dir() / "ingest_meas.csv";
    const fs::path out = scratch_dir() / "ingest_run";

    // record every configuration (sweeps included) at a few turntable angles
    CHECK(run_cli("gen-configs --scene " + scene.string() +
                  " --target 0 --single --tiled --out " + configs.string()) == 0);
    CHECK(run_cli("synth-measure --scene " + scene.string() + " --configs " +
                  configs.string() + " --nu -20,-10,0,10,20 --out " +
                  measurements.string()) == 0);

    CHECK(run_cli("pipeline --scene " + scene.string() + " --measurements " +
                  measurements.string() + " --targets 0 --grid -20:10:20 --out " +
                  out.string()) == 0);
    CHECK(fs::exists(out / "compare_0_summary.json"));
    const std::string summary = read_file(out / "compare_0_summary.json");
    CHECK(summary.find("rmse_adapted_db") != std::string::npos);

    // ingest mode with a missing measurement file fails in stage 2
    CHECK(run_cli("pipeline --scene " + scene.string() + " --measurements " +
                  (scratch_dir() / "void.csv").string() + " --targets 0 --out " +
                  (scratch_dir() / "ingest_fail").string()) == 2);
}

TEST_CASE("pipeline produces a deterministic, manifest-led run") {
    const fs::path scene = write_small_scene();
    const fs::path out1 = scratch_dir() / "run1";
    const fs::path out2 = scratch_dir() / "run2";

    const std::string common = "pipeline --scene " + scene.string() +
                               " --targets 0 --grid -20:10:20 --seed 3 --out ";
    CHECK(run_cli(common + out1.string()) == 0);
    CHECK(run_cli(common + out2.string()) == 0);

    for (const char *name : {"manifest.json", "configs.csv", "measurements.csv", "alpha.json",
                             "compare_0.csv", "compare_0_summary.json"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(out1 / name));
        CHECK(read_file(out1 / name) == read_file(out2 / name)); // byte-identical rerun
    }

    const AlphaFitFile fits = load_alpha_fits(out1 / "alpha.json");
    CHECK(fits.fits.size() == 5); // one fit per grid angle
    for (const FitOutcome &outcome : fits.fits)
        CHECK(outcome.ok());
}
