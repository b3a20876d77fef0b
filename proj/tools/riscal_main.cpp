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

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "riscal/channel.hpp"
#include "riscal/fitter.hpp"
#include "riscal/geometry.hpp"
#include "riscal/io.hpp"
#include "riscal/optimizer.hpp"
#include "riscal/synthlab.hpp"
#include "riscal/version.hpp"

namespace fs = std::filesystem;
using namespace riscal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::string fmt_target(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::string join_values(const std::vector<double> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ',';
        out += fmt_target(values[i]);
    }
    return out;
}

SceneGeometry load_scene_or_default(const std::string &path) {
    if (path.empty()) {
        SceneGeometry scene;
        scene.validate();
        return scene;
    }
    return load_scene(path);
}

std::vector<double> parse_grid_spec(const std::string &spec) {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3)
        throw data_error("grid spec '" + spec + "' is not start:step:stop");
    return angle_grid(start, step, stop);
}

std::vector<double> sorted_unique(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

const RisConfig &find_config(const std::vector<ConfigFamily> &families, const std::string &id) {
    for (const ConfigFamily &family : families)
        for (const FamilyEntry &entry : family.entries)
            if (entry.config.id == id)
                return entry.config;
    throw data_error("config id '" + id + "' not found in the config file");
}

// turn per-angle samples of one configuration into a measured pattern
Beampattern pattern_from_samples(const std::vector<ChannelSample> &samples) {
    Beampattern pattern;
    pattern.mode = "measured";
    for (const ChannelSample &sample : samples) {
        pattern.nu_deg.push_back(sample.nu_deg);
        pattern.mag_db.push_back(20.0 * std::log10(std::abs(sample.value)));
    }
    return pattern;
}

std::vector<ConfigFamily> generate_families(const SceneGeometry &scene,
                                            const std::vector<double> &targets, bool single,
                                            bool tiled) {
    std::vector<ConfigFamily> families;
    if (single) {
        const RisConfig baseline = all_off_config(scene.layout);
        families.push_back(single_element_family(scene, 0.0, baseline));
        if (tiled)
            families.push_back(single_element_tiled_family(scene, 0.0, baseline));
    }
    for (double target : targets) {
        families.push_back(offset_sweep(scene, target));
        if (tiled)
            families.push_back(offset_sweep_tiled(scene, target));
    }
    return families;
}

struct GenArgs {
    std::string scene_path;
    std::string out_path;
    std::vector<double> targets;
    bool single = false;
    bool tiled = false;
};

int cmd_gen_configs(const GenArgs &args) {
    if (!args.single && args.targets.empty()) {
        std::cerr << "gen-configs: nothing to generate; pass --single and/or --target\n";
        return kExitUsage;
    }
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const std::vector<ConfigFamily> families =
        generate_families(scene, sorted_unique(args.targets), args.single, args.tiled);

    std::size_t total = 0;
    for (const ConfigFamily &family : families) {
        std::cout << to_string(family.kind);
        if (family.target_nu_deg)
            std::cout << " (target " << fmt_target(*family.target_nu_deg) << " deg)";
        std::cout << ": " << family.size() << " configs\n";
        total += family.size();
    }
    save_config_families(families, args.out_path);
    std::cout << "wrote " << total << " configs to " << args.out_path << "\n";
    return kExitOk;
}

struct SynthArgs {
    std::string scene_path;
    std::string profile_path;
    std::string configs_path;
    std::string out_path;
    std::vector<double> nu_list;
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
};

int cmd_synth_measure(const SynthArgs &args) {
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const AlphaProfile profile =
        args.profile_path.empty() ? AlphaProfile{} : load_profile(args.profile_path);
    const std::vector<ConfigFamily> families =
        load_config_families(args.configs_path, scene.layout);

    NoiseSpec noise;
    noise.snr_db = args.snr_db;
    noise.seed = args.seed;
    const std::vector<ChannelSample> samples =
        synthesize_measurements(scene, families, profile, args.nu_list, noise);
    save_measurements(samples, args.out_path);
    std::cout << "wrote " << samples.size() << " samples to " << args.out_path << "\n";
    return kExitOk;
}

struct FitArgs {
    std::string scene_path;
    std::string measurements_path;
    std::string configs_path;
    std::string out_path;
    std::string policy = "single_tiled";
    std::optional<double> ridge;
};

int cmd_fit_alpha(const FitArgs &args) {
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const std::vector<ConfigFamily> families =
        load_config_families(args.configs_path, scene.layout);
    const std::vector<ChannelSample> samples = load_measurements(args.measurements_path);
    const RowPolicy policy = row_policy_from_string(args.policy);

    SolveOptions solve_options;
    if (args.ridge)
        solve_options.ridge = *args.ridge;

    const std::vector<FitOutcome> outcomes =
        fit_per_angle(families, group_by_angle(samples), scene, policy, solve_options);

    bool any_failed = false;
    bool any_numeric = false;
    for (const FitOutcome &outcome : outcomes) {
        if (outcome.ok()) {
            const FitReport &report = *outcome.report;
            std::cout << "nu " << fmt_target(outcome.nu_deg) << ": " << report.rows_used
                      << " rows, residual " << report.residual_norm << ", cond "
                      << report.condition_estimate << ", |alpha|>1 on "
                      << report.magnitude_violations.size() << " elements\n";
        } else {
            std::cerr << "nu " << fmt_target(outcome.nu_deg) << ": " << outcome.error_message
                      << "\n";
            any_failed = true;
            any_numeric = any_numeric || outcome.numeric_failure;
        }
    }

    AlphaFitFile file;
    file.policy = args.policy;
    file.fits = outcomes;
    save_alpha_fits(file, args.out_path);
    std::cout << "wrote " << outcomes.size() << " fits to " << args.out_path << "\n";
    if (any_failed)
        return any_numeric ? kExitNumeric : kExitData;
    return kExitOk;
}

struct PatternArgs {
    std::string scene_path;
    std::string configs_path;
    std::string config_id;
    std::string alpha_path;
    std::string grid_spec = "-80:1:80";
    std::string out_path;
};

int cmd_beampattern(const PatternArgs &args) {
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const std::vector<ConfigFamily> families =
        load_config_families(args.configs_path, scene.layout);
    const RisConfig &config = find_config(families, args.config_id);
    const std::vector<double> grid = parse_grid_spec(args.grid_spec);

    AlphaTable table;
    if (!args.alpha_path.empty()) {
        table = alpha_table_from_fits(load_alpha_fits(args.alpha_path));
        if (table.empty())
            throw data_error("alpha file '" + args.alpha_path + "' holds no successful fits");
    }
    const Beampattern pattern =
        beampattern(scene, config, grid, table.empty() ? nullptr : &table);
    save_beampatterns({pattern}, args.out_path);
    std::cout << "wrote " << pattern.nu_deg.size() << " " << pattern.mode << " points to "
              << args.out_path << "\n";
    return kExitOk;
}

struct CompareArgs {
    std::string scene_path;
    std::string configs_path;
    std::string config_id;
    std::string measured_path;
    std::string alpha_path;
    std::string out_path;
    std::string summary_path;
    std::string grid_spec; // empty = use the measured grid
    double target_deg = 0.0;
};

struct CompareResult {
    double rmse_simulated = 0.0;
    double rmse_simulated_mainlobe = 0.0;
    std::optional<double> rmse_adapted;
    std::optional<double> rmse_adapted_mainlobe;
    std::size_t grid_points = 0;
};

CompareResult run_compare(const SceneGeometry &scene, const RisConfig &config,
                          const Beampattern &measured_in, const AlphaTable *table,
                          double target_deg, std::vector<Beampattern> &patterns_out) {
    const Beampattern simulated = beampattern(scene, config, measured_in.nu_deg);
    Beampattern measured = measured_in;
    measured.mode = "measured";

    CompareResult result;
    result.grid_points = simulated.nu_deg.size();
    result.rmse_simulated = rmse_db(simulated, measured);
    result.rmse_simulated_mainlobe = rmse_db(simulated, measured, target_deg);

    patterns_out.push_back(measured);
    patterns_out.push_back(simulated);
    if (table != nullptr && !table->empty()) {
        const Beampattern adapted = beampattern(scene, config, measured.nu_deg, table);
        result.rmse_adapted = rmse_db(adapted, measured);
        result.rmse_adapted_mainlobe = rmse_db(adapted, measured, target_deg);
        patterns_out.push_back(adapted);
    }
    return result;
}

void write_compare_summary(const CompareResult &result, double target_deg,
                           const fs::path &path) {
    std::ofstream out(path);
    if (!out)
        throw data_error("cannot open '" + path.string() + "' for writing");
    out << "{\n";
    out << "  \"target_deg\": " << fmt_target(target_deg) << ",\n";
    out << "  \"grid_points\": " << result.grid_points << ",\n";
    out << "  \"rmse_simulated_db\": " << result.rmse_simulated << ",\n";
    out << "  \"rmse_simulated_mainlobe_db\": " << result.rmse_simulated_mainlobe;
    if (result.rmse_adapted) {
        out << ",\n  \"rmse_adapted_db\": " << *result.rmse_adapted << ",\n";
        out << "  \"rmse_adapted_mainlobe_db\": " << *result.rmse_adapted_mainlobe;
    }
    out << "\n}\n";
}

void print_compare_summary(const CompareResult &result) {
    std::cout << "rmse simulated vs measured: " << result.rmse_simulated << " dB (main lobe "
              << result.rmse_simulated_mainlobe << " dB)\n";
    if (result.rmse_adapted)
        std::cout << "rmse adapted vs measured:   " << *result.rmse_adapted << " dB (main lobe "
                  << *result.rmse_adapted_mainlobe << " dB)\n";
}

int cmd_compare(const CompareArgs &args) {
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const std::vector<ConfigFamily> families =
        load_config_families(args.configs_path, scene.layout);
    const RisConfig &config = find_config(families, args.config_id);

    const std::vector<Beampattern> patterns = load_beampatterns(args.measured_path);
    const auto it = std::find_if(patterns.begin(), patterns.end(),
                                 [](const Beampattern &p) { return p.mode == "measured"; });
    if (it == patterns.end())
        throw data_error("no rows with mode 'measured' in '" + args.measured_path + "'");

    Beampattern measured = *it;
    if (!args.grid_spec.empty()) {
        const std::vector<double> grid = parse_grid_spec(args.grid_spec);
        if (measured.nu_deg != grid) {
            std::cerr << "warning: measured grid differs from --grid; resampling by nearest "
                         "neighbour\n";
            measured = resample_nearest(measured, grid);
        }
    }

    AlphaTable table;
    if (!args.alpha_path.empty())
        table = alpha_table_from_fits(load_alpha_fits(args.alpha_path));

    std::vector<Beampattern> out_patterns;
    const CompareResult result = run_compare(scene, config, measured,
                                             table.empty() ? nullptr : &table,
                                             args.target_deg, out_patterns);
    save_beampatterns(out_patterns, args.out_path);
    if (!args.summary_path.empty())
        write_compare_summary(result, args.target_deg, args.summary_path);
    print_compare_summary(result);
    return kExitOk;
}

struct PipelineArgs {
    std::string scene_path;
    std::string profile_path;
    std::string measurements_path; // non-empty switches to ingest mode
    std::string out_dir;
    std::vector<double> targets{0.0, 30.0, 60.0};
    std::string grid_spec = "-80:1:80";
    std::vector<double> fit_nu; // empty = use the grid
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
    std::string policy = "single_tiled";
};

int cmd_pipeline(const PipelineArgs &args) {
    const bool ingest = !args.measurements_path.empty();
    const SceneGeometry scene = load_scene_or_default(args.scene_path);
    const AlphaProfile profile =
        args.profile_path.empty() ? AlphaProfile{} : load_profile(args.profile_path);
    const std::vector<double> targets = sorted_unique(args.targets);
    if (targets.empty())
        throw data_error("pipeline needs at least one target angle");
    const std::vector<double> grid = parse_grid_spec(args.grid_spec);
    const std::vector<double> fit_nu = args.fit_nu.empty() ? grid : sorted_unique(args.fit_nu);
    const RowPolicy policy = row_policy_from_string(args.policy);

    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);

    RunManifest manifest;
    manifest.version = kVersion;
    manifest.subcommand = "pipeline";
    manifest.parameters = {
        {"mode", ingest ? "ingest" : "synthetic"},
        {"targets", join_values(targets)},
        {"grid", args.grid_spec},
        {"fit_nu", args.fit_nu.empty() ? std::string("grid") : join_values(fit_nu)},
        {"snr_db", args.snr_db ? fmt_target(*args.snr_db) : std::string("none")},
        {"seed", std::to_string(args.seed)},
        {"policy", args.policy},
    };
    if (!args.scene_path.empty())
        manifest.inputs.push_back(args.scene_path);
    if (!args.profile_path.empty())
        manifest.inputs.push_back(args.profile_path);
    if (ingest)
        manifest.inputs.push_back(args.measurements_path);

    NoiseSpec noise;
    noise.snr_db = args.snr_db;
    noise.seed = args.seed;

    // stage 1: configuration families
    const std::vector<ConfigFamily> families = generate_families(scene, targets, true, true);
    const fs::path configs_path = out_dir / "configs.csv";
    save_config_families(families, configs_path);
    manifest.outputs.push_back(configs_path.filename().string());
    std::cout << "[1/4] configs: " << configs_path.string() << "\n";

    // stage 2: fit measurements, synthesized or ingested
    std::vector<ChannelSample> fit_samples;
    if (ingest) {
        fit_samples = load_measurements(args.measurements_path);
        std::cout << "[2/4] measurements: ingested " << fit_samples.size() << " samples\n";
    } else {
        std::vector<ConfigFamily> fit_families;
        for (const ConfigFamily &family : families) {
            const bool single_kind = family.kind == FamilyKind::single_element ||
                                     family.kind == FamilyKind::single_element_tiled;
            if (policy == RowPolicy::full_stack || single_kind)
                fit_families.push_back(family);
        }
        fit_samples = synthesize_measurements(scene, fit_families, profile, fit_nu, noise);
        const fs::path measurements_path = out_dir / "measurements.csv";
        save_measurements(fit_samples, measurements_path);
        manifest.outputs.push_back(measurements_path.filename().string());
        std::cout << "[2/4] measurements: " << fit_samples.size() << " samples\n";
    }

    // stage 3: per-angle coefficient fits
    const std::vector<FitOutcome> outcomes =
        fit_per_angle(families, group_by_angle(fit_samples), scene, policy);
    for (const FitOutcome &outcome : outcomes) {
        if (outcome.ok())
            continue;
        const std::string what =
            "fit at nu " + fmt_target(outcome.nu_deg) + ": " + outcome.error_message;
        if (outcome.numeric_failure)
            throw numeric_error(what);
        throw data_error(what);
    }
    AlphaFitFile fit_file;
    fit_file.policy = args.policy;
    fit_file.fits = outcomes;
    const fs::path alpha_path = out_dir / "alpha.json";
    save_alpha_fits(fit_file, alpha_path);
    manifest.outputs.push_back(alpha_path.filename().string());
    const AlphaTable table = alpha_table_from_fits(fit_file);
    std::cout << "[3/4] fits: " << outcomes.size() << " angles\n";

    // stage 4: beampattern comparison per target
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const ConfigFamily *sweep = nullptr;
        for (const ConfigFamily &family : families)
            if (family.kind == FamilyKind::offset_sweep &&
                family.target_nu_deg == targets[i])
                sweep = &family;
        const BestOffset best = best_offset(*sweep);

        Beampattern measured;
        if (ingest) {
            std::vector<ChannelSample> best_samples;
            for (const ChannelSample &sample : fit_samples)
                if (sample.config_id == best.config.id)
                    best_samples.push_back(sample);
            if (best_samples.empty())
                throw data_error("ingested data holds no measurements of config '" +
                                 best.config.id + "' for the target comparison");
            std::sort(best_samples.begin(), best_samples.end(),
                      [](const ChannelSample &a, const ChannelSample &b) {
                          return a.nu_deg < b.nu_deg;
                      });
            measured = pattern_from_samples(best_samples);
        } else {
            ConfigFamily probe;
            probe.kind = FamilyKind::offset_sweep;
            probe.target_nu_deg = targets[i];
            probe.eval_nu_deg = targets[i];
            probe.entries.push_back(FamilyEntry{best.config, best.predicted, best.c_t_rad,
                                                std::nullopt, std::nullopt, false});
            measured = pattern_from_samples(
                synthesize_measurements(scene, {probe}, profile, grid, noise));
        }

        std::vector<Beampattern> out_patterns;
        const CompareResult result =
            run_compare(scene, best.config, measured, &table, targets[i], out_patterns);

        const std::string tag = fmt_target(targets[i]);
        const fs::path compare_path = out_dir / ("compare_" + tag + ".csv");
        const fs::path summary_path = out_dir / ("compare_" + tag + "_summary.json");
        save_beampatterns(out_patterns, compare_path);
        write_compare_summary(result, targets[i], summary_path);
        manifest.outputs.push_back(compare_path.filename().string());
        manifest.outputs.push_back(summary_path.filename().string());
        std::cout << "[4/4] target " << tag << ": ";
        print_compare_summary(result);
    }

    const fs::path manifest_path = out_dir / "manifest.json";
    manifest.outputs.push_back(manifest_path.filename().string());
    save_manifest(manifest, manifest_path);
    std::cout << "manifest: " << manifest_path.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"turntable RIS link simulation, beam-steering configuration search, and "
                 "angle-dependent reflect-coefficient fitting"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App *gen = app.add_subcommand("gen-configs", "Generate configuration families");
    gen->add_option("--scene", gen_args.scene_path, "Scene JSON (defaults to the built-in scene)");
    gen->add_option("--target", gen_args.targets,
                    "Steering target in degrees (repeatable or comma-separated)")
        ->delimiter(',');
    gen->add_flag("--single", gen_args.single, "Include the single-element sweep");
    gen->add_flag("--tiled", gen_args.tiled, "Include 2x2-tiled variants");
    gen->add_option("--out", gen_args.out_path, "Output config CSV")->required();

    SynthArgs synth_args;
    CLI::App *synth = app.add_subcommand("synth-measure", "Synthesize channel measurements");
    synth->add_option("--scene", synth_args.scene_path, "Scene JSON");
    synth->add_option("--profile", synth_args.profile_path,
                      "Ground-truth profile JSON (defaults to the built-in profile)");
    synth->add_option("--configs", synth_args.configs_path, "Config CSV")->required();
    synth
        ->add_option("--nu", synth_args.nu_list,
                     "Measurement angles in degrees (repeatable or comma-separated)")
        ->required()
        ->delimiter(',');
    synth->add_option("--snr-db", synth_args.snr_db, "Per-sample SNR in dB (default: noiseless)");
    synth->add_option("--seed", synth_args.seed, "Noise seed");
    synth->add_option("--out", synth_args.out_path, "Output measurement CSV")->required();

    FitArgs fit_args;
    CLI::App *fit = app.add_subcommand("fit-alpha", "Fit reflect coefficients per angle");
    fit->add_option("--scene", fit_args.scene_path, "Scene JSON");
    fit->add_option("--measurements", fit_args.measurements_path, "Measurement CSV")->required();
    fit->add_option("--configs", fit_args.configs_path, "Config CSV")->required();
    fit->add_option("--policy", fit_args.policy, "Row policy: single|single_tiled|full");
    fit->add_option("--ridge", fit_args.ridge, "Explicit Tikhonov epsilon");
    fit->add_option("--out", fit_args.out_path, "Output alpha JSON")->required();

    PatternArgs pattern_args;
    CLI::App *pattern = app.add_subcommand("beampattern", "Evaluate a beampattern");
    pattern->add_option("--scene", pattern_args.scene_path, "Scene JSON");
    pattern->add_option("--configs", pattern_args.configs_path, "Config CSV")->required();
    pattern->add_option("--config-id", pattern_args.config_id, "Configuration id")->required();
    pattern->add_option("--alpha", pattern_args.alpha_path,
                        "Alpha JSON for an adapted pattern (optional)");
    pattern->add_option("--grid", pattern_args.grid_spec, "Angle grid start:step:stop");
    pattern->add_option("--out", pattern_args.out_path, "Output beampattern CSV")->required();

    CompareArgs compare_args;
    CLI::App *compare = app.add_subcommand(
        "compare", "Compare measured, simulated, and adapted beampatterns");
    compare->add_option("--scene", compare_args.scene_path, "Scene JSON");
    compare->add_option("--configs", compare_args.configs_path, "Config CSV")->required();
    compare->add_option("--config-id", compare_args.config_id, "Configuration id")->required();
    compare->add_option("--measured", compare_args.measured_path,
                        "Measured beampattern CSV (mode 'measured')")
        ->required();
    compare->add_option("--alpha", compare_args.alpha_path, "Alpha JSON (optional)");
    compare->add_option("--target", compare_args.target_deg,
                        "Steering target for the main-lobe window")
        ->required();
    compare->add_option("--grid", compare_args.grid_spec,
                        "Override grid start:step:stop (measured data is resampled)");
    compare->add_option("--out", compare_args.out_path, "Output comparison CSV")->required();
    compare->add_option("--summary", compare_args.summary_path, "Output summary JSON (optional)");

    PipelineArgs pipeline_args;
    CLI::App *pipeline =
        app.add_subcommand("pipeline", "Full synthetic run: configs, measurements, fit, compare");
    pipeline->add_option("--scene", pipeline_args.scene_path, "Scene JSON");
    CLI::Option *pipe_profile = pipeline->add_option(
        "--profile", pipeline_args.profile_path, "Ground-truth profile JSON (synthetic mode)");
    pipeline
        ->add_option("--measurements", pipeline_args.measurements_path,
                     "Recorded measurement CSV (switches to ingest mode)")
        ->excludes(pipe_profile);
    pipeline
        ->add_option("--targets", pipeline_args.targets,
                     "Steering targets in degrees (repeatable or comma-separated)")
        ->delimiter(',');
    pipeline->add_option("--grid", pipeline_args.grid_spec, "Comparison grid start:step:stop");
    pipeline
        ->add_option("--fit-nu", pipeline_args.fit_nu,
                     "Angles for coefficient fits (default: the grid)")
        ->delimiter(',');
    pipeline->add_option("--snr-db", pipeline_args.snr_db, "Per-sample SNR in dB");
    pipeline->add_option("--seed", pipeline_args.seed, "Noise seed");
    pipeline->add_option("--policy", pipeline_args.policy, "Row policy: single|single_tiled|full");
    pipeline->add_option("--out", pipeline_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen_configs(gen_args);
        if (synth->parsed())
            return cmd_synth_measure(synth_args);
        if (fit->parsed())
            return cmd_fit_alpha(fit_args);
        if (pattern->parsed())
            return cmd_beampattern(pattern_args);
        if (compare->parsed())
            return cmd_compare(compare_args);
        if (pipeline->parsed())
            return cmd_pipeline(pipeline_args);
    } catch (const numeric_error &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const data_error &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
