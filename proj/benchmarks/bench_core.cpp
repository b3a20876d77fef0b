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

#include <benchmark/benchmark.h>

#include "riscal/fitter.hpp"
#include "riscal/optimizer.hpp"
#include "riscal/synthlab.hpp"

using namespace riscal;

static void BM_CascadedChannel(benchmark::State &state) {
    SceneGeometry scene;
    for (auto _ : state) {
        CascadedChannel casc = cascaded_channel(scene, 30.0);
        benchmark::DoNotOptimize(casc.values.data());
    }
}
BENCHMARK(BM_CascadedChannel);

static void BM_Beampattern(benchmark::State &state) {
    SceneGeometry scene;
    const RisConfig config = all_off_config(scene.layout);
    const std::vector<double> grid = angle_grid(-80.0, 1.0, 80.0);
    for (auto _ : state) {
        Beampattern pattern = beampattern(scene, config, grid);
        benchmark::DoNotOptimize(pattern.mag_db.data());
    }
}
BENCHMARK(BM_Beampattern);

static void BM_OffsetSweep(benchmark::State &state) {
    SceneGeometry scene;
    for (auto _ : state) {
        ConfigFamily family = offset_sweep(scene, 30.0);
        benchmark::DoNotOptimize(family.entries.data());
    }
}
BENCHMARK(BM_OffsetSweep);

static void BM_SolveAlpha(benchmark::State &state) {
    SceneGeometry scene;
    const RisConfig baseline = all_off_config(scene.layout);
    const std::vector<ConfigFamily> families{
        single_element_family(scene, 0.0, baseline),
        single_element_tiled_family(scene, 0.0, baseline)};
    const AlphaProfile profile;
    const std::vector<ChannelSample> samples =
        synthesize_measurements(scene, families, profile, {0.0});
    const CascadedChannel casc = cascaded_channel(scene, 0.0);
    BuildOptions options;
    options.policy = RowPolicy::single_plus_tiled;
    const LinearSystem system = build_system(families, samples, 0.0, casc, options);
    for (auto _ : state) {
        FitReport report = solve_alpha(system);
        benchmark::DoNotOptimize(report.alpha.alpha.data());
    }
}
BENCHMARK(BM_SolveAlpha);

BENCHMARK_MAIN();
