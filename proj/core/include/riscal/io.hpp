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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "riscal/fitter.hpp"
#include "riscal/synthlab.hpp"

namespace riscal {

// --- binary state strings ---------------------------------------------------

/// Row-major MSB-first hex encoding of a state vector (element 1 is the top
/// bit of the first digit). Needs a multiple of four elements.
std::string states_to_hex(const std::vector<std::uint8_t> &states);
std::vector<std::uint8_t> states_from_hex(const std::string &hex, std::size_t element_count);

// --- scene configuration (JSON) ---------------------------------------------

SceneGeometry load_scene(const std::filesystem::path &path);
void save_scene(const SceneGeometry &scene, const std::filesystem::path &path);

// --- coefficient profile (JSON) ----------------------------------------------

AlphaProfile load_profile(const std::filesystem::path &path);
void save_profile(const AlphaProfile &profile, const std::filesystem::path &path);

// --- configuration records (CSV) ----------------------------------------------
// columns: id,kind,nu_opt_deg,c_t_rad,element,tile,states_hex

void save_config_families(const std::vector<ConfigFamily> &families,
                          const std::filesystem::path &path);

/// Families as stored on disk; predicted values are not part of the format
/// (recompute_predicted restores them for a given scene).
std::vector<ConfigFamily> load_config_families(const std::filesystem::path &path,
                                               const SurfaceLayout &layout);

/// Re-evaluate the model prediction of every entry at the family's eval
/// angle (the sweep target, or eval_nu_deg for single-element families).
void recompute_predicted(std::vector<ConfigFamily> &families, const SceneGeometry &scene);

// --- measurements (CSV: config_id,nu_deg,re,im) -------------------------------

void save_measurements(const std::vector<ChannelSample> &samples,
                       const std::filesystem::path &path);
std::vector<ChannelSample> load_measurements(const std::filesystem::path &path);

// --- beampatterns (CSV: nu_deg,mag_db,mode) ------------------------------------

void save_beampatterns(const std::vector<Beampattern> &patterns,
                       const std::filesystem::path &path);
std::vector<Beampattern> load_beampatterns(const std::filesystem::path &path);

// --- fitted coefficients (JSON) -------------------------------------------------

struct AlphaFitFile {
    std::string policy = "single_tiled";
    std::vector<FitOutcome> fits;
};

void save_alpha_fits(const AlphaFitFile &file, const std::filesystem::path &path);
AlphaFitFile load_alpha_fits(const std::filesystem::path &path);

/// Successful fits as an angle-indexed table (for adapted beampatterns).
AlphaTable alpha_table_from_fits(const AlphaFitFile &file);

// --- run manifest (JSON) ----------------------------------------------------------

struct RunManifest {
    std::string tool = "riscal";
    std::string version;
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

void save_manifest(const RunManifest &manifest, const std::filesystem::path &path);
RunManifest load_manifest(const std::filesystem::path &path);

} // namespace riscal
