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

#include <optional>
#include <string>
#include <vector>

#include "riscal/channel.hpp"
#include "riscal/geometry.hpp"

namespace riscal {

/// Number of evenly distributed phase offsets swept per target angle.
inline constexpr std::size_t kOffsetCount = 360;

enum class FamilyKind {
    offset_sweep,
    single_element,
    single_element_tiled,
    offset_sweep_tiled,
};

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string &name);

struct FamilyEntry {
    RisConfig config;
    cdouble predicted{0.0, 0.0};        // model h_eff at the family's eval angle
    std::optional<double> c_t_rad;      // offset sweeps
    std::optional<std::size_t> element; // single-element families, 1-based
    std::optional<std::size_t> tile;    // tiled families, 1-based
    bool duplicate = false;             // same bit vector as an earlier entry
};

/// One measurement/optimization family: either a phase-offset sweep toward a
/// target angle, a single-element sweep, or their 2x2-tiled variants.
struct ConfigFamily {
    FamilyKind kind = FamilyKind::offset_sweep;
    std::optional<double> target_nu_deg; // sweeps only
    double eval_nu_deg = 0.0;            // angle the predicted values refer to
    std::optional<RisConfig> baseline;   // single-element families
    std::vector<FamilyEntry> entries;

    std::size_t size() const { return entries.size(); }
};

/// The swept offset set: {0, pi/180, 2*pi/180, ..., 2*pi - pi/180}.
std::vector<double> offset_values();

/// All-off reference configuration (every element in the 0 state).
RisConfig all_off_config(const SurfaceLayout &layout);

/// Desired continuous phase for one element: the common receiver phase C_t
/// minus the geometric phase (2*pi/lambda)(d_h + d_g), wrapped to [0, 2*pi).
/// d_g is evaluated at the target angle.
double optimal_phase(const SceneGeometry &scene, double nu_opt_deg, std::size_t element,
                     double c_t_rad);

/// Sweep all offsets for one target angle; per offset, quantize the optimal
/// phases to binary states and predict h_eff. Entries whose bit vector
/// already appeared at a smaller offset are kept but flagged as duplicates.
ConfigFamily offset_sweep(const SceneGeometry &scene, double nu_opt_deg);

/// Offset sweep with 2x2 tiles acting as single elements; each tile's state
/// comes from quantizing the optimal phase of the tile center.
ConfigFamily offset_sweep_tiled(const SceneGeometry &scene, double nu_opt_deg);

/// One configuration per element, toggling exactly that element relative to
/// the baseline. Predicted values are evaluated at eval_nu_deg.
ConfigFamily single_element_family(const SceneGeometry &scene, double eval_nu_deg,
                                   const RisConfig &baseline);

/// One configuration per 2x2 tile, toggling all four members together.
ConfigFamily single_element_tiled_family(const SceneGeometry &scene, double eval_nu_deg,
                                         const RisConfig &baseline);

struct BestOffset {
    double c_t_rad = 0.0;
    RisConfig config;
    cdouble predicted{0.0, 0.0};
};

/// Entry of an offset sweep maximizing |predicted|; ties break toward the
/// smallest offset. Throws data_error for empty or non-sweep families.
BestOffset best_offset(const ConfigFamily &family);

/// Number of 2x2 tiles; throws data_error unless rows and cols are even.
std::size_t tile_count(const SurfaceLayout &layout);

/// 1-based elements forming tile `tile` (row-major over the tile grid).
std::vector<std::size_t> tile_elements(const SurfaceLayout &layout, std::size_t tile);

} // namespace riscal
