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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "riscal/fitter.hpp"

namespace riscal {

/// Angle where the magnitude curve reaches edge_db.
inline constexpr double kProfileEdgeAngleDeg = 65.0;

/// Ground-truth reflect-coefficient profile. Magnitude follows a shared even
/// bell curve peaking at 0 degrees; the per-element phase grows linearly
/// with angle, with slopes interpolated across columns from slope_min at the
/// outer columns to slope_max at the two center columns, negative on the
/// left half of the surface and positive on the right.
struct AlphaProfile {
    double peak_db = -7.0;
    double edge_db = -21.5; // reached at |nu| = kProfileEdgeAngleDeg
    double slope_min_rad_per_deg = 0.01;
    double slope_max_rad_per_deg = 0.285;
    std::vector<double> phase_offsets_rad; // per element; empty means all zero

    // optional replacement for the quadratic magnitude law (nu_deg -> dB)
    std::function<double(double)> magnitude_db_shape;
};

/// Shared magnitude curve in dB at angle nu.
double profile_magnitude_db(const AlphaProfile &profile, double nu_deg);

/// Signed phase slope (rad/deg) of one element; depends only on its column.
double column_phase_slope(const AlphaProfile &profile, const SurfaceLayout &layout,
                          std::size_t element);

/// Evaluate the profile at one angle. Throws data_error for |nu| > 90 or a
/// phase-offset vector that does not match the layout.
AlphaVector alpha_ground_truth(const AlphaProfile &profile, const SurfaceLayout &layout,
                               double nu_deg);

struct NoiseSpec {
    std::optional<double> snr_db; // empty = noiseless
    std::uint64_t seed = 0;
};

/// Synthesize one sample per (config, angle) pair: the effective channel
/// under the ground-truth coefficients, plus circular complex Gaussian noise
/// at the requested per-sample SNR. Noise streams derive from
/// (seed, config id, angle), so results do not depend on evaluation order.
std::vector<ChannelSample> synthesize_measurements(const SceneGeometry &scene,
                                                   const std::vector<ConfigFamily> &families,
                                                   const AlphaProfile &profile,
                                                   const std::vector<double> &nu_list_deg,
                                                   const NoiseSpec &noise = {});

/// Per-column consistency of fitted phase slopes: the slope of each element
/// is estimated by linear regression of its unwrapped phase over angle, then
/// grouped by column.
struct ColumnSlopeReport {
    std::vector<double> element_slopes;      // rad/deg, per element
    std::vector<double> column_mean_slope;   // per column
    std::vector<double> column_slope_spread; // max - min across the rows of a column
    double max_spread = 0.0;
};

/// Throws data_error with fewer than three angles.
ColumnSlopeReport row_phase_consistency_check(const std::vector<AlphaVector> &table,
                                              const SurfaceLayout &layout);

} // namespace riscal
