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

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riscal/geometry.hpp"

namespace riscal {

using cdouble = std::complex<double>;

/// Reflect amplitude of an element switched into the pi state. The prototype
/// hardware loses about 3 dB when an element is on.
inline constexpr double kOnStateAmplitude = 0.5012;

/// Binary surface configuration: one bit per element, 0 -> phase 0,
/// 1 -> phase pi. Row-major element order, matching the layout indexing.
struct RisConfig {
    std::string id;
    std::vector<std::uint8_t> states;

    std::size_t size() const { return states.size(); }
    bool on(std::size_t element) const { return states[element - 1] != 0; } // 1-based
};

/// Per-element Tx-element-Rx channel products at one turntable angle.
struct CascadedChannel {
    double nu_deg = 0.0;
    std::vector<cdouble> values;
};

/// Per-element complex reflect coefficients at one turntable angle.
struct AlphaVector {
    double nu_deg = 0.0;
    std::vector<cdouble> alpha;
};

/// Reflect coefficients fitted at several angles, keyed by angle.
using AlphaTable = std::map<double, AlphaVector>;

/// |h_eff| in dB over a grid of receiver angles for one configuration.
struct Beampattern {
    std::vector<double> nu_deg;
    std::vector<double> mag_db;
    std::string mode = "simulated"; // simulated | adapted | measured
};

/// Wrap an angle into [0, 2*pi).
double wrap_two_pi(double angle_rad);

/// Round a continuous phase to the nearest binary state: pi if the wrapped
/// phase falls in [pi/2, 3*pi/2), else 0.
double quantize_phase(double tau_rad);

/// Phase-dependent reflect amplitude: kOnStateAmplitude for the pi state,
/// 1 otherwise. Inputs are expected to be quantized already; pi is matched
/// exactly.
double reflect_amplitude(double tau_rad);

/// A(phi) * e^{j phi} for a binary state: 1 for the off state,
/// -kOnStateAmplitude for the pi state.
cdouble reflection_factor(bool pi_state);

/// Free-space cascaded channel per element:
///   [c / (4 pi f d_h) e^{j 2 pi d_h / lambda}] [c / (4 pi f d_g) e^{j 2 pi d_g / lambda}]
CascadedChannel cascaded_channel(const SceneGeometry &scene, double nu_deg);

/// Effective channel: sum over elements of cascaded value x reflection
/// factor, optionally corrected by per-element reflect coefficients.
/// Throws data_error on length mismatch.
cdouble effective_channel(const CascadedChannel &casc, const RisConfig &config,
                          const AlphaVector *alpha = nullptr);

/// Table entry whose angle is nearest to nu_deg (smaller angle wins ties).
const AlphaVector &nearest_alpha(const AlphaTable &table, double nu_deg);

/// 20*log10 |h_eff| over a grid of receiver angles. When an alpha table is
/// given, each grid point is corrected by the table entry nearest in angle
/// and mode is reported as "adapted". Throws data_error on an empty grid.
Beampattern beampattern(const SceneGeometry &scene, const RisConfig &config,
                        const std::vector<double> &nu_grid_deg,
                        const AlphaTable *alpha_table = nullptr);

// --- beampattern analysis -------------------------------------------------

/// Evenly spaced grid start, start+step, ..., up to and including stop
/// (within half a step).
std::vector<double> angle_grid(double start_deg, double step_deg, double stop_deg);

/// Resample a pattern onto a new grid by nearest neighbour.
Beampattern resample_nearest(const Beampattern &src, const std::vector<double> &grid_deg);

/// Root-mean-square difference of two patterns in dB over their common grid;
/// optionally restricted to |nu - window_center| <= window_halfwidth.
double rmse_db(const Beampattern &a, const Beampattern &b,
               std::optional<double> window_center_deg = std::nullopt,
               double window_halfwidth_deg = 5.0);

} // namespace riscal
