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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riscal/channel.hpp"
#include "riscal/optimizer.hpp"

namespace riscal {

/// One measured (or synthesized) effective-channel value for a known
/// configuration at one turntable angle.
struct ChannelSample {
    std::string config_id;
    double nu_deg = 0.0;
    cdouble value{0.0, 0.0};
};

/// Which configuration families contribute rows to a fit.
enum class RowPolicy {
    single_only,
    single_plus_tiled,
    full_stack,
};

std::string to_string(RowPolicy policy);
RowPolicy row_policy_from_string(const std::string &name);

struct RowMeta {
    FamilyKind kind = FamilyKind::single_element;
    std::optional<double> target_nu_deg;
    std::optional<double> c_t_rad;
    std::optional<std::size_t> element;
    std::optional<std::size_t> tile;
    std::string config_id;
};

/// Stacked complex system H alpha = y. Row t holds the analytical values
/// casc_m * theta_{m,t}; the right-hand side holds the measurements.
struct LinearSystem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cdouble> entries; // row-major rows x cols
    std::vector<cdouble> rhs;
    std::vector<RowMeta> row_meta;
    double nu_deg = 0.0;

    cdouble &at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const cdouble &at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct BuildOptions {
    RowPolicy policy = RowPolicy::full_stack;
    // Quantization makes neighbouring offsets share a bit vector; duplicate
    // sweep entries are dropped from the fit unless disabled.
    bool dedup_sweep_configs = true;
};

/// Assemble the stacked system for one angle. All samples must share
/// nu_deg; each sample contributes one row, ordered single, single tiled,
/// then offset sweeps by ascending target (plain before tiled per target).
/// Throws data_error on unknown config ids, mixed angles, or zero rows.
LinearSystem build_system(const std::vector<ConfigFamily> &families,
                          const std::vector<ChannelSample> &samples, double nu_deg,
                          const CascadedChannel &casc, const BuildOptions &options = {});

struct SolveOptions {
    double ridge = 0.0;                 // explicit Tikhonov epsilon, 0 = off
    bool auto_ridge = true;             // enable ridge past the condition threshold
    double condition_threshold = 1e12;
};

struct FitReport {
    AlphaVector alpha;
    double residual_norm = 0.0;
    double condition_estimate = 0.0;
    std::vector<std::size_t> magnitude_violations; // 1-based elements with |alpha| > 1
    std::size_t rows_used = 0;
    double ridge_used = 0.0;
};

/// Complex least squares: alpha minimizing ||H alpha - y||_2, solved with a
/// rank-revealing orthogonal decomposition (conjugate transpose throughout).
/// Falls back to ridge-regularized normal equations past the condition
/// threshold. The |alpha| <= 1 model constraint is reported, not enforced.
/// Throws numeric_error when underdetermined, or when near-singular with
/// the ridge disabled.
FitReport solve_alpha(const LinearSystem &system, const SolveOptions &options = {});

/// Per-row residual magnitudes |H_t alpha - y_t|.
std::vector<double> residual_spectrum(const LinearSystem &system, const AlphaVector &alpha);

/// Group samples by angle (exact nu_deg match).
std::map<double, std::vector<ChannelSample>> group_by_angle(
    const std::vector<ChannelSample> &samples);

struct FitOutcome {
    double nu_deg = 0.0;
    std::optional<FitReport> report; // empty on failure
    std::string error_message;
    bool numeric_failure = false; // failure came from the solver, not the data

    bool ok() const { return report.has_value(); }
};

/// Independent fit per angle bucket. A failing bucket records its error and
/// leaves the other buckets untouched.
std::vector<FitOutcome> fit_per_angle(const std::vector<ConfigFamily> &families,
                                      const std::map<double, std::vector<ChannelSample>> &by_angle,
                                      const SceneGeometry &scene, RowPolicy policy,
                                      const SolveOptions &solve_options = {},
                                      bool dedup_sweep_configs = true);

} // namespace riscal
