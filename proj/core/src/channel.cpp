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

#include "riscal/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace riscal {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

double wrap_two_pi(double angle_rad) {
    double r = std::fmod(angle_rad, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi) // fmod + add can round up to exactly 2*pi
        r -= kTwoPi;
    return r;
}

double quantize_phase(double tau_rad) {
    const double tau = wrap_two_pi(tau_rad);
    // half-open branch: pi/2 maps to pi, 3*pi/2 maps to 0
    if (tau >= std::numbers::pi / 2.0 && tau < 3.0 * std::numbers::pi / 2.0)
        return std::numbers::pi;
    return 0.0;
}

double reflect_amplitude(double tau_rad) {
    return tau_rad == std::numbers::pi ? kOnStateAmplitude : 1.0;
}

cdouble reflection_factor(bool pi_state) {
    // e^{j pi} = -1 and e^{j 0} = 1, folded in exactly
    return pi_state ? cdouble{-kOnStateAmplitude, 0.0} : cdouble{1.0, 0.0};
}

CascadedChannel cascaded_channel(const SceneGeometry &scene, double nu_deg) {
    const ElementDistances d = distances(scene, nu_deg);
    const double lambda = scene.wavelength_m();
    const double gain = kSpeedOfLight / (4.0 * std::numbers::pi * scene.frequency_hz);

    CascadedChannel out;
    out.nu_deg = nu_deg;
    out.values.resize(d.to_tx.size());
    for (std::size_t i = 0; i < d.to_tx.size(); ++i) {
        const double amp = (gain / d.to_tx[i]) * (gain / d.to_rx[i]);
        const double phase = kTwoPi * (d.to_tx[i] + d.to_rx[i]) / lambda;
        out.values[i] = std::polar(amp, phase);
    }
    return out;
}

cdouble effective_channel(const CascadedChannel &casc, const RisConfig &config,
                          const AlphaVector *alpha) {
    const std::size_t m_count = casc.values.size();
    if (config.states.size() != m_count)
        throw data_error("config has " + std::to_string(config.states.size()) +
                         " states, channel has " + std::to_string(m_count) + " elements");
    if (alpha != nullptr && alpha->alpha.size() != m_count)
        throw data_error("alpha vector has " + std::to_string(alpha->alpha.size()) +
                         " entries, channel has " + std::to_string(m_count) + " elements");

    cdouble sum{0.0, 0.0};
    for (std::size_t i = 0; i < m_count; ++i) {
        cdouble term = casc.values[i] * reflection_factor(config.states[i] != 0);
        if (alpha != nullptr)
            term *= alpha->alpha[i];
        sum += term;
    }
    return sum;
}

const AlphaVector &nearest_alpha(const AlphaTable &table, double nu_deg) {
    if (table.empty())
        throw data_error("alpha table is empty");
    const AlphaVector *best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto &[nu, vec] : table) {
        const double dist = std::abs(nu - nu_deg);
        if (dist < best_dist) { // map iterates ascending, so ties keep the smaller angle
            best_dist = dist;
            best = &vec;
        }
    }
    return *best;
}

Beampattern beampattern(const SceneGeometry &scene, const RisConfig &config,
                        const std::vector<double> &nu_grid_deg, const AlphaTable *alpha_table) {
    if (nu_grid_deg.empty())
        throw data_error("beampattern grid is empty");

    Beampattern out;
    out.mode = alpha_table != nullptr ? "adapted" : "simulated";
    out.nu_deg = nu_grid_deg;
    out.mag_db.resize(nu_grid_deg.size());
    for (std::size_t i = 0; i < nu_grid_deg.size(); ++i) {
        const CascadedChannel casc = cascaded_channel(scene, nu_grid_deg[i]);
        const AlphaVector *alpha =
            alpha_table != nullptr ? &nearest_alpha(*alpha_table, nu_grid_deg[i]) : nullptr;
        out.mag_db[i] = 20.0 * std::log10(std::abs(effective_channel(casc, config, alpha)));
    }
    return out;
}

std::vector<double> angle_grid(double start_deg, double step_deg, double stop_deg) {
    if (!(step_deg > 0.0))
        throw data_error("grid step must be positive");
    if (stop_deg < start_deg)
        throw data_error("grid stop must not precede start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 0.5));
    grid.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        grid.push_back(start_deg + static_cast<double>(i) * step_deg);
    return grid;
}

Beampattern resample_nearest(const Beampattern &src, const std::vector<double> &grid_deg) {
    if (src.nu_deg.empty())
        throw data_error("cannot resample an empty beampattern");
    Beampattern out;
    out.mode = src.mode;
    out.nu_deg = grid_deg;
    out.mag_db.resize(grid_deg.size());
    for (std::size_t i = 0; i < grid_deg.size(); ++i) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < src.nu_deg.size(); ++k) {
            const double dist = std::abs(src.nu_deg[k] - grid_deg[i]);
            if (dist < best_dist) {
                best_dist = dist;
                best = k;
            }
        }
        out.mag_db[i] = src.mag_db[best];
    }
    return out;
}

double rmse_db(const Beampattern &a, const Beampattern &b, std::optional<double> window_center_deg,
               double window_halfwidth_deg) {
    if (a.nu_deg.size() != b.nu_deg.size())
        throw data_error("beampattern grids differ in size; resample first");
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.nu_deg.size(); ++i) {
        if (std::abs(a.nu_deg[i] - b.nu_deg[i]) > 1e-9)
            throw data_error("beampattern grids differ; resample first");
        if (window_center_deg &&
            std::abs(a.nu_deg[i] - *window_center_deg) > window_halfwidth_deg)
            continue;
        const double diff = a.mag_db[i] - b.mag_db[i];
        acc += diff * diff;
        ++n;
    }
    if (n == 0)
        throw data_error("no grid points fall inside the comparison window");
    return std::sqrt(acc / static_cast<double>(n));
}

} // namespace riscal
