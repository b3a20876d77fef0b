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

#include "riscal/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

namespace riscal {

namespace {

std::string format_target(double nu_opt_deg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", nu_opt_deg);
    return buf;
}

std::string sweep_id(const char *prefix, double nu_opt_deg, std::size_t t_index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%s_c%03zu", prefix, format_target(nu_opt_deg).c_str(),
                  t_index);
    return buf;
}

// flags entries whose bit vector already appeared earlier in the family
void flag_duplicates(ConfigFamily &family) {
    std::map<std::vector<std::uint8_t>, std::size_t> seen;
    for (std::size_t i = 0; i < family.entries.size(); ++i) {
        auto [it, inserted] = seen.emplace(family.entries[i].config.states, i);
        family.entries[i].duplicate = !inserted;
    }
}

} // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::offset_sweep:
        return "offset_sweep";
    case FamilyKind::single_element:
        return "single_element";
    case FamilyKind::single_element_tiled:
        return "single_element_tiled";
    case FamilyKind::offset_sweep_tiled:
        return "offset_sweep_tiled";
    }
    throw data_error("unknown family kind");
}

FamilyKind family_kind_from_string(const std::string &name) {
    if (name == "offset_sweep")
        return FamilyKind::offset_sweep;
    if (name == "single_element")
        return FamilyKind::single_element;
    if (name == "single_element_tiled")
        return FamilyKind::single_element_tiled;
    if (name == "offset_sweep_tiled")
        return FamilyKind::offset_sweep_tiled;
    throw data_error("unknown family kind '" + name + "'");
}

std::vector<double> offset_values() {
    std::vector<double> offsets(kOffsetCount);
    for (std::size_t t = 0; t < kOffsetCount; ++t)
        offsets[t] = static_cast<double>(t) * std::numbers::pi / 180.0;
    return offsets;
}

RisConfig all_off_config(const SurfaceLayout &layout) {
    RisConfig cfg;
    cfg.id = "base_off";
    cfg.states.assign(layout.element_count(), 0);
    return cfg;
}

double optimal_phase(const SceneGeometry &scene, double nu_opt_deg, std::size_t element,
                     double c_t_rad) {
    const Point3 p = element_position(scene.layout, element);
    const double d_h = distance(p, tx_position(scene));
    const double d_g = distance(p, rx_position(scene, nu_opt_deg));
    const double geometric = 2.0 * std::numbers::pi * (d_h + d_g) / scene.wavelength_m();
    return wrap_two_pi(c_t_rad - geometric);
}

ConfigFamily offset_sweep(const SceneGeometry &scene, double nu_opt_deg) {
    scene.validate();
    const std::size_t m_count = scene.layout.element_count();
    const CascadedChannel casc = cascaded_channel(scene, nu_opt_deg);

    // per-element geometric phase is offset-independent; compute once
    std::vector<double> geometric(m_count);
    const Point3 tx = tx_position(scene);
    const Point3 rx = rx_position(scene, nu_opt_deg);
    for (std::size_t m = 1; m <= m_count; ++m) {
        const Point3 p = element_position(scene.layout, m);
        geometric[m - 1] =
            2.0 * std::numbers::pi * (distance(p, tx) + distance(p, rx)) / scene.wavelength_m();
    }

    ConfigFamily family;
    family.kind = FamilyKind::offset_sweep;
    family.target_nu_deg = nu_opt_deg;
    family.eval_nu_deg = nu_opt_deg;
    family.entries.reserve(kOffsetCount);

    const std::vector<double> offsets = offset_values();
    for (std::size_t t = 0; t < offsets.size(); ++t) {
        FamilyEntry entry;
        entry.c_t_rad = offsets[t];
        entry.config.id = sweep_id("sw", nu_opt_deg, t);
        entry.config.states.resize(m_count);
        for (std::size_t i = 0; i < m_count; ++i) {
            const double phase = quantize_phase(wrap_two_pi(offsets[t] - geometric[i]));
            entry.config.states[i] = phase == 0.0 ? 0 : 1;
        }
        entry.predicted = effective_channel(casc, entry.config);
        family.entries.push_back(std::move(entry));
    }
    flag_duplicates(family);
    return family;
}

ConfigFamily offset_sweep_tiled(const SceneGeometry &scene, double nu_opt_deg) {
    scene.validate();
    const std::size_t m_count = scene.layout.element_count();
    const std::size_t tiles = tile_count(scene.layout);
    const CascadedChannel casc = cascaded_channel(scene, nu_opt_deg);

    // geometric phase of each tile center
    std::vector<double> geometric(tiles);
    const Point3 tx = tx_position(scene);
    const Point3 rx = rx_position(scene, nu_opt_deg);
    for (std::size_t k = 1; k <= tiles; ++k) {
        Point3 center{0.0, 0.0, 0.0};
        for (std::size_t m : tile_elements(scene.layout, k)) {
            const Point3 p = element_position(scene.layout, m);
            center.x += p.x / 4.0;
            center.y += p.y / 4.0;
            center.z += p.z / 4.0;
        }
        geometric[k - 1] = 2.0 * std::numbers::pi *
                           (distance(center, tx) + distance(center, rx)) / scene.wavelength_m();
    }

    ConfigFamily family;
    family.kind = FamilyKind::offset_sweep_tiled;
    family.target_nu_deg = nu_opt_deg;
    family.eval_nu_deg = nu_opt_deg;
    family.entries.reserve(kOffsetCount);

    const std::vector<double> offsets = offset_values();
    for (std::size_t t = 0; t < offsets.size(); ++t) {
        FamilyEntry entry;
        entry.c_t_rad = offsets[t];
        entry.config.id = sweep_id("tsw", nu_opt_deg, t);
        entry.config.states.assign(m_count, 0);
        for (std::size_t k = 1; k <= tiles; ++k) {
            const double phase = quantize_phase(wrap_two_pi(offsets[t] - geometric[k - 1]));
            if (phase != 0.0)
                for (std::size_t m : tile_elements(scene.layout, k))
                    entry.config.states[m - 1] = 1;
        }
        entry.predicted = effective_channel(casc, entry.config);
        family.entries.push_back(std::move(entry));
    }
    flag_duplicates(family);
    return family;
}

ConfigFamily single_element_family(const SceneGeometry &scene, double eval_nu_deg,
                                   const RisConfig &baseline) {
    scene.validate();
    const std::size_t m_count = scene.layout.element_count();
    if (baseline.states.size() != m_count)
        throw data_error("baseline state count does not match the layout");

    const CascadedChannel casc = cascaded_channel(scene, eval_nu_deg);

    ConfigFamily family;
    family.kind = FamilyKind::single_element;
    family.eval_nu_deg = eval_nu_deg;
    family.baseline = baseline;
    family.entries.reserve(m_count);
    for (std::size_t m = 1; m <= m_count; ++m) {
        FamilyEntry entry;
        entry.element = m;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "se_m%03zu", m);
        entry.config.id = buf;
        entry.config.states = baseline.states;
        entry.config.states[m - 1] ^= 1;
        entry.predicted = effective_channel(casc, entry.config);
        family.entries.push_back(std::move(entry));
    }
    flag_duplicates(family);
    return family;
}

ConfigFamily single_element_tiled_family(const SceneGeometry &scene, double eval_nu_deg,
                                         const RisConfig &baseline) {
    scene.validate();
    const std::size_t m_count = scene.layout.element_count();
    if (baseline.states.size() != m_count)
        throw data_error("baseline state count does not match the layout");

    const std::size_t tiles = tile_count(scene.layout);
    const CascadedChannel casc = cascaded_channel(scene, eval_nu_deg);

    ConfigFamily family;
    family.kind = FamilyKind::single_element_tiled;
    family.eval_nu_deg = eval_nu_deg;
    family.baseline = baseline;
    family.entries.reserve(tiles);
    for (std::size_t k = 1; k <= tiles; ++k) {
        FamilyEntry entry;
        entry.tile = k;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "ste_k%02zu", k);
        entry.config.id = buf;
        entry.config.states = baseline.states;
        for (std::size_t m : tile_elements(scene.layout, k))
            entry.config.states[m - 1] ^= 1;
        entry.predicted = effective_channel(casc, entry.config);
        family.entries.push_back(std::move(entry));
    }
    flag_duplicates(family);
    return family;
}

BestOffset best_offset(const ConfigFamily &family) {
    if (family.kind != FamilyKind::offset_sweep && family.kind != FamilyKind::offset_sweep_tiled)
        throw data_error("best_offset expects an offset sweep family");
    if (family.entries.empty())
        throw data_error("offset sweep family is empty");

    const FamilyEntry *best = nullptr;
    for (const FamilyEntry &entry : family.entries) {
        if (best == nullptr || std::abs(entry.predicted) > std::abs(best->predicted))
            best = &entry; // strict > keeps the smallest offset on ties
    }
    return {best->c_t_rad.value_or(0.0), best->config, best->predicted};
}

std::size_t tile_count(const SurfaceLayout &layout) {
    if (layout.rows % 2 != 0 || layout.cols % 2 != 0)
        throw data_error("2x2 tiling needs even row and column counts");
    return (layout.rows / 2) * (layout.cols / 2);
}

std::vector<std::size_t> tile_elements(const SurfaceLayout &layout, std::size_t tile) {
    const std::size_t tiles = tile_count(layout);
    if (tile < 1 || tile > tiles)
        throw data_error("tile index out of range");
    const std::size_t tile_cols = layout.cols / 2;
    const std::size_t tr = (tile - 1) / tile_cols; // 0-based tile row/col
    const std::size_t tc = (tile - 1) % tile_cols;
    const std::size_t row = 2 * tr + 1; // top-left member, 1-based
    const std::size_t col = 2 * tc + 1;
    const std::size_t base = (row - 1) * layout.cols + col;
    return {base, base + 1, base + layout.cols, base + layout.cols + 1};
}

} // namespace riscal
