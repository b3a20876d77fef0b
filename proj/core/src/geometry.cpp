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

#include "riscal/geometry.hpp"

#include <cmath>
#include <string>

namespace riscal {

void SurfaceLayout::validate() const {
    if (rows == 0 || cols == 0)
        throw data_error("surface layout needs at least one row and one column");
    if (!(pitch_x_m > 0.0) || !(pitch_y_m > 0.0))
        throw data_error("element pitch must be positive");
}

void SceneGeometry::validate() const {
    layout.validate();
    if (!(tx_distance_m > 0.0) || !(rx_distance_m > 0.0))
        throw data_error("antenna distances must be positive");
    if (!(frequency_hz > 0.0))
        throw data_error("frequency must be positive");
}

static void check_element_index(const SurfaceLayout &layout, std::size_t element) {
    if (element < 1 || element > layout.element_count())
        throw data_error("element index " + std::to_string(element) + " out of range [1, " +
                         std::to_string(layout.element_count()) + "]");
}

std::size_t element_row(const SurfaceLayout &layout, std::size_t element) {
    check_element_index(layout, element);
    return (element - 1) / layout.cols + 1;
}

std::size_t element_col(const SurfaceLayout &layout, std::size_t element) {
    check_element_index(layout, element);
    return (element - 1) % layout.cols + 1;
}

std::size_t mirror_element(const SurfaceLayout &layout, std::size_t element) {
    const std::size_t row = element_row(layout, element);
    const std::size_t col = element_col(layout, element);
    return (row - 1) * layout.cols + (layout.cols + 1 - col);
}

Point3 element_position(const SurfaceLayout &layout, std::size_t element) {
    check_element_index(layout, element);
    const double row = static_cast<double>(element_row(layout, element));
    const double col = static_cast<double>(element_col(layout, element));
    const double cx = (static_cast<double>(layout.cols) + 1.0) / 2.0;
    const double cy = (static_cast<double>(layout.rows) + 1.0) / 2.0;
    return {(col - cx) * layout.pitch_x_m, (cy - row) * layout.pitch_y_m, 0.0};
}

Point3 rx_position(const SceneGeometry &scene, double nu_deg) {
    if (!(nu_deg > -90.0 && nu_deg < 90.0))
        throw data_error("turntable angle must lie in (-90, 90) degrees, got " +
                         std::to_string(nu_deg));
    const double nu = deg_to_rad(nu_deg);
    return {scene.rx_distance_m * std::sin(nu), 0.0, scene.rx_distance_m * std::cos(nu)};
}

Point3 tx_position(const SceneGeometry &scene) {
    const double el = deg_to_rad(scene.tx_elevation_deg);
    return {0.0, -scene.tx_distance_m * std::sin(el), scene.tx_distance_m * std::cos(el)};
}

ElementDistances distances(const SceneGeometry &scene, double nu_deg) {
    const std::size_t m_count = scene.layout.element_count();
    const Point3 tx = tx_position(scene);
    const Point3 rx = rx_position(scene, nu_deg);

    ElementDistances out;
    out.to_tx.resize(m_count);
    out.to_rx.resize(m_count);
    for (std::size_t m = 1; m <= m_count; ++m) {
        const Point3 p = element_position(scene.layout, m);
        out.to_tx[m - 1] = distance(p, tx);
        out.to_rx[m - 1] = distance(p, rx);
    }
    return out;
}

} // namespace riscal
