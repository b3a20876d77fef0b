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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "riscal/errors.hpp"

namespace riscal {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Point3 operator-(const Point3 &a, const Point3 &b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline double distance(const Point3 &a, const Point3 &b) { return (a - b).norm(); }

/// Rectangular element grid of the reflecting surface. Elements are indexed
/// 1-based, row-major from the top-left corner to the top-right, then down,
/// as seen from the front of the surface.
struct SurfaceLayout {
    std::size_t rows = 16;
    std::size_t cols = 16;
    double pitch_x_m = 0.360 / 16.0; // surface extent / element count per row
    double pitch_y_m = 0.247 / 16.0;

    std::size_t element_count() const { return rows * cols; }
    void validate() const;
};

/// Turntable scene: the surface and its transmitter co-rotate; the receiver
/// is fixed in the room. Everything is expressed in the surface frame, so the
/// turntable angle nu appears as the receiver's horizontal angle. x points to
/// the right (front view), y up, z along the surface normal toward the
/// receiver at nu = 0.
struct SceneGeometry {
    SurfaceLayout layout{};
    double tx_distance_m = 1.96;    // feed antenna to surface center
    double tx_elevation_deg = 30.6; // below the surface normal
    double rx_distance_m = 7.472;
    double frequency_hz = 5.53e9;

    double wavelength_m() const { return kSpeedOfLight / frequency_hz; }
    void validate() const;
};

/// 1-based row / column of an element under the row-major indexing.
std::size_t element_row(const SurfaceLayout &layout, std::size_t element);
std::size_t element_col(const SurfaceLayout &layout, std::size_t element);

/// Element whose column mirrors `element` across the central vertical axis
/// (same row).
std::size_t mirror_element(const SurfaceLayout &layout, std::size_t element);

/// Center of element `element` (1-based) in the surface frame, origin at the
/// surface center.
Point3 element_position(const SurfaceLayout &layout, std::size_t element);

/// Receiver position for turntable angle nu. Throws data_error for
/// |nu| >= 90 (receiver would sit behind the surface plane).
Point3 rx_position(const SceneGeometry &scene, double nu_deg);

/// Transmitter position; independent of nu because the feed is mounted on
/// the turntable below the surface.
Point3 tx_position(const SceneGeometry &scene);

/// Per-element propagation distances. to_tx is independent of nu.
struct ElementDistances {
    std::vector<double> to_tx; // d_h
    std::vector<double> to_rx; // d_g
};

ElementDistances distances(const SceneGeometry &scene, double nu_deg);

} // namespace riscal
