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

#include "riscal/synthlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>

namespace riscal {

namespace {

std::uint64_t fnv1a64(const void *data, std::size_t size, std::uint64_t hash) {
    const auto *bytes = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// one independent, order-insensitive noise stream per (seed, config, angle)
std::uint64_t sample_stream_seed(std::uint64_t seed, const std::string &config_id,
                                 double nu_deg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a64(&seed, sizeof(seed), h);
    h = fnv1a64(config_id.data(), config_id.size(), h);
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(nu_deg));
    std::memcpy(&bits, &nu_deg, sizeof(bits));
    h = fnv1a64(&bits, sizeof(bits), h);
    return h;
}

double wrap_pm_pi(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x + std::numbers::pi, two_pi);
    if (r < 0.0)
        r += two_pi;
    return r - std::numbers::pi;
}

} // namespace

double profile_magnitude_db(const AlphaProfile &profile, double nu_deg) {
    if (profile.magnitude_db_shape)
        return profile.magnitude_db_shape(nu_deg);
    const double x = nu_deg / kProfileEdgeAngleDeg;
    return profile.peak_db - (profile.peak_db - profile.edge_db) * x * x;
}

double column_phase_slope(const AlphaProfile &profile, const SurfaceLayout &layout,
                          std::size_t element) {
    if (layout.cols % 2 != 0)
        throw data_error("phase-slope law needs an even column count");
    const std::size_t col = element_col(layout, element);
    const std::size_t half = layout.cols / 2;
    // distance from the outer edge toward the center, per half
    const std::size_t inset = col <= half ? col - 1 : layout.cols - col;
    const double t = half > 1 ? static_cast<double>(inset) / static_cast<double>(half - 1) : 1.0;
    const double magnitude =
        profile.slope_min_rad_per_deg +
        (profile.slope_max_rad_per_deg - profile.slope_min_rad_per_deg) * t;
    return col <= half ? -magnitude : magnitude;
}

AlphaVector alpha_ground_truth(const AlphaProfile &profile, const SurfaceLayout &layout,
                               double nu_deg) {
    if (!(std::abs(nu_deg) <= 90.0))
        throw data_error("profile angle must lie in [-90, 90] degrees");
    const std::size_t m_count = layout.element_count();
    if (!profile.phase_offsets_rad.empty() && profile.phase_offsets_rad.size() != m_count)
        throw data_error("phase offset vector does not match the layout");

    const double mag = std::pow(10.0, profile_magnitude_db(profile, nu_deg) / 20.0);

    AlphaVector out;
    out.nu_deg = nu_deg;
    out.alpha.resize(m_count);
    for (std::size_t m = 1; m <= m_count; ++m) {
        const double offset =
            profile.phase_offsets_rad.empty() ? 0.0 : profile.phase_offsets_rad[m - 1];
        const double phase = column_phase_slope(profile, layout, m) * nu_deg + offset;
        out.alpha[m - 1] = std::polar(mag, phase);
    }
    return out;
}

std::vector<ChannelSample> synthesize_measurements(const SceneGeometry &scene,
                                                   const std::vector<ConfigFamily> &families,
                                                   const AlphaProfile &profile,
                                                   const std::vector<double> &nu_list_deg,
                                                   const NoiseSpec &noise) {
    scene.validate();
    std::vector<ChannelSample> samples;
    for (double nu : nu_list_deg) {
        const CascadedChannel casc = cascaded_channel(scene, nu);
        const AlphaVector truth = alpha_ground_truth(profile, scene.layout, nu);
        for (const ConfigFamily &family : families) {
            for (const FamilyEntry &entry : family.entries) {
                ChannelSample sample;
                sample.config_id = entry.config.id;
                sample.nu_deg = nu;
                sample.value = effective_channel(casc, entry.config, &truth);
                if (noise.snr_db) {
                    const double sigma =
                        std::abs(sample.value) * std::pow(10.0, -*noise.snr_db / 20.0);
                    std::mt19937_64 rng(sample_stream_seed(noise.seed, sample.config_id, nu));
                    std::normal_distribution<double> gauss(0.0, sigma / std::sqrt(2.0));
                    sample.value += cdouble{gauss(rng), gauss(rng)};
                }
                samples.push_back(std::move(sample));
            }
        }
    }
    return samples;
}

ColumnSlopeReport row_phase_consistency_check(const std::vector<AlphaVector> &table,
                                              const SurfaceLayout &layout) {
    if (table.size() < 3)
        throw data_error("phase-slope regression needs at least three angles");
    const std::size_t m_count = layout.element_count();
    for (const AlphaVector &vec : table)
        if (vec.alpha.size() != m_count)
            throw data_error("alpha vector does not match the layout");

    std::vector<const AlphaVector *> sorted;
    sorted.reserve(table.size());
    for (const AlphaVector &vec : table)
        sorted.push_back(&vec);
    std::sort(sorted.begin(), sorted.end(),
              [](const AlphaVector *a, const AlphaVector *b) { return a->nu_deg < b->nu_deg; });

    const std::size_t n = sorted.size();
    double nu_mean = 0.0;
    for (const AlphaVector *vec : sorted)
        nu_mean += vec->nu_deg / static_cast<double>(n);
    double nu_var = 0.0;
    for (const AlphaVector *vec : sorted)
        nu_var += (vec->nu_deg - nu_mean) * (vec->nu_deg - nu_mean);
    if (nu_var == 0.0)
        throw data_error("phase-slope regression needs distinct angles");

    ColumnSlopeReport report;
    report.element_slopes.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        // unwrap the phase track before regressing
        std::vector<double> phase(n);
        phase[0] = std::arg(sorted[0]->alpha[m]);
        for (std::size_t i = 1; i < n; ++i) {
            const double raw = std::arg(sorted[i]->alpha[m]);
            phase[i] = phase[i - 1] + wrap_pm_pi(raw - phase[i - 1]);
        }
        double phase_mean = 0.0;
        for (double p : phase)
            phase_mean += p / static_cast<double>(n);
        double cov = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            cov += (sorted[i]->nu_deg - nu_mean) * (phase[i] - phase_mean);
        report.element_slopes[m] = cov / nu_var;
    }

    report.column_mean_slope.assign(layout.cols, 0.0);
    report.column_slope_spread.assign(layout.cols, 0.0);
    for (std::size_t c = 1; c <= layout.cols; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        double mean = 0.0;
        for (std::size_t r = 1; r <= layout.rows; ++r) {
            const double s = report.element_slopes[(r - 1) * layout.cols + (c - 1)];
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            mean += s / static_cast<double>(layout.rows);
        }
        report.column_mean_slope[c - 1] = mean;
        report.column_slope_spread[c - 1] = hi - lo;
        report.max_spread = std::max(report.max_spread, hi - lo);
    }
    return report;
}

} // namespace riscal
