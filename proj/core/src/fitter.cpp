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

#include "riscal/fitter.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace riscal {

namespace {

using MatrixXcdRM = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// sort key for the stacking order: single, single tiled, then sweeps by
// ascending target with the plain sweep before its tiled variant
int kind_rank(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::single_element:
        return 0;
    case FamilyKind::single_element_tiled:
        return 1;
    case FamilyKind::offset_sweep:
        return 2;
    case FamilyKind::offset_sweep_tiled:
        return 3;
    }
    return 4;
}

bool family_before(const ConfigFamily &a, const ConfigFamily &b) {
    const bool a_sweep =
        a.kind == FamilyKind::offset_sweep || a.kind == FamilyKind::offset_sweep_tiled;
    const bool b_sweep =
        b.kind == FamilyKind::offset_sweep || b.kind == FamilyKind::offset_sweep_tiled;
    if (a_sweep != b_sweep)
        return !a_sweep;
    if (a_sweep && b_sweep) {
        const double ta = a.target_nu_deg.value_or(0.0);
        const double tb = b.target_nu_deg.value_or(0.0);
        if (ta != tb)
            return ta < tb;
    }
    return kind_rank(a.kind) < kind_rank(b.kind);
}

bool policy_admits(RowPolicy policy, FamilyKind kind) {
    switch (policy) {
    case RowPolicy::single_only:
        return kind == FamilyKind::single_element;
    case RowPolicy::single_plus_tiled:
        return kind == FamilyKind::single_element || kind == FamilyKind::single_element_tiled;
    case RowPolicy::full_stack:
        return true;
    }
    return false;
}

} // namespace

std::string to_string(RowPolicy policy) {
    switch (policy) {
    case RowPolicy::single_only:
        return "single";
    case RowPolicy::single_plus_tiled:
        return "single_tiled";
    case RowPolicy::full_stack:
        return "full";
    }
    throw data_error("unknown row policy");
}

RowPolicy row_policy_from_string(const std::string &name) {
    if (name == "single")
        return RowPolicy::single_only;
    if (name == "single_tiled")
        return RowPolicy::single_plus_tiled;
    if (name == "full")
        return RowPolicy::full_stack;
    throw data_error("unknown row policy '" + name + "' (expected single|single_tiled|full)");
}

LinearSystem build_system(const std::vector<ConfigFamily> &families,
                          const std::vector<ChannelSample> &samples, double nu_deg,
                          const CascadedChannel &casc, const BuildOptions &options) {
    const std::size_t m_count = casc.values.size();

    // id -> (family, entry); ids must be unique across families
    struct EntryRef {
        const ConfigFamily *family;
        const FamilyEntry *entry;
    };
    std::unordered_map<std::string, EntryRef> by_id;
    for (const ConfigFamily &family : families)
        for (const FamilyEntry &entry : family.entries) {
            auto [it, inserted] = by_id.emplace(entry.config.id, EntryRef{&family, &entry});
            if (!inserted)
                throw data_error("duplicate config id '" + entry.config.id +
                                 "' across families");
        }

    // samples grouped per entry, preserving sample order
    std::unordered_map<const FamilyEntry *, std::vector<const ChannelSample *>> per_entry;
    for (const ChannelSample &sample : samples) {
        if (std::abs(sample.nu_deg - nu_deg) > 1e-9)
            throw data_error("sample for config '" + sample.config_id +
                             "' has a different angle than the system");
        const auto it = by_id.find(sample.config_id);
        if (it == by_id.end())
            throw data_error("unknown config id '" + sample.config_id + "'");
        per_entry[it->second.entry].push_back(&sample);
    }

    std::vector<const ConfigFamily *> ordered;
    ordered.reserve(families.size());
    for (const ConfigFamily &family : families)
        if (policy_admits(options.policy, family.kind))
            ordered.push_back(&family);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ConfigFamily *a, const ConfigFamily *b) {
                         return family_before(*a, *b);
                     });

    LinearSystem system;
    system.cols = m_count;
    system.nu_deg = nu_deg;
    for (const ConfigFamily *family : ordered) {
        for (const FamilyEntry &entry : family->entries) {
            if (options.dedup_sweep_configs && entry.duplicate)
                continue;
            const auto found = per_entry.find(&entry);
            if (found == per_entry.end())
                continue;
            if (entry.config.states.size() != m_count)
                throw data_error("config '" + entry.config.id +
                                 "' does not match the channel element count");
            for (const ChannelSample *sample : found->second) {
                for (std::size_t i = 0; i < m_count; ++i)
                    system.entries.push_back(casc.values[i] *
                                             reflection_factor(entry.config.states[i] != 0));
                system.rhs.push_back(sample->value);
                RowMeta meta;
                meta.kind = family->kind;
                meta.target_nu_deg = family->target_nu_deg;
                meta.c_t_rad = entry.c_t_rad;
                meta.element = entry.element;
                meta.tile = entry.tile;
                meta.config_id = entry.config.id;
                system.row_meta.push_back(std::move(meta));
                ++system.rows;
            }
        }
    }

    if (system.rows == 0)
        throw data_error("no usable rows: no sample matches a known configuration");
    return system;
}

FitReport solve_alpha(const LinearSystem &system, const SolveOptions &options) {
    const std::size_t n = system.rows;
    const std::size_t m = system.cols;
    if (n < m)
        throw numeric_error("underdetermined system: " + std::to_string(n) + " rows for " +
                            std::to_string(m) + " unknowns");
    if (system.entries.size() != n * m || system.rhs.size() != n)
        throw data_error("linear system storage is inconsistent");

    const Eigen::Map<const MatrixXcdRM> h(system.entries.data(), static_cast<Eigen::Index>(n),
                                          static_cast<Eigen::Index>(m));
    const Eigen::Map<const Eigen::VectorXcd> y(system.rhs.data(), static_cast<Eigen::Index>(n));

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(h);
    const Eigen::Index k = std::min(h.rows(), h.cols());
    const auto diag = cod.matrixQTZ().topLeftCorner(k, k).diagonal();
    double dmax = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k; ++i) {
        const double v = std::abs(diag(i));
        dmax = std::max(dmax, v);
        dmin = std::min(dmin, v);
    }
    const double cond = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();

    FitReport report;
    report.condition_estimate = cond;
    report.rows_used = n;
    report.alpha.nu_deg = system.nu_deg;

    Eigen::VectorXcd alpha;
    const bool want_ridge = options.ridge > 0.0 || cond > options.condition_threshold;
    if (want_ridge) {
        if (options.ridge <= 0.0 && !options.auto_ridge)
            throw numeric_error("system is numerically singular (condition estimate " +
                                std::to_string(cond) + ") and the ridge fallback is disabled");
        const Eigen::MatrixXcd gram = h.adjoint() * h;
        const double eps = options.ridge > 0.0
                               ? options.ridge
                               : 1e-10 * gram.trace().real() / static_cast<double>(m);
        Eigen::MatrixXcd regularized = gram;
        regularized.diagonal().array() += eps;
        alpha = regularized.ldlt().solve(h.adjoint() * y);
        report.ridge_used = eps;
    } else {
        alpha = cod.solve(y);
    }

    report.residual_norm = (h * alpha - y).norm();
    report.alpha.alpha.assign(alpha.data(), alpha.data() + alpha.size());
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(report.alpha.alpha[i]) > 1.0)
            report.magnitude_violations.push_back(i + 1);
    return report;
}

std::vector<double> residual_spectrum(const LinearSystem &system, const AlphaVector &alpha) {
    if (alpha.alpha.size() != system.cols)
        throw data_error("alpha vector does not match the system column count");
    std::vector<double> out(system.rows);
    for (std::size_t r = 0; r < system.rows; ++r) {
        cdouble acc{0.0, 0.0};
        for (std::size_t c = 0; c < system.cols; ++c)
            acc += system.at(r, c) * alpha.alpha[c];
        out[r] = std::abs(acc - system.rhs[r]);
    }
    return out;
}

std::map<double, std::vector<ChannelSample>> group_by_angle(
    const std::vector<ChannelSample> &samples) {
    std::map<double, std::vector<ChannelSample>> buckets;
    for (const ChannelSample &sample : samples)
        buckets[sample.nu_deg].push_back(sample);
    return buckets;
}

std::vector<FitOutcome> fit_per_angle(const std::vector<ConfigFamily> &families,
                                      const std::map<double, std::vector<ChannelSample>> &by_angle,
                                      const SceneGeometry &scene, RowPolicy policy,
                                      const SolveOptions &solve_options,
                                      bool dedup_sweep_configs) {
    std::vector<FitOutcome> outcomes;
    outcomes.reserve(by_angle.size());
    for (const auto &[nu, bucket] : by_angle) {
        FitOutcome outcome;
        outcome.nu_deg = nu;
        try {
            const CascadedChannel casc = cascaded_channel(scene, nu);
            BuildOptions build_options;
            build_options.policy = policy;
            build_options.dedup_sweep_configs = dedup_sweep_configs;
            const LinearSystem system = build_system(families, bucket, nu, casc, build_options);
            outcome.report = solve_alpha(system, solve_options);
        } catch (const numeric_error &e) {
            outcome.error_message = e.what();
            outcome.numeric_failure = true;
        } catch (const error &e) {
            outcome.error_message = e.what();
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

} // namespace riscal
