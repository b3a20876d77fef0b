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

#include "riscal/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace riscal {

namespace {

using nlohmann::json;

std::string fmt_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_double(const std::string &text, const std::string &context) {
    char *end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw data_error("cannot parse number '" + text + "' in " + context);
    return value;
}

std::size_t parse_index(const std::string &text, const std::string &context) {
    char *end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw data_error("cannot parse index '" + text + "' in " + context);
    return static_cast<std::size_t>(value);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw data_error("cannot open '" + path.string() + "' for writing");
    return out;
}

json load_json(const std::filesystem::path &path) {
    std::ifstream in = open_input(path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw data_error("cannot parse '" + path.string() + "': " + e.what());
    }
}

void dump_json(const json &doc, const std::filesystem::path &path) {
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
    if (!out)
        throw data_error("failed writing '" + path.string() + "'");
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::string states_to_hex(const std::vector<std::uint8_t> &states) {
    if (states.size() % 4 != 0)
        throw data_error("hex state encoding needs a multiple of four elements");
    static const char digits[] = "0123456789abcdef";
    std::string hex(states.size() / 4, '0');
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] != 0)
            hex[i / 4] = digits[hex_digit(hex[i / 4]) | (8 >> (i % 4))];
    return hex;
}

std::vector<std::uint8_t> states_from_hex(const std::string &hex, std::size_t element_count) {
    if (element_count % 4 != 0)
        throw data_error("hex state encoding needs a multiple of four elements");
    if (hex.size() != element_count / 4)
        throw data_error("state string '" + hex + "' does not encode " +
                         std::to_string(element_count) + " elements");
    std::vector<std::uint8_t> states(element_count, 0);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int value = hex_digit(hex[d]);
        if (value < 0)
            throw data_error("invalid hex digit in state string '" + hex + "'");
        for (std::size_t b = 0; b < 4; ++b)
            states[d * 4 + b] = (value >> (3 - b)) & 1;
    }
    return states;
}

SceneGeometry load_scene(const std::filesystem::path &path) {
    const json doc = load_json(path);
    SceneGeometry scene;
    try {
        if (doc.contains("rows"))
            scene.layout.rows = doc.at("rows").get<std::size_t>();
        if (doc.contains("cols"))
            scene.layout.cols = doc.at("cols").get<std::size_t>();
        if (doc.contains("pitch_x_m"))
            scene.layout.pitch_x_m = doc.at("pitch_x_m").get<double>();
        if (doc.contains("pitch_y_m"))
            scene.layout.pitch_y_m = doc.at("pitch_y_m").get<double>();
        if (doc.contains("tx_distance_m"))
            scene.tx_distance_m = doc.at("tx_distance_m").get<double>();
        if (doc.contains("tx_elevation_deg"))
            scene.tx_elevation_deg = doc.at("tx_elevation_deg").get<double>();
        if (doc.contains("rx_distance_m"))
            scene.rx_distance_m = doc.at("rx_distance_m").get<double>();
        if (doc.contains("frequency_hz"))
            scene.frequency_hz = doc.at("frequency_hz").get<double>();
    } catch (const json::exception &e) {
        throw data_error("bad scene file '" + path.string() + "': " + e.what());
    }
    scene.validate();
    return scene;
}

void save_scene(const SceneGeometry &scene, const std::filesystem::path &path) {
    json doc;
    doc["rows"] = scene.layout.rows;
    doc["cols"] = scene.layout.cols;
    doc["pitch_x_m"] = scene.layout.pitch_x_m;
    doc["pitch_y_m"] = scene.layout.pitch_y_m;
    doc["tx_distance_m"] = scene.tx_distance_m;
    doc["tx_elevation_deg"] = scene.tx_elevation_deg;
    doc["rx_distance_m"] = scene.rx_distance_m;
    doc["frequency_hz"] = scene.frequency_hz;
    dump_json(doc, path);
}

AlphaProfile load_profile(const std::filesystem::path &path) {
    const json doc = load_json(path);
    AlphaProfile profile;
    try {
        if (doc.contains("peak_db"))
            profile.peak_db = doc.at("peak_db").get<double>();
        if (doc.contains("edge_db"))
            profile.edge_db = doc.at("edge_db").get<double>();
        if (doc.contains("slope_min_rad_per_deg"))
            profile.slope_min_rad_per_deg = doc.at("slope_min_rad_per_deg").get<double>();
        if (doc.contains("slope_max_rad_per_deg"))
            profile.slope_max_rad_per_deg = doc.at("slope_max_rad_per_deg").get<double>();
        if (doc.contains("phase_offsets_rad"))
            profile.phase_offsets_rad = doc.at("phase_offsets_rad").get<std::vector<double>>();
    } catch (const json::exception &e) {
        throw data_error("bad profile file '" + path.string() + "': " + e.what());
    }
    if (!(profile.peak_db > profile.edge_db))
        throw data_error("profile peak_db must exceed edge_db");
    if (profile.slope_min_rad_per_deg < 0.0 || profile.slope_max_rad_per_deg < 0.0)
        throw data_error("profile slopes must be non-negative");
    return profile;
}

void save_profile(const AlphaProfile &profile, const std::filesystem::path &path) {
    json doc;
    doc["peak_db"] = profile.peak_db;
    doc["edge_db"] = profile.edge_db;
    doc["slope_min_rad_per_deg"] = profile.slope_min_rad_per_deg;
    doc["slope_max_rad_per_deg"] = profile.slope_max_rad_per_deg;
    if (!profile.phase_offsets_rad.empty())
        doc["phase_offsets_rad"] = profile.phase_offsets_rad;
    dump_json(doc, path);
}

static const char *kConfigHeader = "id,kind,nu_opt_deg,c_t_rad,element,tile,states_hex";

void save_config_families(const std::vector<ConfigFamily> &families,
                          const std::filesystem::path &path) {
    std::ofstream out = open_output(path);
    out << kConfigHeader << '\n';
    for (const ConfigFamily &family : families) {
        for (const FamilyEntry &entry : family.entries) {
            out << entry.config.id << ',' << to_string(family.kind) << ',';
            if (family.target_nu_deg)
                out << fmt_double(*family.target_nu_deg);
            out << ',';
            if (entry.c_t_rad)
                out << fmt_double(*entry.c_t_rad);
            out << ',';
            if (entry.element)
                out << *entry.element;
            out << ',';
            if (entry.tile)
                out << *entry.tile;
            out << ',' << states_to_hex(entry.config.states) << '\n';
        }
    }
    if (!out)
        throw data_error("failed writing '" + path.string() + "'");
}

std::vector<ConfigFamily> load_config_families(const std::filesystem::path &path,
                                               const SurfaceLayout &layout) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || line != kConfigHeader)
        throw data_error("config file '" + path.string() + "' lacks the expected header");

    std::vector<ConfigFamily> families;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const std::string context = path.string() + ":" + std::to_string(line_no);
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 7)
            throw data_error("expected 7 fields in " + context);

        const FamilyKind kind = family_kind_from_string(fields[1]);
        std::optional<double> target;
        if (!fields[2].empty())
            target = parse_double(fields[2], context);

        FamilyEntry entry;
        entry.config.id = fields[0];
        if (!fields[3].empty())
            entry.c_t_rad = parse_double(fields[3], context);
        if (!fields[4].empty())
            entry.element = parse_index(fields[4], context);
        if (!fields[5].empty())
            entry.tile = parse_index(fields[5], context);
        entry.config.states = states_from_hex(fields[6], layout.element_count());

        const bool new_family = families.empty() || families.back().kind != kind ||
                                families.back().target_nu_deg != target;
        if (new_family) {
            ConfigFamily family;
            family.kind = kind;
            family.target_nu_deg = target;
            family.eval_nu_deg = target.value_or(0.0);
            families.push_back(std::move(family));
        }
        families.back().entries.push_back(std::move(entry));
    }

    // restore the duplicate flags the writer did not store
    for (ConfigFamily &family : families) {
        std::map<std::vector<std::uint8_t>, std::size_t> seen;
        for (std::size_t i = 0; i < family.entries.size(); ++i) {
            auto [it, inserted] = seen.emplace(family.entries[i].config.states, i);
            family.entries[i].duplicate = !inserted;
        }
    }
    return families;
}

void recompute_predicted(std::vector<ConfigFamily> &families, const SceneGeometry &scene) {
    for (ConfigFamily &family : families) {
        const CascadedChannel casc = cascaded_channel(scene, family.eval_nu_deg);
        for (FamilyEntry &entry : family.entries)
            entry.predicted = effective_channel(casc, entry.config);
    }
}

static const char *kMeasurementHeader = "config_id,nu_deg,re,im";

void save_measurements(const std::vector<ChannelSample> &samples,
                       const std::filesystem::path &path) {
    std::ofstream out = open_output(path);
    out << kMeasurementHeader << '\n';
    for (const ChannelSample &sample : samples)
        out << sample.config_id << ',' << fmt_double(sample.nu_deg) << ','
            << fmt_double(sample.value.real()) << ',' << fmt_double(sample.value.imag()) << '\n';
    if (!out)
        throw data_error("failed writing '" + path.string() + "'");
}

std::vector<ChannelSample> load_measurements(const std::filesystem::path &path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || line != kMeasurementHeader)
        throw data_error("measurement file '" + path.string() + "' lacks the expected header");

    std::vector<ChannelSample> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const std::string context = path.string() + ":" + std::to_string(line_no);
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 4)
            throw data_error("expected 4 fields in " + context);
        ChannelSample sample;
        sample.config_id = fields[0];
        sample.nu_deg = parse_double(fields[1], context);
        sample.value = {parse_double(fields[2], context), parse_double(fields[3], context)};
        samples.push_back(std::move(sample));
    }
    return samples;
}

static const char *kBeampatternHeader = "nu_deg,mag_db,mode";

void save_beampatterns(const std::vector<Beampattern> &patterns,
                       const std::filesystem::path &path) {
    std::ofstream out = open_output(path);
    out << kBeampatternHeader << '\n';
    for (const Beampattern &pattern : patterns)
        for (std::size_t i = 0; i < pattern.nu_deg.size(); ++i)
            out << fmt_double(pattern.nu_deg[i]) << ',' << fmt_double(pattern.mag_db[i]) << ','
                << pattern.mode << '\n';
    if (!out)
        throw data_error("failed writing '" + path.string() + "'");
}

std::vector<Beampattern> load_beampatterns(const std::filesystem::path &path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || line != kBeampatternHeader)
        throw data_error("beampattern file '" + path.string() + "' lacks the expected header");

    std::vector<Beampattern> patterns;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const std::string context = path.string() + ":" + std::to_string(line_no);
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 3)
            throw data_error("expected 3 fields in " + context);
        auto it = std::find_if(patterns.begin(), patterns.end(),
                               [&](const Beampattern &p) { return p.mode == fields[2]; });
        if (it == patterns.end()) {
            patterns.push_back(Beampattern{{}, {}, fields[2]});
            it = std::prev(patterns.end());
        }
        it->nu_deg.push_back(parse_double(fields[0], context));
        it->mag_db.push_back(parse_double(fields[1], context));
    }
    return patterns;
}

void save_alpha_fits(const AlphaFitFile &file, const std::filesystem::path &path) {
    json doc;
    doc["policy"] = file.policy;
    doc["fits"] = json::array();
    for (const FitOutcome &outcome : file.fits) {
        json fit;
        fit["nu_deg"] = outcome.nu_deg;
        if (outcome.report) {
            const FitReport &report = *outcome.report;
            fit["rows_used"] = report.rows_used;
            fit["residual_norm"] = report.residual_norm;
            fit["condition_estimate"] = report.condition_estimate;
            fit["ridge"] = report.ridge_used;
            fit["magnitude_violations"] = report.magnitude_violations;
            json alpha = json::array();
            for (const cdouble &a : report.alpha.alpha)
                alpha.push_back({{"re", a.real()}, {"im", a.imag()}});
            fit["alpha"] = std::move(alpha);
        } else {
            fit["error"] = outcome.error_message;
        }
        doc["fits"].push_back(std::move(fit));
    }
    dump_json(doc, path);
}

AlphaFitFile load_alpha_fits(const std::filesystem::path &path) {
    const json doc = load_json(path);
    AlphaFitFile file;
    try {
        file.policy = doc.value("policy", std::string("single_tiled"));
        for (const json &fit : doc.at("fits")) {
            FitOutcome outcome;
            outcome.nu_deg = fit.at("nu_deg").get<double>();
            if (fit.contains("error")) {
                outcome.error_message = fit.at("error").get<std::string>();
            } else {
                FitReport report;
                report.rows_used = fit.at("rows_used").get<std::size_t>();
                report.residual_norm = fit.at("residual_norm").get<double>();
                report.condition_estimate = fit.at("condition_estimate").get<double>();
                report.ridge_used = fit.value("ridge", 0.0);
                report.magnitude_violations =
                    fit.value("magnitude_violations", std::vector<std::size_t>{});
                report.alpha.nu_deg = outcome.nu_deg;
                for (const json &a : fit.at("alpha"))
                    report.alpha.alpha.emplace_back(a.at("re").get<double>(),
                                                    a.at("im").get<double>());
                outcome.report = std::move(report);
            }
            file.fits.push_back(std::move(outcome));
        }
    } catch (const json::exception &e) {
        throw data_error("bad alpha file '" + path.string() + "': " + e.what());
    }
    return file;
}

AlphaTable alpha_table_from_fits(const AlphaFitFile &file) {
    AlphaTable table;
    for (const FitOutcome &outcome : file.fits)
        if (outcome.report)
            table[outcome.nu_deg] = outcome.report->alpha;
    return table;
}

void save_manifest(const RunManifest &manifest, const std::filesystem::path &path) {
    json doc;
    doc["tool"] = manifest.tool;
    doc["version"] = manifest.version;
    doc["subcommand"] = manifest.subcommand;
    json params = json::object();
    for (const auto &[key, value] : manifest.parameters)
        params[key] = value;
    doc["parameters"] = std::move(params);
    doc["inputs"] = manifest.inputs;
    doc["outputs"] = manifest.outputs;
    dump_json(doc, path);
}

RunManifest load_manifest(const std::filesystem::path &path) {
    const json doc = load_json(path);
    RunManifest manifest;
    try {
        manifest.tool = doc.value("tool", std::string("riscal"));
        manifest.version = doc.at("version").get<std::string>();
        manifest.subcommand = doc.at("subcommand").get<std::string>();
        for (const auto &[key, value] : doc.at("parameters").items())
            manifest.parameters.emplace_back(key, value.get<std::string>());
        manifest.inputs = doc.value("inputs", std::vector<std::string>{});
        manifest.outputs = doc.value("outputs", std::vector<std::string>{});
    } catch (const json::exception &e) {
        throw data_error("bad manifest '" + path.string() + "': " + e.what());
    }
    return manifest;
}

} // namespace riscal
