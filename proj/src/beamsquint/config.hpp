// SPDX-License-Identifier: Apache-2.0
//
// beamsquint - subband beam-squint compensation and repeater-assisted RAN simulation
// Copyright (C) 2026 The beamsquint authors
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

#include "beamsquint/beamforming.hpp"
#include "beamsquint/ran.hpp"
#include "beamsquint/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsq
{
    inline constexpr int config_schema_version = 1;

    // Invalid configuration; `field` is the dotted path of the offending entry
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field, const std::string &message)
            : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field))
        {
        }
        const std::string &field() const { return field_; }

    private:
        std::string field_;
    };

    struct ArraySpec
    {
        ArrayKind kind = ArrayKind::ula;
        std::size_t elements = 256; // ULA
        std::size_t rows = 32;      // URA
        std::size_t cols = 32;      // URA
        double design_frequency_hz = 28e9;

        ArrayGeometry make() const;
        std::size_t element_count() const { return kind == ArrayKind::ula ? elements : rows * cols; }
    };

    // A beam is a codebook entry or a matched beam toward a direction
    struct BeamSpec
    {
        std::string label;
        std::optional<std::size_t> dft_index;
        std::optional<double> steer_azimuth_deg;
        double steer_zenith_deg = 90.0;
        // Side served by an ambiguous (multi-lobe) beam; picks u* for compensation
        std::optional<double> served_azimuth_deg;
        double served_zenith_deg = 90.0;
    };

    struct PatternConfig
    {
        ArraySpec array;
        ElementPattern element = ElementPattern::sector(8.0);
        std::size_t oversampling = 1;
        std::vector<BeamSpec> beams;
        std::vector<double> frequencies_hz;
        bool compensation = false;
        std::string cut = "azimuth"; // azimuth | zenith | both
        double coarse_step_deg = 0.1;
        double fine_step_deg = 0.01;
        double fine_window_deg = 5.0;
        double peak_grid_step_deg = 0.1;
    };

    struct SweepOffsetConfig
    {
        ArraySpec array;
        ElementPattern element = ElementPattern::sector(8.0);
        std::size_t oversampling = 1;
        std::vector<BeamSpec> beams;
        double delta_f_min_hz = -1e9;
        double delta_f_max_hz = 1e9;
        double delta_f_step_hz = 1e8;
    };

    struct SimulationConfig
    {
        RanConfig ran;
        ScenarioConfig scenario;
        std::vector<std::size_t> array_elements{64, 128, 256};
        std::vector<double> delta_f_hz{0.0, 100e6, 500e6, 1e9};
        std::vector<Mode> modes{Mode::baseline, Mode::squint, Mode::compensated};
        std::size_t drops = 2;
        std::size_t ttis = 2000;
        std::uint64_t seed = 1;
        std::size_t threads = 1;
        bool write_records = true;
    };

    struct Config
    {
        int schema_version = config_schema_version;
        std::optional<PatternConfig> pattern;
        std::optional<SweepOffsetConfig> sweep_offset;
        std::optional<SimulationConfig> simulation;
    };

    // Throws ConfigError. Relative file references (mcs_table_file) resolve against `base_dir`.
    Config parse_config(const std::string &text, const std::string &base_dir = ".");
    Config load_config(const std::string &path);

    // Canonical JSON with every field spelled out; parse_config(serialize_config(c)) reproduces c
    std::string serialize_config(const Config &cfg);
}
