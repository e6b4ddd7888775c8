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

#include "beamsquint/config.hpp"
#include "beamsquint/kpi.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace bsq
{
    enum class LogLevel
    {
        info = 0,
        warning = 1
    };
    using LogFn = std::function<void(LogLevel, const std::string &)>;

    // ---------------------------------------------------------------- pattern

    struct PatternPeak
    {
        std::string label;
        double frequency_hz;
        bool compensated;
        Direction peak;
        double peak_gain_db;
        double hpbw_deg;
    };

    // Weights of a configured beam
    BeamWeights beam_weights(const ArraySpec &array, std::size_t oversampling, const BeamSpec &beam);

    // Main-lobe direction at the design frequency used as u*; ambiguous beams use the served side
    Direction beam_reference_direction(const ArrayGeometry &geom, const ElementPattern &element, const BeamWeights &w,
                                       double f1_hz, const BeamSpec &beam, double grid_step_deg);

    // Writes one gain trace per (beam, frequency, compensation) plus pattern_peaks.csv.
    std::vector<PatternPeak> run_pattern(const PatternConfig &cfg, const std::string &out_dir, const LogFn &log);

    // ---------------------------------------------------------------- sweep offset

    struct SweepPoint
    {
        std::string label;
        double delta_f_hz;
        double gain_db;
        double gain_compensated_db;
    };

    // Gain toward each beam's f1 peak versus delta_f, writes sweep_offset.csv
    std::vector<SweepPoint> run_sweep_offset(const SweepOffsetConfig &cfg, const std::string &out_dir,
                                             const LogFn &log);

    // ---------------------------------------------------------------- system simulation

    struct ScenarioKey
    {
        std::size_t array_elements;
        double delta_f_hz;
        Mode mode;
        auto operator<=>(const ScenarioKey &) const = default;
    };

    struct ScenarioResult
    {
        std::vector<KpiRecord> records;       // all drops, drop-major
        std::vector<double> ue_throughput;    // per (drop, UE), bps
        std::vector<double> sinr_samples_db;  // per record
        McsHistogram mcs;
        double thr_p[3];  // 10/50/90
        double sinr_p[3]; // 10/50/90
    };

    struct SimulationResults
    {
        std::vector<ScenarioKey> order; // configuration order
        std::map<ScenarioKey, ScenarioResult> scenarios;
        std::vector<std::vector<NodeInfo>> nodes; // per drop
        std::size_t n_mcs = 0;
    };

    SimulationResults simulate_matrix(const SimulationConfig &cfg, const LogFn &log);
    void write_simulation_outputs(const SimulationConfig &cfg, const SimulationResults &res, const std::string &out_dir);

    // simulate_matrix followed by write_simulation_outputs
    SimulationResults run_simulation(const SimulationConfig &cfg, const std::string &out_dir, const LogFn &log);

    // File name of the per-scenario record table
    std::string records_file_name(const ScenarioKey &key);
}
