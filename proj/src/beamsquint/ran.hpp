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
#include "beamsquint/channel.hpp"
#include "beamsquint/scenario.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bsq
{
    // ---------------------------------------------------------------- link adaptation

    struct McsEntry
    {
        double threshold_db;
        double spectral_efficiency; // bits/s/Hz
    };

    // Rows ordered by increasing threshold; row index is the MCS index
    struct McsTable
    {
        std::vector<McsEntry> rows;

        static McsTable builtin();
        static McsTable from_csv(const std::string &path); // index,threshold_db,spectral_efficiency
        void validate() const;                             // throws std::invalid_argument
    };

    struct OllaState
    {
        double offset_db = 0.0;
        double step_up_db = 0.1;
        double step_down_db = 1.0;
    };

    // Highest MCS whose threshold is <= sinr_est + offset; 0 if none
    std::size_t link_adapt(double sinr_est_db, const OllaState &olla, const McsTable &table);

    void olla_update(OllaState &olla, bool ack);

    struct TransmitResult
    {
        bool ack;
        double bits; // capacity of the allocation on ACK, 0 on NACK
    };

    // Threshold decoding model: ACK iff the actual SINR reaches the MCS threshold
    TransmitResult transmit(std::size_t mcs, double sinr_actual_db, const McsTable &table, std::size_t n_rbs,
                            double rb_bandwidth_hz, double slot_s);

    // ---------------------------------------------------------------- repeater

    // g = min(10^(G/10), p_ncr / (sigma^2 + gamma p_tx)), powers in watts
    double ncr_gain(double p_ncr_w, double noise_w, double gamma, double p_tx_w, double fixed_gain_db);

    // ---------------------------------------------------------------- scheduling

    struct Bearer
    {
        std::uint64_t wait_key = 0; // smaller = waiting longer
        std::size_t demand_rbs = 0; // RBs still wanted this TTI
    };

    // Each RB in index order goes to the backlogged bearer with the smallest wait key; its key is then
    // renewed from `clock` so the others move ahead. Returns the UE per RB (-1 if unallocated).
    std::vector<int> rr_schedule(std::vector<Bearer> &bearers, std::size_t n_rbs, std::uint64_t &clock);

    // ---------------------------------------------------------------- simulation

    enum class Mode
    {
        baseline,    // measurements and data at f2
        squint,      // measurements at f1, data at f2 with the f1 beams
        compensated  // measurements at f1, data at f2 with compensated beams
    };
    std::string_view to_string(Mode m);
    Mode mode_from_string(std::string_view s);

    enum class ServingPath
    {
        direct,
        via_ncr
    };
    std::string_view to_string(ServingPath p);

    struct RanConfig
    {
        double f1_hz = 28e9;
        std::size_t array_elements = 256; // gNB and NCR panels
        std::size_t oversampling = 1;
        ElementPattern infra_element = ElementPattern::sector(8.0);
        ElementPattern ue_element = ElementPattern::omni();

        std::size_t n_rbs = 66;
        std::size_t subcarriers_per_rb = 12;
        double subcarrier_spacing_hz = 60e3;
        double slot_s = 0.25e-3;

        double gnb_tx_power_dbm = 35.0;
        double ncr_max_output_dbm = 33.0;
        double ncr_fixed_gain_db = 60.0;
        double ue_noise_figure_db = 9.0;
        double ncr_noise_figure_db = 9.0;
        bool ncr_enabled = true;

        PathLossModel los;
        PathLossModel nlos{32.4, 31.9, 20.0};
        bool blockage = true;
        double shadowing_sigma_db = 4.0;
        double shadowing_decorrelation_m = 13.0;

        std::size_t access_sweep_period = 20;
        std::size_t backhaul_sweep_period = 200;
        double main_direction_threshold_db = 3.0;
        double direction_error_deg = 0.0;

        double olla_step_up_db = 0.1;
        double olla_step_down_db = 1.0;

        double packet_bits = 4096.0;
        std::size_t packet_interval_slots = 4;

        McsTable mcs = McsTable::builtin();

        double rb_bandwidth_hz() const { return double(subcarriers_per_rb) * subcarrier_spacing_hz; }
        void validate() const; // throws std::invalid_argument
    };

    struct KpiRecord
    {
        std::size_t drop;
        std::size_t tti;
        std::size_t ue;
        ServingPath path;
        Mode mode;
        std::size_t n_rbs;
        double sinr_db;
        std::size_t mcs;
        bool ack;
        double bits;
    };

    // Codebook of one panel type plus the main-lobe directions of every entry at f1
    struct CodebookCatalog
    {
        ArrayGeometry geometry;
        ElementPattern element;
        Codebook codebook;
        std::vector<std::vector<Direction>> main_directions; // per entry, strongest first

        static std::shared_ptr<const CodebookCatalog> build(std::size_t n_elements, std::size_t oversampling,
                                                            const ElementPattern &element, double f1_hz,
                                                            double threshold_db);
    };

    // Best entry toward a local direction: argmax |B|^2, lowest index on ties
    std::size_t best_beam(const CodebookCatalog &cat, double frequency_hz, const Direction &dir);

    struct NodeInfo
    {
        std::string name;
        std::string role;
        Vec3 position;
    };

    // One Monte-Carlo drop of the downlink system in a given mode
    class Simulation
    {
    public:
        Simulation(const RanConfig &ran, const ScenarioConfig &scenario, double delta_f_hz, Mode mode,
                   std::uint64_t seed, std::size_t drop, std::shared_ptr<const CodebookCatalog> catalog);

        // Advances one TTI and returns the records of the UEs scheduled in it
        std::vector<KpiRecord> step();

        std::size_t tti() const { return tti_; }
        std::vector<NodeInfo> nodes() const;

        struct UeLink
        {
            ServingPath path = ServingPath::direct;
            std::size_t gnb_beam = 0;
            std::size_t ncr_beam = 0;
            double sinr_est_db = 0.0;
            double sinr_actual_db = 0.0;
        };
        const UeLink &ue_link(std::size_t ue) const { return links_.at(ue); }

    private:
        struct Ue
        {
            Pedestrian walker;
            Vec3 position;
            std::deque<double> queue; // remaining bits per packet
            double backlog = 0.0;
            std::size_t traffic_phase = 0;
            OllaState olla;
        };

        void backhaul_sweep();
        void access_sweep();
        double frequency_for_measurement() const;
        BeamWeights data_weights(const Antenna &ant, std::size_t beam, Vec3 target);
        double shadowing_gnb(Vec3 p) const;
        double shadowing_ncr(Vec3 p) const;
        double path_gain(Vec3 a, Vec3 b, double f, double shadow_db) const;

        RanConfig ran_;
        ScenarioConfig scenario_;
        double delta_f_;
        Mode mode_;
        std::size_t drop_;
        std::shared_ptr<const CodebookCatalog> catalog_;

        SidewalkGraph graph_;
        Antenna gnb_, ncr_access_, ncr_backhaul_;
        std::vector<Ue> ues_;
        std::vector<UeLink> links_;
        std::optional<ShadowingField> shadow_gnb_, shadow_ncr_;

        std::mt19937_64 mobility_rng_;
        std::mt19937_64 estimate_rng_;

        // backhaul state
        std::size_t bh_gnb_beam_ = 0, bh_ncr_beam_ = 0;
        double gamma_meas_ = 0.0, gamma_data_ = 0.0;

        double p_tx_rb_w_ = 0.0, p_ncr_rb_w_ = 0.0, noise_ue_w_ = 0.0, noise_ncr_w_ = 0.0;
        std::size_t tti_ = 0;
        std::uint64_t clock_ = 0;
        std::vector<std::uint64_t> wait_keys_;
    };

    // Seeds for independent random streams of one drop
    std::uint64_t stream_seed(std::uint64_t seed, std::size_t drop, std::uint64_t stream);
}
