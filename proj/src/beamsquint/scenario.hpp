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

#include "beamsquint/geometry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bsq
{
    // Axis-aligned rectangle on the ground plane
    struct Rect
    {
        double x0, y0, x1, y1;
        bool contains(double x, double y, double tol = 1e-9) const
        {
            return x >= x0 - tol && x <= x1 + tol && y >= y0 - tol && y <= y1 + tol;
        }
    };

    // Blocks (i, j) occupy [i p, i p + s] x [j p, j p + s] with pitch p = s + street width.
    // Street k along x (horizontal) spans y in [k p - w, k p]; street k along y spans x in [k p - w, k p].
    // Streets 0 and n_blocks are the outer ring.
    struct GridLayout
    {
        std::size_t blocks_x = 3;
        std::size_t blocks_y = 3;
        double block_size_m = 120.0;
        double street_width_m = 14.0;
        double sidewalk_width_m = 3.0;

        double pitch() const { return block_size_m + street_width_m; }
        Rect block(std::size_t i, std::size_t j) const;
        std::vector<Rect> blocks() const;

        // Sidewalk strips bordering horizontal street k (clipped to the block extents plus corners)
        std::vector<Rect> street_sidewalks(std::size_t k) const;

        // True if the ground segment a-b passes through no block footprint
        bool line_of_sight(double ax, double ay, double bx, double by) const;
    };

    // Pedestrian graph: sidewalk rings at half a sidewalk width outside every block, joined by
    // crosswalks at the intersections.
    class SidewalkGraph
    {
    public:
        struct Edge
        {
            std::size_t a, b;
            bool crosswalk;
            double length;
        };

        explicit SidewalkGraph(const GridLayout &layout);

        const std::vector<Vec3> &nodes() const { return nodes_; }
        const std::vector<Edge> &edges() const { return edges_; }
        const std::vector<std::size_t> &incident(std::size_t node) const { return incident_[node]; }

        // Ring edges running along horizontal street k
        std::vector<std::size_t> street_edges(std::size_t k) const;

    private:
        GridLayout layout_;
        std::vector<Vec3> nodes_;
        std::vector<Edge> edges_;
        std::vector<std::vector<std::size_t>> incident_;
    };

    struct TurnProbabilities
    {
        double continue_straight = 0.5;
        double turn_left = 0.2;
        double turn_right = 0.2;
        double cross = 0.1;
    };

    struct Pedestrian
    {
        std::size_t edge = 0;
        double s = 0.0;       // distance from the edge's first node
        bool forward = true;  // moving from a to b
    };

    Vec3 pedestrian_position(const SidewalkGraph &g, const Pedestrian &p, double height_m);

    // Advances each pedestrian by speed * dt along the graph, choosing a new edge at every node
    void move_pedestrians(const SidewalkGraph &g, std::vector<Pedestrian> &peds, double speed_mps, double dt_s,
                          const TurnProbabilities &turns, std::mt19937_64 &rng);

    struct ScenarioConfig
    {
        GridLayout layout;
        std::size_t ue_street = 1;         // horizontal street hosting the UEs
        std::size_t ncr_cross_street = 2;  // vertical street at whose corner the NCR stands
        std::size_t gnb_block_offset = 2;  // gNB street = ue_street + offset
        double curb_offset_m = 1.0;        // node distance from the block edge
        std::size_t n_ues = 72;
        double ue_speed_kmh = 3.0;
        TurnProbabilities turns;

        double gnb_height_m = 25.0;
        double ncr_height_m = 10.0;
        double ue_height_m = 1.5;

        // panel orientations
        double gnb_yaw_deg = -90.0;
        double gnb_downtilt_deg = 4.0;
        double ncr_access_yaw_deg = -90.0;
        double ncr_access_downtilt_deg = 5.0;
        double ncr_backhaul_yaw_deg = 90.0;
        double ncr_backhaul_downtilt_deg = -3.0;

        void validate() const; // throws std::invalid_argument
    };

    struct NodePlacement
    {
        Vec3 gnb;
        Vec3 ncr;
    };

    NodePlacement place_infrastructure(const ScenarioConfig &cfg);

    // Uniform placement on the sidewalk edges along the UE street, random heading
    std::vector<Pedestrian> place_pedestrians(const SidewalkGraph &g, const ScenarioConfig &cfg, std::mt19937_64 &rng);
}
