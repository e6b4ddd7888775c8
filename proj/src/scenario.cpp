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

#include "beamsquint/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bsq
{
    Rect GridLayout::block(std::size_t i, std::size_t j) const
    {
        const double p = pitch();
        return {double(i) * p, double(j) * p, double(i) * p + block_size_m, double(j) * p + block_size_m};
    }

    std::vector<Rect> GridLayout::blocks() const
    {
        std::vector<Rect> out;
        for (std::size_t j = 0; j < blocks_y; ++j)
            for (std::size_t i = 0; i < blocks_x; ++i)
                out.push_back(block(i, j));
        return out;
    }

    std::vector<Rect> GridLayout::street_sidewalks(std::size_t k) const
    {
        if (k > blocks_y)
            throw std::invalid_argument("street index out of range");
        const double w = sidewalk_width_m;
        std::vector<Rect> out;
        for (std::size_t i = 0; i < blocks_x; ++i)
        {
            if (k < blocks_y) // blocks above the street: their lower sidewalk
            {
                const Rect b = block(i, k);
                out.push_back({b.x0 - w, b.y0 - w, b.x1 + w, b.y0});
            }
            if (k > 0) // blocks below the street: their upper sidewalk
            {
                const Rect b = block(i, k - 1);
                out.push_back({b.x0 - w, b.y1, b.x1 + w, b.y1 + w});
            }
        }
        return out;
    }

    namespace
    {
        // Liang-Barsky clip; true if the segment has a strictly interior overlap with the rectangle
        bool segment_hits(const Rect &r, double ax, double ay, double bx, double by)
        {
            constexpr double eps = 1e-9;
            const Rect in{r.x0 + eps, r.y0 + eps, r.x1 - eps, r.y1 - eps};
            double t0 = 0.0, t1 = 1.0;
            const double dx = bx - ax, dy = by - ay;
            const double p[4] = {-dx, dx, -dy, dy};
            const double q[4] = {ax - in.x0, in.x1 - ax, ay - in.y0, in.y1 - ay};
            for (int i = 0; i < 4; ++i)
            {
                if (p[i] == 0.0)
                {
                    if (q[i] < 0.0)
                        return false;
                    continue;
                }
                const double t = q[i] / p[i];
                if (p[i] < 0.0)
                    t0 = std::max(t0, t);
                else
                    t1 = std::min(t1, t);
                if (t0 > t1)
                    return false;
            }
            return t1 > t0;
        }
    }

    bool GridLayout::line_of_sight(double ax, double ay, double bx, double by) const
    {
        for (const auto &b : blocks())
            if (segment_hits(b, ax, ay, bx, by))
                return false;
        return true;
    }

    // ---------------------------------------------------------------- sidewalk graph

    SidewalkGraph::SidewalkGraph(const GridLayout &layout) : layout_(layout)
    {
        const double h = 0.5 * layout.sidewalk_width_m;
        const std::size_t nx = layout.blocks_x, ny = layout.blocks_y;

        // ring corner (i, j, c) with c = 0 lower-left, 1 lower-right, 2 upper-right, 3 upper-left
        auto corner_id = [&](std::size_t i, std::size_t j, std::size_t c) { return (j * nx + i) * 4 + c; };
        nodes_.resize(nx * ny * 4);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
            {
                const Rect b = layout.block(i, j);
                nodes_[corner_id(i, j, 0)] = {b.x0 - h, b.y0 - h, 0.0};
                nodes_[corner_id(i, j, 1)] = {b.x1 + h, b.y0 - h, 0.0};
                nodes_[corner_id(i, j, 2)] = {b.x1 + h, b.y1 + h, 0.0};
                nodes_[corner_id(i, j, 3)] = {b.x0 - h, b.y1 + h, 0.0};
            }

        auto add = [&](std::size_t a, std::size_t b, bool crosswalk) {
            edges_.push_back({a, b, crosswalk, norm(nodes_[b] - nodes_[a])});
        };

        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
            {
                add(corner_id(i, j, 0), corner_id(i, j, 1), false); // lower side
                add(corner_id(i, j, 1), corner_id(i, j, 2), false); // right side
                add(corner_id(i, j, 3), corner_id(i, j, 2), false); // upper side
                add(corner_id(i, j, 0), corner_id(i, j, 3), false); // left side
            }
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
            {
                if (i + 1 < nx) // across the vertical street to the right
                {
                    add(corner_id(i, j, 1), corner_id(i + 1, j, 0), true);
                    add(corner_id(i, j, 2), corner_id(i + 1, j, 3), true);
                }
                if (j + 1 < ny) // across the horizontal street above
                {
                    add(corner_id(i, j, 3), corner_id(i, j + 1, 0), true);
                    add(corner_id(i, j, 2), corner_id(i, j + 1, 1), true);
                }
            }

        incident_.resize(nodes_.size());
        for (std::size_t e = 0; e < edges_.size(); ++e)
        {
            incident_[edges_[e].a].push_back(e);
            incident_[edges_[e].b].push_back(e);
        }
    }

    std::vector<std::size_t> SidewalkGraph::street_edges(std::size_t k) const
    {
        if (k > layout_.blocks_y)
            throw std::invalid_argument("street index out of range");
        const double h = 0.5 * layout_.sidewalk_width_m;
        const double y_lo = double(k) * layout_.pitch() - layout_.street_width_m + h;
        const double y_hi = double(k) * layout_.pitch() - h;

        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < edges_.size(); ++e)
        {
            const auto &ed = edges_[e];
            if (ed.crosswalk)
                continue;
            const Vec3 a = nodes_[ed.a], b = nodes_[ed.b];
            const bool horizontal = a.y == b.y;
            if (horizontal && (std::abs(a.y - y_lo) < 1e-9 || std::abs(a.y - y_hi) < 1e-9))
                out.push_back(e);
        }
        return out;
    }

    Vec3 pedestrian_position(const SidewalkGraph &g, const Pedestrian &p, double height_m)
    {
        const auto &e = g.edges()[p.edge];
        const Vec3 a = g.nodes()[e.a], b = g.nodes()[e.b];
        const double t = e.length > 0.0 ? p.s / e.length : 0.0;
        const Vec3 q = a + t * (b - a);
        return {q.x, q.y, height_m};
    }

    namespace
    {
        // Heading change from `in` to `out` (unit 2D vectors): +1 left, -1 right, 0 straight, 2 reverse
        int turn_kind(Vec3 in, Vec3 out)
        {
            const double c = in.x * out.x + in.y * out.y;
            const double s = in.x * out.y - in.y * out.x;
            if (c > 0.5)
                return 0;
            if (c < -0.5)
                return 2;
            return s > 0.0 ? 1 : -1;
        }

        Vec3 heading(const SidewalkGraph &g, std::size_t edge, bool forward)
        {
            const auto &e = g.edges()[edge];
            Vec3 d = g.nodes()[e.b] - g.nodes()[e.a];
            d = (1.0 / e.length) * d;
            return forward ? d : -1.0 * d;
        }

        void choose_next(const SidewalkGraph &g, Pedestrian &p, std::size_t node, const TurnProbabilities &turns,
                         std::mt19937_64 &rng)
        {
            const Vec3 in = heading(g, p.edge, p.forward);
            std::vector<std::pair<std::size_t, double>> options;
            for (std::size_t e : g.incident(node))
            {
                if (e == p.edge)
                    continue;
                const bool fwd = g.edges()[e].a == node;
                const int kind = turn_kind(in, heading(g, e, fwd));
                double w = 0.0;
                if (kind == 0)
                    w = turns.continue_straight;
                else if (g.edges()[e].crosswalk && g.edges()[p.edge].crosswalk == false)
                    w = turns.cross;
                else if (kind == 1)
                    w = turns.turn_left;
                else if (kind == -1)
                    w = turns.turn_right;
                if (w > 0.0)
                    options.emplace_back(e, w);
            }

            if (options.empty()) // dead end: walk back
            {
                p.forward = !p.forward;
                p.s = p.forward ? 0.0 : g.edges()[p.edge].length;
                return;
            }

            double total = 0.0;
            for (auto &o : options)
                total += o.second;
            double r = std::uniform_real_distribution<double>(0.0, total)(rng);
            std::size_t pick = options.back().first;
            for (auto &o : options)
            {
                if (r < o.second)
                {
                    pick = o.first;
                    break;
                }
                r -= o.second;
            }
            p.edge = pick;
            p.forward = g.edges()[pick].a == node;
            p.s = p.forward ? 0.0 : g.edges()[pick].length;
        }
    }

    void move_pedestrians(const SidewalkGraph &g, std::vector<Pedestrian> &peds, double speed_mps, double dt_s,
                          const TurnProbabilities &turns, std::mt19937_64 &rng)
    {
        if (!(dt_s > 0.0))
            throw std::invalid_argument("move_pedestrians: time step must be positive");
        for (auto &p : peds)
        {
            double remaining = speed_mps * dt_s;
            while (remaining > 0.0)
            {
                const auto &e = g.edges()[p.edge];
                const double to_end = p.forward ? e.length - p.s : p.s;
                if (remaining < to_end)
                {
                    p.s += p.forward ? remaining : -remaining;
                    break;
                }
                remaining -= to_end;
                const std::size_t node = p.forward ? e.b : e.a;
                p.s = p.forward ? e.length : 0.0;
                choose_next(g, p, node, turns, rng);
            }
        }
    }

    void ScenarioConfig::validate() const
    {
        if (layout.blocks_x == 0 || layout.blocks_y == 0)
            throw std::invalid_argument("scenario: the grid needs at least one block");
        if (!(layout.block_size_m > 0.0) || !(layout.street_width_m > 0.0) || !(layout.sidewalk_width_m > 0.0) ||
            2.0 * layout.sidewalk_width_m >= layout.street_width_m)
            throw std::invalid_argument("scenario: invalid block, street or sidewalk size");
        if (ue_street > layout.blocks_y)
            throw std::invalid_argument("scenario: UE street index out of range");
        if (ncr_cross_street > layout.blocks_x)
            throw std::invalid_argument("scenario: NCR cross street index out of range");
        if (ue_street + gnb_block_offset > layout.blocks_y)
            throw std::invalid_argument("scenario: gNB street lies outside the grid");
        if (curb_offset_m < 0.0 || curb_offset_m >= layout.street_width_m)
            throw std::invalid_argument("scenario: curb offset must lie inside the street");
        if (ue_speed_kmh < 0.0)
            throw std::invalid_argument("scenario: UE speed must be non-negative");
        if (turns.continue_straight < 0 || turns.turn_left < 0 || turns.turn_right < 0 || turns.cross < 0 ||
            turns.continue_straight + turns.turn_left + turns.turn_right + turns.cross <= 0.0)
            throw std::invalid_argument("scenario: turn probabilities must be non-negative with a positive sum");
        if (!(gnb_height_m > 0.0) || !(ncr_height_m > 0.0) || !(ue_height_m > 0.0))
            throw std::invalid_argument("scenario: node heights must be positive");
    }

    NodePlacement place_infrastructure(const ScenarioConfig &cfg)
    {
        cfg.validate();
        const double p = cfg.layout.pitch();
        const double w = cfg.layout.street_width_m;

        // NCR on the UE street, at its corner with the cross street, next to the block above the street
        const double ncr_x = double(cfg.ncr_cross_street) * p - w + cfg.curb_offset_m;
        const double ncr_y = double(cfg.ue_street) * p - cfg.curb_offset_m;
        // gNB in the same cross-street column, gnb_block_offset streets further up
        const double gnb_y = double(cfg.ue_street + cfg.gnb_block_offset) * p - w + cfg.curb_offset_m;
        return {{ncr_x, gnb_y, cfg.gnb_height_m}, {ncr_x, ncr_y, cfg.ncr_height_m}};
    }

    std::vector<Pedestrian> place_pedestrians(const SidewalkGraph &g, const ScenarioConfig &cfg, std::mt19937_64 &rng)
    {
        const auto edges = g.street_edges(cfg.ue_street);
        if (edges.empty())
            throw std::invalid_argument("scenario: UE street has no sidewalks");
        double total = 0.0;
        for (std::size_t e : edges)
            total += g.edges()[e].length;

        std::uniform_real_distribution<double> along(0.0, total);
        std::bernoulli_distribution dir(0.5);
        std::vector<Pedestrian> out;
        out.reserve(cfg.n_ues);
        for (std::size_t u = 0; u < cfg.n_ues; ++u)
        {
            double r = along(rng);
            std::size_t pick = edges.back();
            for (std::size_t e : edges)
            {
                if (r < g.edges()[e].length)
                {
                    pick = e;
                    break;
                }
                r -= g.edges()[e].length;
            }
            Pedestrian p;
            p.edge = pick;
            p.s = std::min(r, g.edges()[pick].length);
            p.forward = dir(rng);
            out.push_back(p);
        }
        return out;
    }
}
