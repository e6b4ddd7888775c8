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

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace bsq;

TEST_CASE("grid layout")
{
    GridLayout g;
    CHECK(g.pitch() == 134.0);
    CHECK(g.blocks().size() == 9);
    auto b = g.block(1, 2);
    CHECK(b.x0 == 134.0);
    CHECK(b.y0 == 268.0);
    CHECK(b.x1 == 254.0);
    CHECK(b.y1 == 388.0);

    // along a street: clear; through a block: blocked; grazing an edge is clear
    CHECK(g.line_of_sight(0, 127, 400, 127));
    CHECK_FALSE(g.line_of_sight(60, 127, 60, 300));
    CHECK(g.line_of_sight(120, 0, 120, 120));
    // diagonal across an intersection stays in the streets
    CHECK(g.line_of_sight(121, 121, 133, 133));
    CHECK_FALSE(g.line_of_sight(10, 10, 300, 300));
}

TEST_CASE("sidewalk graph")
{
    GridLayout layout;
    SidewalkGraph g(layout);
    CHECK(g.nodes().size() == 36);
    // 4 ring edges per block, 2 crosswalks per internal street crossing in each direction
    CHECK(g.edges().size() == 36 + 2 * 6 + 2 * 6);
    for (auto &e : g.edges())
        CHECK(e.length > 0.0);

    auto street = g.street_edges(1);
    CHECK(street.size() == 6);
    for (std::size_t e : street)
    {
        auto a = g.nodes()[g.edges()[e].a];
        CHECK((std::abs(a.y - 121.5) < 1e-9 || std::abs(a.y - 132.5) < 1e-9));
    }
    CHECK(g.street_edges(0).size() == 3);
    CHECK_THROWS(g.street_edges(4));
}

TEST_CASE("infrastructure placement")
{
    ScenarioConfig cfg;
    auto p = place_infrastructure(cfg);
    CHECK(p.ncr == Vec3{255.0, 133.0, 10.0});
    CHECK(p.gnb == Vec3{255.0, 389.0, 25.0});
    // two pitches apart minus the street width, plus the curb offsets on each side
    CHECK(norm(Vec3{p.gnb.x, p.gnb.y, 0} - Vec3{p.ncr.x, p.ncr.y, 0}) ==
          doctest::Approx(2 * 134.0 - 14.0 + 2 * 1.0));
    CHECK(p.gnb.z == 25.0);
    CHECK(p.ncr.z == 10.0);
    // the gNB cannot see the UE street directly: a block lies in between
    GridLayout l;
    CHECK_FALSE(l.line_of_sight(p.gnb.x, p.gnb.y, 60.0, 127.0));
    CHECK(l.line_of_sight(p.gnb.x, p.gnb.y, p.ncr.x, p.ncr.y));

    ScenarioConfig bad = cfg;
    bad.ue_street = 3;
    CHECK_THROWS_AS(place_infrastructure(bad), std::invalid_argument);
}

TEST_CASE("pedestrians start on the UE street sidewalks")
{
    ScenarioConfig cfg;
    SidewalkGraph g(cfg.layout);
    std::mt19937_64 rng(4);
    auto peds = place_pedestrians(g, cfg, rng);
    REQUIRE(peds.size() == 72);
    auto walks = cfg.layout.street_sidewalks(1);
    for (auto &p : peds)
    {
        auto q = pedestrian_position(g, p, cfg.ue_height_m);
        CHECK(q.z == 1.5);
        bool inside = false;
        for (auto &r : walks)
            inside = inside || r.contains(q.x, q.y);
        CHECK(inside);
    }
}

TEST_CASE("pedestrian mobility")
{
    ScenarioConfig cfg;
    SidewalkGraph g(cfg.layout);
    const double v = 3.0 / 3.6;

    // one slot at 3 km/h
    Pedestrian p{g.street_edges(1)[0], 50.0, true};
    auto before = pedestrian_position(g, p, 1.5);
    std::vector<Pedestrian> one{p};
    std::mt19937_64 rng(1);
    move_pedestrians(g, one, v, 0.25e-3, cfg.turns, rng);
    auto after = pedestrian_position(g, one[0], 1.5);
    CHECK(norm(after - before) == doctest::Approx(0.2083e-3).epsilon(1e-3));
    CHECK(one[0].edge == p.edge);

    // long walks stay on the graph
    std::mt19937_64 rng2(8);
    auto peds = place_pedestrians(g, cfg, rng2);
    for (int step = 0; step < 2000; ++step)
        move_pedestrians(g, peds, 10.0, 0.5, cfg.turns, rng2);
    for (auto &q : peds)
    {
        const auto &e = g.edges()[q.edge];
        CHECK(q.s >= 0.0);
        CHECK(q.s <= e.length + 1e-9);
        auto pos = pedestrian_position(g, q, 1.5);
        bool on_walk = false;
        for (auto &b : cfg.layout.blocks())
        {
            Rect ring{b.x0 - 3, b.y0 - 3, b.x1 + 3, b.y1 + 3};
            on_walk = on_walk || (ring.contains(pos.x, pos.y) && !Rect{b.x0 + 1e-6, b.y0 + 1e-6, b.x1 - 1e-6, b.y1 - 1e-6}.contains(pos.x, pos.y, 0));
        }
        // crosswalks run between rings over the street
        on_walk = on_walk || e.crosswalk;
        CHECK(on_walk);
    }
    CHECK_THROWS(move_pedestrians(g, peds, 1.0, 0.0, cfg.turns, rng2));
}
