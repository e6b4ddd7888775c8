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

#include "beamsquint/channel.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <random>

using namespace bsq;

TEST_CASE("path_loss_db")
{
    PathLossModel m{28.0, 22.0, 20.0};
    CHECK(path_loss_db(m, 1.0, 1e9) == doctest::Approx(28.0));
    CHECK(path_loss_db(m, 200, 28e9) - path_loss_db(m, 100, 28e9) == doctest::Approx(22.0 * std::log10(2.0)));
    CHECK(path_loss_db(m, 200, 28e9) == doctest::Approx(28 + 22 * std::log10(200.0) + 20 * std::log10(28.0)));
    CHECK(std::abs(path_loss_db(m, 200, 28e9) - 107.55) < 0.02);
    CHECK_THROWS_AS(path_loss_db(m, 0.0, 28e9), std::invalid_argument);
    CHECK_THROWS_AS(path_loss_db(m, 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("path_loss_delta_db")
{
    CHECK(path_loss_delta_db(20, 28e9, 0) == 0.0);
    CHECK(path_loss_delta_db(20, 28e9, 1e9) == doctest::Approx(0.3048).epsilon(1e-3));
    double prev = 0;
    for (double df = 1e8; df <= 3e9; df += 1e8)
    {
        double d = path_loss_delta_db(20, 28e9, df);
        CHECK(d > prev);
        prev = d;
    }
    // identity with the difference of full path losses
    PathLossModel m{32.4, 31.9, 20.0};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(10, 2000), f(1e9, 60e9), df(0, 3e9);
    for (int i = 0; i < 100; ++i)
    {
        double d = dist(rng), f1 = f(rng), o = df(rng);
        CHECK(path_loss_delta_db(m.c, f1, o) ==
              doctest::Approx(path_loss_db(m, d, f1 + o) - path_loss_db(m, d, f1)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(path_loss_delta_db(20, 28e9, -1e9), std::invalid_argument);
}

TEST_CASE("noise_power_dbm")
{
    CHECK(noise_power_dbm(1, 1.0, 0.0) == doctest::Approx(-174.0));
    CHECK(noise_power_dbm(12, 60e3, 9.0) == doctest::Approx(-106.427).epsilon(1e-5));
    CHECK(noise_power_dbm(24, 60e3, 9.0) - noise_power_dbm(12, 60e3, 9.0) == doctest::Approx(3.0103).epsilon(1e-4));
    CHECK(w_to_dbm(dbm_to_w(17.5)) == doctest::Approx(17.5));
    CHECK(dbm_to_w(30.0) == doctest::Approx(1.0));
}

TEST_CASE("shadowing field statistics")
{
    ShadowingField zero(1, 13.0, 0.0);
    CHECK(zero(3.0, -7.0) == 0.0);

    ShadowingField f(42, 13.0, 4.0);
    // far-apart points behave as independent draws
    double s = 0, s2 = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
    {
        double v = f(1000.0 * (i % 100), 1000.0 * (i / 100));
        s += v;
        s2 += v * v;
    }
    double var = s2 / n - (s / n) * (s / n);
    CHECK(var == doctest::Approx(16.0).epsilon(0.10));

    // correlation at one decorrelation distance
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> pos(-5000, 5000), ang(0, 2 * pi);
    double sab = 0, saa = 0, sbb = 0, sa = 0, sb = 0;
    for (int i = 0; i < n; ++i)
    {
        double x = pos(rng), y = pos(rng), t = ang(rng);
        double a = f(x, y), b = f(x + 13.0 * std::cos(t), y + 13.0 * std::sin(t));
        sa += a;
        sb += b;
        sab += a * b;
        saa += a * a;
        sbb += b * b;
    }
    double cov = sab / n - sa / n * sb / n;
    double rho = cov / std::sqrt((saa / n - sa / n * sa / n) * (sbb / n - sb / n * sb / n));
    CHECK(rho == doctest::Approx(std::exp(-1.0)).epsilon(0.05 / std::exp(-1.0)));

    // deterministic per seed
    ShadowingField g(42, 13.0, 4.0);
    CHECK(f(12.5, 3.25) == g(12.5, 3.25));
}

TEST_CASE("link_gain")
{
    PathLossModel m{28.0, 22.0, 20.0};
    Antenna a{{0, 0, 10}, {}, std::nullopt, ElementPattern::omni()};
    Antenna b{{150, 40, 1.5}, {}, std::nullopt, ElementPattern::omni()};
    double d = norm(b.position - a.position);
    CHECK(link_gain(a, nullptr, b, nullptr, 28e9, m, 0.0) == doctest::Approx(std::pow(10.0, -path_loss_db(m, d, 28e9) / 10)));
    CHECK(link_gain(a, nullptr, b, nullptr, 28e9, m, 3.0) ==
          doctest::Approx(std::pow(10.0, -(path_loss_db(m, d, 28e9) + 3.0) / 10)));

    // panels facing each other with matched beams
    Antenna tx{{0, 0, 10}, {0.0, 0.0}, make_ula(16, 28e9), ElementPattern::sector(8.0)};
    Antenna rx{{120, 50, 10}, {180.0, 0.0}, make_ula(8, 28e9), ElementPattern::sector(8.0)};
    auto dtx = local_direction(tx, rx.position);
    auto drx = local_direction(rx, tx.position);
    auto wtx = conjugate_steering(*tx.array, 28e9, dtx);
    auto wrx = conjugate_steering(*rx.array, 28e9, drx);
    double expect = 16 * element_gain(tx.element, dtx) * 8 * element_gain(rx.element, drx) *
                    std::pow(10.0, -path_loss_db(m, norm(rx.position - tx.position), 28e9) / 10);
    CHECK(link_gain(tx, &wtx, rx, &wrx, 28e9, m, 0.0) == doctest::Approx(expect).epsilon(1e-10));

    // turning the receiver around puts the transmitter in its back lobe
    Antenna back = rx;
    back.mounting.yaw_deg = 0.0;
    auto wback = conjugate_steering(*back.array, 28e9, local_direction(back, tx.position));
    double lost = to_db(link_gain(tx, &wtx, rx, &wrx, 28e9, m, 0.0)) - to_db(link_gain(tx, &wtx, back, &wback, 28e9, m, 0.0));
    CHECK(lost >= 25.0);
}
