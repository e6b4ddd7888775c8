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

#include "beamsquint/beamforming.hpp"
#include "beamsquint/squint.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <random>

using namespace bsq;

namespace
{
    // Array factor of an N-element half-wave ULA with unit-power uniform weights, as a function of
    // the electrical angle x = pi (sin(az) - sin(az0)). Closed form, independent of the library.
    double dirichlet_power(int n, double x)
    {
        if (std::abs(std::sin(x / 2)) < 1e-15)
            return double(n);
        double v = std::sin(n * x / 2) / std::sin(x / 2);
        return v * v / n;
    }

    // Half-power width of the broadside beam from the closed form, by bisection on x
    double dirichlet_hpbw_deg(int n)
    {
        double lo = 0, hi = 2 * pi / n;
        for (int i = 0; i < 200; ++i)
        {
            double mid = 0.5 * (lo + hi);
            (dirichlet_power(n, mid) > n / 2.0 ? lo : hi) = mid;
        }
        return 2 * rad2deg(std::asin(lo / pi));
    }
}

TEST_CASE("element_gain")
{
    CHECK(element_gain(ElementPattern::omni(), Direction(123, 17)) == 1.0);
    auto s = ElementPattern::sector(8.0);
    CHECK(element_gain(s, Direction(0, 90)) == doctest::Approx(6.309573444801933));
    double prev = element_gain(s, Direction(0, 90));
    for (double az = 1; az <= 90; az += 1)
    {
        double g = element_gain(s, Direction(az, 90));
        CHECK(g <= prev);
        prev = g;
    }
    // 3 dB down at half the beamwidth
    CHECK(to_db(element_gain(s, Direction(32.5, 90))) == doctest::Approx(5.0));
    // back lobe floor at G_max - A_max
    CHECK(to_db(element_gain(s, Direction(180, 90))) == doctest::Approx(-22.0));
}

TEST_CASE("steering_vector")
{
    auto g = make_ula(8, 28e9);
    for (auto v : steering_vector(g, 31e9, Direction(0, 90)))
        CHECK(std::abs(v - cdouble(1, 0)) < 1e-15);

    auto g2 = make_ula(2, 28e9);
    auto s = steering_vector(g2, 28e9, Direction(90, 90));
    CHECK(std::arg(s[0]) == doctest::Approx(-pi / 2));
    CHECK(std::arg(s[1]) == doctest::Approx(pi / 2));

    // element-by-element scalar evaluation
    auto g4 = make_ula(4, 28e9);
    auto s4 = steering_vector(g4, 29e9, Direction(35, 90));
    const double d = speed_of_light / 28e9 / 2;
    for (int n = 0; n < 4; ++n)
    {
        double y = (n + 1 - 2.5) * d;
        double ph = 2 * pi * 29e9 / speed_of_light * y * std::sin(35 * pi / 180);
        CHECK(std::abs(s4[n] - std::polar(1.0, ph)) < 1e-12);
    }
}

TEST_CASE("beam_pattern basics")
{
    auto one = make_ula(1, 28e9);
    BeamWeights w1(cvec{1.0});
    auto s = ElementPattern::sector(8.0);
    Direction d(20, 80);
    CHECK(std::abs(beam_pattern(one, s, w1, 28e9, d)) == doctest::Approx(std::sqrt(element_gain(s, d))));

    auto g = make_ula(256, 28e9);
    Direction t(35, 90);
    // conjugate_steering is unit-power, so the coherent sum yields N |B_e|^2
    auto w = conjugate_steering(g, 28e9, t);
    CHECK(w.norm() == doctest::Approx(1.0));
    CHECK(beam_gain(g, s, w, 28e9, t) == doctest::Approx(256 * element_gain(s, t)).epsilon(1e-10));
    // unnormalized matched weights give N^2
    cvec raw(256);
    auto sv = steering_vector(g, 28e9, t);
    for (std::size_t n = 0; n < 256; ++n)
        raw[n] = std::conj(sv[n]);
    CHECK(beam_gain(g, s, BeamWeights(raw), 28e9, t) == doctest::Approx(65536 * element_gain(s, t)).epsilon(1e-10));
}

TEST_CASE("beam_pattern agrees with the offset factorization on a 1 degree grid")
{
    auto g = make_ula(64, 28e9);
    auto s = ElementPattern::sector(8.0);
    auto w = dft_codebook(64, 1, 28e9).entries[13];
    for (double df : {-1e9, 0.3e9, 1e9})
        for (double az = -180; az <= 180; az += 1)
        {
            Direction d(az, 90);
            auto a = beam_pattern(g, s, w, 28e9 + df, d);
            auto b = beam_pattern_offset(g, s, w, 28e9, df, d);
            CHECK(std::abs(a - b) < 1e-10);
        }
    auto u = make_ura(8, 8, 28e9);
    auto wu = dft_codebook_2d(8, 8, 1, 28e9).entries[19];
    for (double zen = 0; zen <= 180; zen += 10)
        for (double az = -180; az <= 180; az += 10)
        {
            Direction d(az, zen);
            CHECK(std::abs(beam_pattern(u, s, wu, 29e9, d) - beam_pattern_offset(u, s, wu, 28e9, 1e9, d)) < 1e-10);
        }
}

TEST_CASE("ULA pattern matches the closed-form array factor")
{
    auto g = make_ula(32, 28e9);
    auto w = conjugate_steering(g, 28e9, Direction(20, 90));
    for (double az = -90; az <= 90; az += 0.7)
    {
        double x = pi * (std::sin(deg2rad(az)) - std::sin(deg2rad(20)));
        CHECK(beam_gain(g, ElementPattern::omni(), w, 28e9, Direction(az, 90)) ==
              doctest::Approx(dirichlet_power(32, x)).epsilon(1e-9));
    }
}

TEST_CASE("find_peak on matched steering")
{
    auto g = make_ula(256, 28e9);
    auto s = ElementPattern::sector(8.0);
    auto w = conjugate_steering(g, 28e9, Direction(35, 90));
    auto p = find_peak(g, s, w, 28e9, 0.1, SearchRegion::azimuth_cut());
    CHECK(std::abs(p.azimuth_deg() - 35.0) < 0.01);

    auto u = make_ura(16, 16, 28e9);
    auto wu = conjugate_steering(u, 28e9, Direction(-25, 110));
    auto pu = find_peak(u, ElementPattern::omni(), wu, 28e9, 0.5, SearchRegion::front_hemisphere());
    CHECK(std::abs(pu.azimuth_deg() + 25.0) < 0.01);
    CHECK(std::abs(pu.zenith_deg() - 110.0) < 0.01);
}

TEST_CASE("hpbw of a broadside beam matches the closed-form width")
{
    for (int n : {16, 64, 256})
    {
        auto g = make_ula(n, 28e9);
        auto w = conjugate_steering(g, 28e9, Direction(0, 90));
        double h = hpbw(g, ElementPattern::omni(), w, 28e9, Direction(0, 90));
        CHECK(h == doctest::Approx(dirichlet_hpbw_deg(n)).epsilon(1e-4));
    }
    // a steered beam broadens roughly as 1/cos(az)
    auto g = make_ula(256, 28e9);
    auto w0 = conjugate_steering(g, 28e9, Direction(0, 90));
    auto w60 = conjugate_steering(g, 28e9, Direction(60, 90));
    double h0 = hpbw(g, ElementPattern::omni(), w0, 28e9, Direction(0, 90));
    double h60 = hpbw(g, ElementPattern::omni(), w60, 28e9, Direction(60, 90));
    CHECK(h60 / h0 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("beamwidth throws when no crossing exists")
{
    auto one = make_ula(1, 28e9);
    BeamWeights w(cvec{1.0});
    CHECK_THROWS_AS(hpbw(one, ElementPattern::omni(), w, 28e9, Direction(0, 90)), std::runtime_error);
}

TEST_CASE("first nulls of a broadside beam")
{
    auto g = make_ula(64, 28e9);
    auto w = conjugate_steering(g, 28e9, Direction(0, 90));
    auto nulls = first_nulls_azimuth(g, ElementPattern::omni(), w, 28e9, Direction(0, 90));
    double expect = rad2deg(std::asin(2.0 / 64));
    CHECK(nulls.left_deg == doctest::Approx(-expect).epsilon(1e-4));
    CHECK(nulls.right_deg == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("dft_codebook")
{
    auto c1 = dft_codebook(1, 1, 28e9);
    REQUIRE(c1.entries.size() == 1);
    CHECK(c1.entries[0][0] == cdouble(1, 0));

    auto c4 = dft_codebook(4, 1, 28e9);
    REQUIRE(c4.entries.size() == 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
        {
            cdouble ip = 0;
            for (std::size_t n = 0; n < 4; ++n)
                ip += std::conj(c4.entries[a][n]) * c4.entries[b][n];
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
        }

    auto c2 = dft_codebook(8, 4, 28e9);
    CHECK(c2.entries.size() == 32);
    CHECK(c2.oversampling == 4);

    // entry k steers to sin(az) = 2k/N, wrapped into [-1, 1)
    auto g = make_ula(64, 28e9);
    auto c = dft_codebook(64, 1, 28e9);
    for (std::size_t k : {1u, 10u, 33u, 50u})
    {
        double sk = 2.0 * double(k) / 64;
        if (sk >= 1)
            sk -= 2;
        double az = rad2deg(std::asin(sk));
        auto p = find_peak(g, ElementPattern::omni(), c.entries[k], 28e9, 0.1, SearchRegion::azimuth_cut());
        // mirror ambiguity behind the array: fold into the front half-plane
        double pa = p.azimuth_deg();
        if (std::abs(pa) > 90)
            pa = (pa > 0 ? 180 : -180) - pa;
        CHECK(pa == doctest::Approx(az).epsilon(1e-4));
    }

    CHECK_THROWS(dft_codebook(0, 1, 28e9));
    CHECK_THROWS(dft_codebook(4, 0, 28e9));
}

TEST_CASE("64-element codebook has one entry near each endfire")
{
    auto g = make_ula(64, 28e9);
    auto c = dft_codebook(64, 1, 28e9);
    SearchRegion front{-90, 90, 90, 90};
    int near_pos = 0, near_neg = 0;
    for (auto &w : c.entries)
        for (auto &d : find_all_main_directions(g, ElementPattern::omni(), w, 28e9, 3.0, 0.1, front))
        {
            near_pos += d.azimuth_deg() > 80;
            near_neg += d.azimuth_deg() < -80;
        }
    CHECK(near_pos == 1);
    CHECK(near_neg == 1);
}

TEST_CASE("2D codebook is the Kronecker product in row-major order")
{
    auto c = dft_codebook_2d(4, 3, 2, 28e9);
    auto r = dft_codebook(4, 2, 28e9), k = dft_codebook(3, 2, 28e9);
    REQUIRE(c.entries.size() == 8 * 6);
    for (std::size_t kr = 0; kr < 8; ++kr)
        for (std::size_t kc = 0; kc < 6; ++kc)
        {
            auto &w = c.entries[kr * 6 + kc];
            for (std::size_t nr = 0; nr < 4; ++nr)
                for (std::size_t nc = 0; nc < 3; ++nc)
                    CHECK(std::abs(w[nr * 3 + nc] - r.entries[kr][nr] * k.entries[kc][nc]) < 1e-12);
        }
}

TEST_CASE("PatternGrid matches direct evaluation")
{
    auto g = make_ura(4, 4, 28e9);
    auto s = ElementPattern::sector(8.0);
    PatternGrid grid(g, s, 28.5e9, SearchRegion::front_hemisphere(), 5.0);
    auto w = dft_codebook_2d(4, 4, 1, 28e9).entries[5];
    auto gains = grid.gains(w);
    REQUIRE(gains.size() == grid.azimuth_count() * grid.zenith_count());
    for (std::size_t iz = 0; iz < grid.zenith_count(); iz += 3)
        for (std::size_t ia = 0; ia < grid.azimuth_count(); ia += 4)
            CHECK(gains[iz * grid.azimuth_count() + ia] ==
                  doctest::Approx(beam_gain(g, s, w, 28.5e9, grid.direction(ia, iz))).epsilon(1e-10));
}
