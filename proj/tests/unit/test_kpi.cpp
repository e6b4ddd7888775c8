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

#include "beamsquint/kpi.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace bsq;

namespace
{
    KpiRecord rec(std::size_t ue, std::size_t mcs, bool ack, double bits)
    {
        return {0, 0, ue, ServingPath::direct, Mode::baseline, 1, 10.0, mcs, ack, bits};
    }

    // independent nearest-rank oracle: smallest x with at least p% of the sample <= x
    double oracle(std::vector<double> v, double p)
    {
        std::sort(v.begin(), v.end());
        for (double x : v)
        {
            double below = double(std::count_if(v.begin(), v.end(), [&](double y) { return y <= x; }));
            if (below / double(v.size()) * 100.0 >= p - 1e-12)
                return x;
        }
        return v.back();
    }
}

TEST_CASE("ue_throughput")
{
    CHECK(ue_throughput({}, 3, 1.0) == std::vector<double>{0, 0, 0});
    CHECK(ue_throughput({rec(0, 3, false, 0.0)}, 1, 1.0)[0] == 0.0);
    CHECK(ue_throughput({rec(1, 3, true, 4096.0)}, 2, 1.0)[1] == 4096.0);
    auto t = ue_throughput({rec(0, 1, true, 100), rec(0, 1, true, 300), rec(2, 1, true, 50)}, 3, 0.5);
    CHECK(t == std::vector<double>{800, 0, 100});
    CHECK_THROWS(ue_throughput({rec(4, 1, true, 1)}, 3, 1.0));
    CHECK_THROWS(ue_throughput({}, 3, 0.0));
}

TEST_CASE("percentile")
{
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    std::shuffle(v.begin(), v.end(), std::mt19937_64(2));
    CHECK(percentile(v, 0) == 1.0);
    CHECK(percentile(v, 100) == 100.0);
    CHECK(percentile(v, 50) == 50.0);
    CHECK(percentile(v, 10) == 10.0);
    CHECK(percentile(v, 90) == 90.0);
    CHECK(percentile(v, 10.5) == 11.0);
    CHECK(percentile({7.0}, 37) == 7.0);
    CHECK_THROWS(percentile({}, 50));
    CHECK_THROWS(percentile({1.0}, 101));

    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(3, 5);
    std::uniform_int_distribution<int> len(1, 60);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> s(len(rng));
        for (auto &x : s)
            x = g(rng);
        for (double p : {0.0, 1.0, 10.0, 25.0, 50.0, 90.0, 99.0, 100.0})
            CHECK(percentile(s, p) == oracle(s, p));
    }
}

TEST_CASE("make_cdf")
{
    auto c = make_cdf({3.0, 1.0, 2.0, 2.0});
    CHECK(c.values == std::vector<double>{1, 2, 2, 3});
    CHECK(c.probabilities == std::vector<double>{0.25, 0.5, 0.75, 1.0});
    CHECK(make_cdf({}).values.empty());
}

TEST_CASE("mcs_histogram")
{
    std::vector<KpiRecord> all_ack;
    for (int i = 0; i < 20; ++i)
        all_ack.push_back(rec(0, 5, true, 1));
    auto h = mcs_histogram(all_ack, 15);
    CHECK(h.ack_share[5] == 1.0);
    CHECK(std::accumulate(h.ack_share.begin(), h.ack_share.end(), 0.0) == 1.0);
    CHECK(h.nack_fraction == 0.0);
    CHECK(h.transmissions == 20);

    std::vector<KpiRecord> alt;
    for (int i = 0; i < 20; ++i)
        alt.push_back(rec(0, 3, i % 2 == 0, 1));
    auto a = mcs_histogram(alt, 15);
    CHECK(a.nack_fraction == 0.5);
    CHECK(a.ack_share[3] == 0.5);

    auto e = mcs_histogram({}, 15);
    CHECK(e.transmissions == 0);
    CHECK(e.nack_fraction == 0.0);
    CHECK_THROWS(mcs_histogram({rec(0, 20, true, 1)}, 15));
}
