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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsq
{
    std::vector<double> ue_throughput(const std::vector<KpiRecord> &records, std::size_t n_ues, double duration_s)
    {
        if (!(duration_s > 0.0))
            throw std::invalid_argument("ue_throughput: duration must be positive");
        std::vector<double> bits(n_ues, 0.0);
        for (const auto &r : records)
        {
            if (r.ue >= n_ues)
                throw std::invalid_argument("ue_throughput: record for an unknown UE");
            bits[r.ue] += r.bits;
        }
        for (auto &b : bits)
            b /= duration_s;
        return bits;
    }

    CdfSeries make_cdf(std::vector<double> samples)
    {
        std::sort(samples.begin(), samples.end());
        CdfSeries c;
        const double n = double(samples.size());
        c.probabilities.reserve(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            c.probabilities.push_back(double(i + 1) / n);
        c.values = std::move(samples);
        return c;
    }

    double percentile_sorted(const std::vector<double> &sorted, double p)
    {
        if (sorted.empty())
            throw std::invalid_argument("percentile: empty sample");
        if (!(p >= 0.0 && p <= 100.0))
            throw std::invalid_argument("percentile: p must lie in [0, 100]");
        const double n = double(sorted.size());
        auto rank = std::size_t(std::ceil(p / 100.0 * n - 1e-9));
        rank = std::clamp<std::size_t>(rank, 1, sorted.size());
        return sorted[rank - 1];
    }

    double percentile(std::vector<double> samples, double p)
    {
        std::sort(samples.begin(), samples.end());
        return percentile_sorted(samples, p);
    }

    McsHistogram mcs_histogram(const std::vector<KpiRecord> &records, std::size_t n_mcs)
    {
        McsHistogram h;
        h.ack_share.assign(n_mcs, 0.0);
        h.transmissions = records.size();
        if (records.empty())
            return h;
        std::size_t nacks = 0;
        std::vector<std::size_t> acks(n_mcs, 0);
        for (const auto &r : records)
        {
            if (!r.ack)
                ++nacks;
            else if (r.mcs < n_mcs)
                ++acks[r.mcs];
            else
                throw std::invalid_argument("mcs_histogram: MCS index outside the table");
        }
        const double n = double(records.size());
        for (std::size_t i = 0; i < n_mcs; ++i)
            h.ack_share[i] = double(acks[i]) / n;
        h.nack_fraction = double(nacks) / n;
        return h;
    }
}
