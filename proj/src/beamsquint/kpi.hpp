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

#include "beamsquint/ran.hpp"

#include <map>
#include <vector>

namespace bsq
{
    // Delivered bits per UE divided by the duration; UEs are 0..n_ues-1
    std::vector<double> ue_throughput(const std::vector<KpiRecord> &records, std::size_t n_ues, double duration_s);

    struct CdfSeries
    {
        std::vector<double> values;        // ascending
        std::vector<double> probabilities; // i/n for i = 1..n
    };

    CdfSeries make_cdf(std::vector<double> samples);

    // Nearest-rank percentile: the ceil(p/100 n)-th smallest sample (the minimum for p = 0)
    double percentile(std::vector<double> samples, double p);
    double percentile_sorted(const std::vector<double> &sorted, double p);

    struct McsHistogram
    {
        std::vector<double> ack_share; // per MCS index, fraction of all transmissions
        double nack_fraction = 0.0;
        std::size_t transmissions = 0;
    };

    McsHistogram mcs_histogram(const std::vector<KpiRecord> &records, std::size_t n_mcs);
}
