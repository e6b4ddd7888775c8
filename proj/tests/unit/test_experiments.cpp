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

#include "beamsquint/experiments.hpp"
#include "beamsquint/squint.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace bsq;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name)
        {
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    ArraySpec ula(std::size_t n)
    {
        ArraySpec a;
        a.elements = n;
        return a;
    }
}

TEST_CASE("pattern traces follow the first-order squint prediction")
{
    TempDir tmp("bsq_exp_pattern");
    PatternConfig cfg;
    cfg.array = ula(256);
    cfg.beams = {{"b35", 73, std::nullopt, 90.0, std::nullopt, 90.0}};
    cfg.frequencies_hz = {28e9, 29e9, 27e9};
    cfg.compensation = true;
    cfg.fine_window_deg = 3.0;
    cfg.coarse_step_deg = 1.0;
    std::vector<std::string> warnings;
    auto peaks = run_pattern(cfg, tmp.path.string(), [&](LogLevel l, const std::string &m) {
        if (l == LogLevel::warning)
            warnings.push_back(m);
    });
    CHECK(warnings.empty());
    std::map<std::pair<double, bool>, PatternPeak> by;
    for (auto &p : peaks)
        by[{p.frequency_hz, p.compensated}] = p;
    REQUIRE(by.count({28e9, false}));
    const double az1 = by[{28e9, false}].peak.azimuth_deg();
    for (double f : {29e9, 27e9})
    {
        REQUIRE(by.count({f, false}));
        REQUIRE(by.count({f, true}));
        double shift = by[{f, false}].peak.azimuth_deg() - az1;
        CHECK(std::abs(shift - predict_squint_deg(az1, 28e9, f - 28e9)) < 0.1);
        CHECK(std::abs(by[{f, true}].peak.azimuth_deg() - az1) < 0.05);
    }
    CHECK(fs::exists(tmp.path / "pattern_peaks.csv"));
    CHECK(fs::exists(tmp.path / "pattern_b35_f29000000000.csv"));
    CHECK(fs::exists(tmp.path / "pattern_b35_f29000000000_comp.csv"));
    auto head = slurp(tmp.path / "pattern_b35_f28000000000.csv");
    CHECK(head.rfind("azimuth_deg,zenith_deg,gain_db\n", 0) == 0);
}

TEST_CASE("empty frequency list writes nothing and warns")
{
    TempDir tmp("bsq_exp_empty");
    PatternConfig cfg;
    cfg.array = ula(16);
    cfg.beams = {{"b", 3, std::nullopt, 90.0, std::nullopt, 90.0}};
    int warnings = 0;
    auto peaks = run_pattern(cfg, tmp.path.string(), [&](LogLevel l, const std::string &) { warnings += l == LogLevel::warning; });
    CHECK(peaks.empty());
    CHECK(warnings == 1);
    CHECK(fs::is_empty(tmp.path));
}

TEST_CASE("sweep offset curves")
{
    TempDir tmp("bsq_exp_sweep");
    SweepOffsetConfig cfg;
    cfg.array = ula(256);
    cfg.beams = {{"b15", 33, std::nullopt, 90.0, std::nullopt, 90.0}, {"b66", 117, std::nullopt, 90.0, std::nullopt, 90.0}};
    auto pts = run_sweep_offset(cfg, tmp.path.string(), {});
    REQUIRE(pts.size() == 2 * 21);
    std::map<std::string, std::map<double, SweepPoint>> by;
    for (auto &p : pts)
        by[p.label][p.delta_f_hz] = p;
    for (auto &[label, m] : by)
    {
        CHECK(m.at(0.0).gain_db == m.at(0.0).gain_compensated_db);
        double g0 = m.at(0.0).gain_db;
        for (auto &[df, p] : m)
            CHECK(std::abs(p.gain_compensated_db - g0) < 0.2);
    }
    for (double df : {-1e9, -5e8, 5e8, 1e9})
        CHECK(by["b66"].at(df).gain_db - by["b66"].at(0.0).gain_db < by["b15"].at(df).gain_db - by["b15"].at(0.0).gain_db);
    auto text = slurp(tmp.path / "sweep_offset.csv");
    CHECK(text.rfind("label,peak_azimuth_deg,peak_zenith_deg,delta_f_hz,compensated,gain_db\n", 0) == 0);
}

TEST_CASE("small simulation matrix writes every table")
{
    TempDir tmp("bsq_exp_sim");
    SimulationConfig cfg;
    cfg.scenario.n_ues = 3;
    cfg.array_elements = {16, 32};
    cfg.delta_f_hz = {0.0, 1e9};
    cfg.ttis = 200;
    cfg.drops = 2;
    auto res = run_simulation(cfg, tmp.path.string(), {});
    CHECK(res.order.size() == 2 * 2 * 3);
    CHECK(res.nodes.size() == 2);
    for (auto &key : res.order)
    {
        CHECK(fs::exists(tmp.path / records_file_name(key)));
        CHECK(res.scenarios.at(key).ue_throughput.size() == 2 * 3);
    }
    for (auto name : {"summary.csv", "percentiles_vs_offset.csv", "cdf_throughput.csv", "mcs_hist.csv", "nodes_drop0.csv",
                      "nodes_drop1.csv"})
        CHECK(fs::exists(tmp.path / name));
    auto summary = slurp(tmp.path / "summary.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 12);
    auto records = slurp(tmp.path / records_file_name(res.order.front()));
    CHECK(records.rfind("drop,tti,ue,path,mode,n_rbs,sinr_db,mcs,ack,bits\n", 0) == 0);

    // zero offset: modes agree exactly
    auto &b = res.scenarios.at({16, 0.0, Mode::baseline});
    auto &c = res.scenarios.at({16, 0.0, Mode::compensated});
    CHECK(b.sinr_samples_db == c.sinr_samples_db);
    CHECK(b.ue_throughput == c.ue_throughput);

    // threads do not change results
    TempDir tmp2("bsq_exp_sim2");
    cfg.threads = 3;
    run_simulation(cfg, tmp2.path.string(), {});
    for (auto &e : fs::directory_iterator(tmp.path))
        CHECK(slurp(e.path()) == slurp(tmp2.path / e.path().filename()));
}
