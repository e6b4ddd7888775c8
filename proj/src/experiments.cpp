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

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

namespace bsq
{
    namespace
    {
        void ensure_dir(const std::string &dir)
        {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec)
                throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
        }

        std::string path_in(const std::string &dir, const std::string &name)
        {
            return (std::filesystem::path(dir) / name).string();
        }

        void emit(const LogFn &log, LogLevel level, const std::string &msg)
        {
            if (log)
                log(level, msg);
        }

        // fmt's file output throws std::system_error; report it as a runtime failure with the path
        template <typename F>
        void write_file(const std::string &path, F &&body)
        {
            try
            {
                auto out = fmt::output_file(path);
                body(out);
            }
            catch (const std::system_error &e)
            {
                throw std::runtime_error("cannot write '" + path + "': " + e.what());
            }
        }

        std::string freq_tag(double f) { return fmt::format("{:.0f}", f); }

        // Sorted union of a coarse grid over [lo, hi] and a fine grid within +/-window of each centre
        std::vector<double> cut_grid(double lo, double hi, double coarse, double fine, double window,
                                     const std::vector<double> &centres)
        {
            std::vector<double> v;
            const auto n_coarse = std::size_t(std::floor((hi - lo) / coarse + 1e-9));
            for (std::size_t i = 0; i <= n_coarse; ++i)
                v.push_back(lo + double(i) * coarse);
            for (double c : centres)
            {
                const auto n_fine = std::size_t(std::floor(2.0 * window / fine + 1e-9));
                // align the fine grid to multiples of the fine step
                const double start = std::ceil((c - window) / fine - 1e-9) * fine;
                for (std::size_t i = 0; i <= n_fine; ++i)
                {
                    const double x = start + double(i) * fine;
                    if (x >= lo && x <= hi && x <= c + window + 1e-9)
                        v.push_back(x);
                }
            }
            for (auto &x : v)
                x = std::round(x * 1e6) / 1e6;
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        bool is_planar(const ArraySpec &a) { return a.kind == ArrayKind::ura; }
    }

    // ---------------------------------------------------------------- pattern

    BeamWeights beam_weights(const ArraySpec &array, std::size_t oversampling, const BeamSpec &beam)
    {
        const ArrayGeometry geom = array.make();
        if (beam.steer_azimuth_deg)
            return conjugate_steering(geom, array.design_frequency_hz,
                                      Direction(*beam.steer_azimuth_deg, beam.steer_zenith_deg));
        if (!beam.dft_index)
            throw std::invalid_argument("beam '" + beam.label + "' has neither a codebook index nor a direction");

        const std::size_t k = *beam.dft_index;
        if (array.kind == ArrayKind::ula)
        {
            const std::size_t n_beams = oversampling * array.elements;
            if (k >= n_beams)
                throw std::invalid_argument("beam '" + beam.label + "': codebook index out of range");
            // build the single entry rather than the whole codebook
            cvec w(array.elements);
            const double scale = 1.0 / std::sqrt(double(array.elements));
            for (std::size_t n = 0; n < array.elements; ++n)
                w[n] = std::polar(scale, -2.0 * pi * double((k * n) % n_beams) / double(n_beams));
            return BeamWeights(std::move(w));
        }

        const std::size_t per_row = oversampling * array.cols;
        const std::size_t n_beams = oversampling * array.rows * per_row;
        if (k >= n_beams)
            throw std::invalid_argument("beam '" + beam.label + "': codebook index out of range");
        const std::size_t kr = k / per_row, kc = k % per_row;
        const std::size_t nr_beams = oversampling * array.rows;
        const double scale = 1.0 / std::sqrt(double(array.rows * array.cols));
        cvec w;
        w.reserve(array.rows * array.cols);
        for (std::size_t r = 0; r < array.rows; ++r)
            for (std::size_t c = 0; c < array.cols; ++c)
            {
                const double ph = -2.0 * pi * (double((kr * r) % nr_beams) / double(nr_beams) +
                                               double((kc * c) % per_row) / double(per_row));
                w.push_back(std::polar(scale, ph));
            }
        return BeamWeights(std::move(w));
    }

    Direction beam_reference_direction(const ArrayGeometry &geom, const ElementPattern &element, const BeamWeights &w,
                                       double f1_hz, const BeamSpec &beam, double grid_step_deg)
    {
        if (geom.kind == ArrayKind::ura)
            return find_peak(geom, element, w, f1_hz, grid_step_deg, SearchRegion::front_hemisphere());

        const auto dirs = find_all_main_directions(geom, element, w, f1_hz, 3.0, grid_step_deg);
        if (dirs.size() > 1 && beam.served_azimuth_deg)
            return disambiguate_peak(dirs, Direction(*beam.served_azimuth_deg, beam.served_zenith_deg));
        return dirs.front();
    }

    namespace
    {
        // Peak of a trace: the main direction closest to the reference. A beam with a served side is
        // searched on that side only, since compensating one lobe can leave the mirror lobe stronger.
        Direction trace_peak(const ArrayGeometry &geom, const ElementPattern &element, const BeamWeights &w, double f,
                             const Direction &reference, const BeamSpec &beam, double grid_step_deg)
        {
            if (geom.kind == ArrayKind::ura)
                return find_peak(geom, element, w, f, grid_step_deg, SearchRegion::front_hemisphere());
            SearchRegion region = SearchRegion::azimuth_cut();
            if (beam.served_azimuth_deg)
            {
                const bool positive = Direction(*beam.served_azimuth_deg, 90.0).azimuth_deg() >= 0.0;
                region.azimuth_min_deg = positive ? 0.0 : -180.0;
                region.azimuth_max_deg = positive ? 180.0 : 0.0;
            }
            const auto dirs = find_all_main_directions(geom, element, w, f, 3.0, grid_step_deg, region);
            return disambiguate_peak(dirs, reference);
        }
    }

    std::vector<PatternPeak> run_pattern(const PatternConfig &cfg, const std::string &out_dir, const LogFn &log)
    {
        std::vector<PatternPeak> peaks;
        if (cfg.frequencies_hz.empty())
        {
            emit(log, LogLevel::warning, "pattern: the frequency list is empty, nothing to do");
            return peaks;
        }
        if (cfg.beams.empty())
        {
            emit(log, LogLevel::warning, "pattern: no beams configured, nothing to do");
            return peaks;
        }
        ensure_dir(out_dir);

        const ArrayGeometry geom = cfg.array.make();
        const double f1 = cfg.array.design_frequency_hz;

        for (const auto &beam : cfg.beams)
        {
            const BeamWeights w1 = beam_weights(cfg.array, cfg.oversampling, beam);
            const Direction u_star =
                beam_reference_direction(geom, cfg.element, w1, f1, beam, cfg.peak_grid_step_deg);
            emit(log, LogLevel::info,
                 fmt::format("pattern: beam {} main lobe at az {:.3f} zen {:.3f}", beam.label, u_star.azimuth_deg(),
                             u_star.zenith_deg()));

            for (double f : cfg.frequencies_hz)
            {
                std::vector<std::pair<bool, BeamWeights>> variants{{false, w1}};
                if (cfg.compensation && f != f1)
                    variants.emplace_back(true, apply_compensation(w1, compensation_vector(geom, {f1, f - f1}, u_star)));

                for (const auto &[comp, w] : variants)
                {
                    const Direction pk = trace_peak(geom, cfg.element, w, f, u_star, beam, cfg.peak_grid_step_deg);
                    double width = std::nan("");
                    try
                    {
                        width = hpbw(geom, cfg.element, w, f, pk);
                    }
                    catch (const std::runtime_error &)
                    {
                        emit(log, LogLevel::warning,
                             fmt::format("pattern: beam {} at {} Hz has no half-power crossing", beam.label, f));
                    }
                    peaks.push_back({beam.label, f, comp, pk, to_db(beam_gain(geom, cfg.element, w, f, pk)), width});

                    const std::string name =
                        fmt::format("pattern_{}_f{}{}.csv", beam.label, freq_tag(f), comp ? "_comp" : "");
                    write_file(path_in(out_dir, name), [&](auto &out) {
                        out.print("azimuth_deg,zenith_deg,gain_db\n");
                        if (cfg.cut == "azimuth" || cfg.cut == "both")
                        {
                            const auto az = cut_grid(-180.0, 180.0, cfg.coarse_step_deg, cfg.fine_step_deg,
                                                     cfg.fine_window_deg, {u_star.azimuth_deg(), pk.azimuth_deg()});
                            const double zen = u_star.zenith_deg();
                            for (double a : az)
                                out.print("{:.6f},{:.6f},{:.6f}\n", a, zen,
                                          std::max(to_db(beam_gain(geom, cfg.element, w, f, Direction(a, zen))), -300.0));
                        }
                        if (cfg.cut == "zenith" || cfg.cut == "both")
                        {
                            const auto zens = cut_grid(0.0, 180.0, cfg.coarse_step_deg, cfg.fine_step_deg,
                                                       cfg.fine_window_deg, {u_star.zenith_deg(), pk.zenith_deg()});
                            const double a = u_star.azimuth_deg();
                            for (double z : zens)
                                out.print("{:.6f},{:.6f},{:.6f}\n", a, z,
                                          std::max(to_db(beam_gain(geom, cfg.element, w, f, Direction(a, z))), -300.0));
                        }
                    });
                }
            }
        }

        write_file(path_in(out_dir, "pattern_peaks.csv"), [&](auto &out) {
            out.print("label,frequency_hz,compensated,peak_azimuth_deg,peak_zenith_deg,peak_gain_db,hpbw_deg\n");
            for (const auto &p : peaks)
                out.print("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", p.label, freq_tag(p.frequency_hz), p.compensated ? 1 : 0,
                          p.peak.azimuth_deg(), p.peak.zenith_deg(), p.peak_gain_db, p.hpbw_deg);
        });
        return peaks;
    }

    // ---------------------------------------------------------------- sweep offset

    std::vector<SweepPoint> run_sweep_offset(const SweepOffsetConfig &cfg, const std::string &out_dir, const LogFn &log)
    {
        std::vector<SweepPoint> pts;
        if (cfg.beams.empty())
        {
            emit(log, LogLevel::warning, "sweep-offset: no beams configured, nothing to do");
            return pts;
        }
        ensure_dir(out_dir);
        const ArrayGeometry geom = cfg.array.make();
        const double f1 = cfg.array.design_frequency_hz;
        const double grid_step = is_planar(cfg.array) ? 0.5 : 0.1;

        const auto n_steps = std::size_t(std::floor((cfg.delta_f_max_hz - cfg.delta_f_min_hz) / cfg.delta_f_step_hz + 1e-9));
        std::vector<std::pair<std::string, Direction>> refs;
        for (const auto &beam : cfg.beams)
        {
            const BeamWeights w1 = beam_weights(cfg.array, cfg.oversampling, beam);
            const Direction u_star = beam_reference_direction(geom, cfg.element, w1, f1, beam, grid_step);
            refs.emplace_back(beam.label, u_star);
            for (std::size_t i = 0; i <= n_steps; ++i)
            {
                // snap to the step grid so 0 is exactly 0
                double df = cfg.delta_f_min_hz + double(i) * cfg.delta_f_step_hz;
                df = std::round(df / cfg.delta_f_step_hz * 1e6) / 1e6 * cfg.delta_f_step_hz;
                const double f2 = f1 + df;
                const double g = beam_gain(geom, cfg.element, w1, f2, u_star);
                const auto w2 = apply_compensation(w1, compensation_vector(geom, {f1, df}, u_star));
                const double gc = beam_gain(geom, cfg.element, w2, f2, u_star);
                pts.push_back({beam.label, df, to_db(g), to_db(gc)});
            }
        }

        write_file(path_in(out_dir, "sweep_offset.csv"), [&](auto &out) {
            out.print("label,peak_azimuth_deg,peak_zenith_deg,delta_f_hz,compensated,gain_db\n");
            for (int comp = 0; comp <= 1; ++comp)
                for (const auto &p : pts)
                {
                    const auto &ref = std::find_if(refs.begin(), refs.end(), [&](auto &r) { return r.first == p.label; })->second;
                    out.print("{},{:.6f},{:.6f},{:.0f},{},{:.6f}\n", p.label, ref.azimuth_deg(), ref.zenith_deg(),
                              p.delta_f_hz, comp, comp ? p.gain_compensated_db : p.gain_db);
                }
        });
        return pts;
    }

    // ---------------------------------------------------------------- system simulation

    std::string records_file_name(const ScenarioKey &key)
    {
        return fmt::format("records_ula{}_df{:.0f}_{}.csv", key.array_elements, key.delta_f_hz, to_string(key.mode));
    }

    SimulationResults simulate_matrix(const SimulationConfig &cfg, const LogFn &log)
    {
        cfg.ran.validate();
        cfg.scenario.validate();

        // codebook catalogs are shared read-only by every job with the same array size
        std::map<std::size_t, std::shared_ptr<const CodebookCatalog>> catalogs;
        for (std::size_t n : cfg.array_elements)
            if (!catalogs.count(n))
            {
                emit(log, LogLevel::info, fmt::format("simulate: preparing the {}-element codebook", n));
                catalogs[n] = CodebookCatalog::build(n, cfg.ran.oversampling, cfg.ran.infra_element, cfg.ran.f1_hz,
                                                     cfg.ran.main_direction_threshold_db);
            }

        struct Job
        {
            ScenarioKey key;
            std::size_t drop;
        };
        SimulationResults res;
        std::vector<Job> jobs;
        std::set<ScenarioKey> seen;
        for (std::size_t n : cfg.array_elements)
            for (double df : cfg.delta_f_hz)
                for (Mode m : cfg.modes)
                {
                    const ScenarioKey key{n, df, m};
                    if (!seen.insert(key).second)
                        continue;
                    res.order.push_back(key);
                    for (std::size_t d = 0; d < cfg.drops; ++d)
                        jobs.push_back({key, d});
                }

        std::vector<std::vector<KpiRecord>> job_records(jobs.size());
        res.nodes.resize(cfg.drops);
        std::vector<std::once_flag> node_once(cfg.drops);

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]() {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size())
                    return;
                {
                    std::lock_guard lock(failure_mutex);
                    if (failure)
                        return;
                }
                try
                {
                    const Job &job = jobs[i];
                    RanConfig ran = cfg.ran;
                    ran.array_elements = job.key.array_elements;
                    Simulation sim(ran, cfg.scenario, job.key.delta_f_hz, job.key.mode, cfg.seed, job.drop,
                                   catalogs.at(job.key.array_elements));
                    std::call_once(node_once[job.drop], [&] { res.nodes[job.drop] = sim.nodes(); });
                    auto &out = job_records[i];
                    for (std::size_t t = 0; t < cfg.ttis; ++t)
                    {
                        auto recs = sim.step();
                        out.insert(out.end(), recs.begin(), recs.end());
                    }
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };

        const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.threads, jobs.size()));
        emit(log, LogLevel::info, fmt::format("simulate: {} runs on {} thread(s)", jobs.size(), n_threads));
        if (n_threads == 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < n_threads; ++t)
                pool.emplace_back(worker);
            for (auto &th : pool)
                th.join();
        }
        if (failure)
            std::rethrow_exception(failure);

        // merge per scenario in drop order
        const double duration = double(cfg.ttis) * cfg.ran.slot_s;
        res.n_mcs = cfg.ran.mcs.rows.size();
        for (std::size_t i = 0; i < jobs.size(); ++i)
        {
            auto &sc = res.scenarios[jobs[i].key];
            const auto thr = ue_throughput(job_records[i], cfg.scenario.n_ues, duration);
            sc.ue_throughput.insert(sc.ue_throughput.end(), thr.begin(), thr.end());
            sc.records.insert(sc.records.end(), job_records[i].begin(), job_records[i].end());
        }
        for (auto &[key, sc] : res.scenarios)
        {
            sc.sinr_samples_db.reserve(sc.records.size());
            for (const auto &r : sc.records)
                sc.sinr_samples_db.push_back(r.sinr_db);
            sc.mcs = mcs_histogram(sc.records, res.n_mcs);
            auto thr = sc.ue_throughput;
            auto sinr = sc.sinr_samples_db;
            std::sort(thr.begin(), thr.end());
            std::sort(sinr.begin(), sinr.end());
            const double ps[3] = {10.0, 50.0, 90.0};
            for (int k = 0; k < 3; ++k)
            {
                sc.thr_p[k] = thr.empty() ? 0.0 : percentile_sorted(thr, ps[k]);
                sc.sinr_p[k] = sinr.empty() ? std::nan("") : percentile_sorted(sinr, ps[k]);
            }
        }
        return res;
    }

    void write_simulation_outputs(const SimulationConfig &cfg, const SimulationResults &res, const std::string &out_dir)
    {
        ensure_dir(out_dir);

        if (cfg.write_records)
            for (const auto &key : res.order)
                write_file(path_in(out_dir, records_file_name(key)), [&](auto &out) {
                    out.print("drop,tti,ue,path,mode,n_rbs,sinr_db,mcs,ack,bits\n");
                    for (const auto &r : res.scenarios.at(key).records)
                        out.print("{},{},{},{},{},{},{:.6f},{},{},{:.0f}\n", r.drop, r.tti, r.ue, to_string(r.path),
                                  to_string(r.mode), r.n_rbs, r.sinr_db, r.mcs, r.ack ? 1 : 0, r.bits);
                });

        write_file(path_in(out_dir, "summary.csv"), [&](auto &out) {
            out.print("array_elements,delta_f_hz,mode,thr_p10_bps,thr_p50_bps,thr_p90_bps,sinr_p10_db,sinr_p50_db,"
                      "sinr_p90_db,nack_fraction\n");
            for (const auto &key : res.order)
            {
                const auto &s = res.scenarios.at(key);
                out.print("{},{:.0f},{},{:.3f},{:.3f},{:.3f},{:.6f},{:.6f},{:.6f},{:.6f}\n", key.array_elements,
                          key.delta_f_hz, to_string(key.mode), s.thr_p[0], s.thr_p[1], s.thr_p[2], s.sinr_p[0],
                          s.sinr_p[1], s.sinr_p[2], s.mcs.nack_fraction);
            }
        });

        write_file(path_in(out_dir, "percentiles_vs_offset.csv"), [&](auto &out) {
            out.print("array_elements,metric,delta_f_hz,mode,p10,p50,p90\n");
            for (const char *metric : {"throughput_bps", "sinr_db"})
                for (const auto &key : res.order)
                {
                    const auto &s = res.scenarios.at(key);
                    const double *p = std::string(metric) == "sinr_db" ? s.sinr_p : s.thr_p;
                    out.print("{},{},{:.0f},{},{:.6f},{:.6f},{:.6f}\n", key.array_elements, metric, key.delta_f_hz,
                              to_string(key.mode), p[0], p[1], p[2]);
                }
        });

        write_file(path_in(out_dir, "cdf_throughput.csv"), [&](auto &out) {
            out.print("array_elements,delta_f_hz,mode,throughput_bps,cdf\n");
            for (const auto &key : res.order)
            {
                const auto cdf = make_cdf(res.scenarios.at(key).ue_throughput);
                for (std::size_t i = 0; i < cdf.values.size(); ++i)
                    out.print("{},{:.0f},{},{:.3f},{:.6f}\n", key.array_elements, key.delta_f_hz, to_string(key.mode),
                              cdf.values[i], cdf.probabilities[i]);
            }
        });

        write_file(path_in(out_dir, "mcs_hist.csv"), [&](auto &out) {
            out.print("array_elements,delta_f_hz,mode,bin,share\n");
            for (const auto &key : res.order)
            {
                const auto &h = res.scenarios.at(key).mcs;
                for (std::size_t i = 0; i < h.ack_share.size(); ++i)
                    out.print("{},{:.0f},{},{},{:.6f}\n", key.array_elements, key.delta_f_hz, to_string(key.mode), i,
                              h.ack_share[i]);
                out.print("{},{:.0f},{},nack,{:.6f}\n", key.array_elements, key.delta_f_hz, to_string(key.mode),
                          h.nack_fraction);
            }
        });

        for (std::size_t d = 0; d < res.nodes.size(); ++d)
            write_file(path_in(out_dir, fmt::format("nodes_drop{}.csv", d)), [&](auto &out) {
                out.print("node,role,x,y,z\n");
                for (const auto &n : res.nodes[d])
                    out.print("{},{},{:.4f},{:.4f},{:.4f}\n", n.name, n.role, n.position.x, n.position.y, n.position.z);
            });
    }

    SimulationResults run_simulation(const SimulationConfig &cfg, const std::string &out_dir, const LogFn &log)
    {
        auto res = simulate_matrix(cfg, log);
        write_simulation_outputs(cfg, res, out_dir);
        return res;
    }
}
