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

#include "beamsquint/ran.hpp"

#include "beamsquint/squint.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bsq
{
    // ---------------------------------------------------------------- link adaptation

    McsTable McsTable::builtin()
    {
        // representative CQI-like table, 15 rows
        return {{{-6.7, 0.1523},
                 {-4.7, 0.3770},
                 {-2.3, 0.8770},
                 {0.2, 1.4766},
                 {2.4, 1.9141},
                 {4.3, 2.4063},
                 {5.9, 2.7305},
                 {8.1, 3.3223},
                 {10.3, 3.9023},
                 {11.7, 4.5234},
                 {14.1, 5.1152},
                 {16.3, 5.5547},
                 {18.7, 6.2266},
                 {21.0, 6.9141},
                 {22.7, 7.4063}}};
    }

    McsTable McsTable::from_csv(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot open MCS table '" + path + "'");
        std::string line;
        if (!std::getline(in, line) || line.rfind("index,threshold_db,spectral_efficiency", 0) != 0)
            throw std::invalid_argument("MCS table '" + path + "': expected header index,threshold_db,spectral_efficiency");

        McsTable t;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty() || line == "\r")
                continue;
            std::istringstream ss(line);
            std::string f_idx, f_thr, f_eff;
            if (!std::getline(ss, f_idx, ',') || !std::getline(ss, f_thr, ',') || !std::getline(ss, f_eff))
                throw std::invalid_argument("MCS table '" + path + "' line " + std::to_string(line_no) + ": expected 3 fields");
            try
            {
                if (std::stoul(f_idx) != t.rows.size())
                    throw std::invalid_argument("index out of sequence");
                t.rows.push_back({std::stod(f_thr), std::stod(f_eff)});
            }
            catch (const std::exception &e)
            {
                throw std::invalid_argument("MCS table '" + path + "' line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        t.validate();
        return t;
    }

    void McsTable::validate() const
    {
        if (rows.empty())
            throw std::invalid_argument("MCS table is empty");
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (!std::isfinite(rows[i].threshold_db) || !(rows[i].spectral_efficiency > 0.0))
                throw std::invalid_argument("MCS table row " + std::to_string(i) + " is invalid");
            if (i > 0 && !(rows[i].threshold_db > rows[i - 1].threshold_db &&
                           rows[i].spectral_efficiency > rows[i - 1].spectral_efficiency))
                throw std::invalid_argument("MCS table rows must increase in threshold and efficiency");
        }
    }

    std::size_t link_adapt(double sinr_est_db, const OllaState &olla, const McsTable &table)
    {
        if (table.rows.empty())
            throw std::invalid_argument("link_adapt: empty MCS table");
        const double eff = sinr_est_db + olla.offset_db;
        std::size_t mcs = 0;
        for (std::size_t i = 0; i < table.rows.size(); ++i)
            if (table.rows[i].threshold_db <= eff)
                mcs = i;
        return mcs;
    }

    void olla_update(OllaState &olla, bool ack) { olla.offset_db += ack ? olla.step_up_db : -olla.step_down_db; }

    TransmitResult transmit(std::size_t mcs, double sinr_actual_db, const McsTable &table, std::size_t n_rbs,
                            double rb_bandwidth_hz, double slot_s)
    {
        const auto &row = table.rows.at(mcs);
        if (sinr_actual_db >= row.threshold_db)
            return {true, row.spectral_efficiency * rb_bandwidth_hz * slot_s * double(n_rbs)};
        return {false, 0.0};
    }

    double ncr_gain(double p_ncr_w, double noise_w, double gamma, double p_tx_w, double fixed_gain_db)
    {
        if (p_ncr_w < 0.0 || noise_w < 0.0 || gamma < 0.0 || p_tx_w < 0.0)
            throw std::invalid_argument("ncr_gain: powers must be non-negative");
        const double cap = std::pow(10.0, 0.1 * fixed_gain_db);
        const double input = noise_w + gamma * p_tx_w;
        if (input <= 0.0)
            return cap;
        return std::min(cap, p_ncr_w / input);
    }

    std::vector<int> rr_schedule(std::vector<Bearer> &bearers, std::size_t n_rbs, std::uint64_t &clock)
    {
        std::vector<int> out(n_rbs, -1);
        for (std::size_t rb = 0; rb < n_rbs; ++rb)
        {
            int pick = -1;
            for (std::size_t u = 0; u < bearers.size(); ++u)
            {
                if (bearers[u].demand_rbs == 0)
                    continue;
                if (pick < 0 || bearers[u].wait_key < bearers[std::size_t(pick)].wait_key)
                    pick = int(u);
            }
            if (pick < 0)
                break;
            out[rb] = pick;
            auto &b = bearers[std::size_t(pick)];
            --b.demand_rbs;
            b.wait_key = ++clock;
        }
        return out;
    }

    // ---------------------------------------------------------------- naming

    std::string_view to_string(Mode m)
    {
        switch (m)
        {
        case Mode::baseline:
            return "baseline";
        case Mode::squint:
            return "squint";
        case Mode::compensated:
            return "compensated";
        }
        return "?";
    }

    Mode mode_from_string(std::string_view s)
    {
        if (s == "baseline")
            return Mode::baseline;
        if (s == "squint")
            return Mode::squint;
        if (s == "compensated")
            return Mode::compensated;
        throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected baseline, squint or compensated)");
    }

    std::string_view to_string(ServingPath p) { return p == ServingPath::direct ? "direct" : "ncr"; }

    void RanConfig::validate() const
    {
        auto fail = [](const std::string &msg) { throw std::invalid_argument(msg); };
        if (!(f1_hz > 0.0))
            fail("f1 must be positive");
        if (array_elements == 0 || oversampling == 0)
            fail("array elements and oversampling must be at least 1");
        if (n_rbs == 0 || subcarriers_per_rb == 0 || !(subcarrier_spacing_hz > 0.0) || !(slot_s > 0.0))
            fail("numerology values must be positive");
        if (!(ncr_fixed_gain_db >= 0.0))
            fail("NCR fixed gain must be non-negative");
        if (!(los.b > 0.0) || !(nlos.b > 0.0))
            fail("path-loss distance slopes must be positive");
        if (shadowing_sigma_db < 0.0 || !(shadowing_decorrelation_m > 0.0))
            fail("invalid shadowing parameters");
        if (access_sweep_period == 0 || backhaul_sweep_period == 0)
            fail("sweep periods must be at least 1 TTI");
        if (!(main_direction_threshold_db > 0.0))
            fail("main direction threshold must be positive");
        if (direction_error_deg < 0.0)
            fail("direction error must be non-negative");
        if (!(olla_step_up_db >= 0.0) || !(olla_step_down_db >= 0.0))
            fail("OLLA steps must be non-negative");
        if (packet_bits < 0.0 || packet_interval_slots == 0)
            fail("invalid traffic parameters");
        mcs.validate();
    }

    // ---------------------------------------------------------------- codebook catalog

    std::shared_ptr<const CodebookCatalog> CodebookCatalog::build(std::size_t n_elements, std::size_t oversampling,
                                                                  const ElementPattern &element, double f1_hz,
                                                                  double threshold_db)
    {
        auto cat = std::make_shared<CodebookCatalog>();
        cat->geometry = make_ula(n_elements, f1_hz);
        cat->element = element;
        cat->codebook = dft_codebook(n_elements, oversampling, f1_hz);

        const SearchRegion region = SearchRegion::azimuth_cut();
        constexpr double step = 0.1;
        const PatternGrid grid(cat->geometry, element, f1_hz, region, step);
        cat->main_directions.reserve(cat->codebook.entries.size());
        for (const auto &w : cat->codebook.entries)
        {
            const auto gains = grid.gains(w);
            const auto idx = grid_local_maxima(gains, grid.azimuth_count(), grid.zenith_count(), true, threshold_db);
            std::vector<std::pair<double, Direction>> found;
            for (std::size_t i : idx)
            {
                const Direction d = refine_peak(cat->geometry, element, w, f1_hz,
                                                grid.direction(i % grid.azimuth_count(), 0), step, region);
                found.emplace_back(beam_gain(cat->geometry, element, w, f1_hz, d), d);
            }
            std::stable_sort(found.begin(), found.end(), [](auto &a, auto &b) { return a.first > b.first; });
            const double floor = found.front().first * std::pow(10.0, -0.1 * threshold_db);
            std::vector<Direction> dirs;
            for (auto &[g, d] : found)
                if (g >= floor)
                    dirs.push_back(d);
            cat->main_directions.push_back(std::move(dirs));
        }
        return cat;
    }

    std::size_t best_beam(const CodebookCatalog &cat, double frequency_hz, const Direction &dir)
    {
        const cvec psi = steering_vector(cat.geometry, frequency_hz, dir);
        std::size_t best = 0;
        double best_g = -1.0;
        for (std::size_t k = 0; k < cat.codebook.entries.size(); ++k)
        {
            const auto &w = cat.codebook.entries[k].values();
            cdouble acc{0.0, 0.0};
            for (std::size_t n = 0; n < psi.size(); ++n)
                acc += w[n] * psi[n];
            const double g = std::norm(acc);
            if (g > best_g)
            {
                best_g = g;
                best = k;
            }
        }
        return best;
    }

    // ---------------------------------------------------------------- simulation

    std::uint64_t stream_seed(std::uint64_t seed, std::size_t drop, std::uint64_t stream)
    {
        // splitmix64 finalizer over the combined key
        auto mix = [](std::uint64_t z) {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        return mix(mix(mix(seed) ^ std::uint64_t(drop)) ^ stream);
    }

    namespace
    {
        enum Stream : std::uint64_t
        {
            stream_mobility = 1,
            stream_placement = 2,
            stream_traffic = 3,
            stream_shadow_gnb = 4,
            stream_shadow_ncr = 5,
            stream_estimate = 6
        };

        double to_db_safe(double x) { return x > 0.0 ? 10.0 * std::log10(x) : -300.0; }
    }

    Simulation::Simulation(const RanConfig &ran, const ScenarioConfig &scenario, double delta_f_hz, Mode mode,
                           std::uint64_t seed, std::size_t drop, std::shared_ptr<const CodebookCatalog> catalog)
        : ran_(ran), scenario_(scenario), delta_f_(delta_f_hz), mode_(mode), drop_(drop),
          catalog_(std::move(catalog)), graph_(scenario.layout), mobility_rng_(stream_seed(seed, drop, stream_mobility)),
          estimate_rng_(stream_seed(seed, drop, stream_estimate))
    {
        ran_.validate();
        scenario_.validate();
        FrequencyPlan{ran_.f1_hz, delta_f_}.validate();
        if (!catalog_ || catalog_->geometry.element_count() != ran_.array_elements)
            throw std::invalid_argument("simulation: codebook catalog does not match the configured array");

        const NodePlacement where = place_infrastructure(scenario_);
        gnb_ = {where.gnb, {scenario_.gnb_yaw_deg, scenario_.gnb_downtilt_deg}, catalog_->geometry, catalog_->element};
        ncr_access_ = {where.ncr, {scenario_.ncr_access_yaw_deg, scenario_.ncr_access_downtilt_deg}, catalog_->geometry,
                       catalog_->element};
        ncr_backhaul_ = {where.ncr, {scenario_.ncr_backhaul_yaw_deg, scenario_.ncr_backhaul_downtilt_deg},
                         catalog_->geometry, catalog_->element};

        std::mt19937_64 placement_rng(stream_seed(seed, drop, stream_placement));
        std::mt19937_64 traffic_rng(stream_seed(seed, drop, stream_traffic));
        const auto walkers = place_pedestrians(graph_, scenario_, placement_rng);
        std::uniform_int_distribution<std::size_t> phase(0, ran_.packet_interval_slots - 1);
        ues_.resize(walkers.size());
        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            ues_[u].walker = walkers[u];
            ues_[u].position = pedestrian_position(graph_, walkers[u], scenario_.ue_height_m);
            ues_[u].traffic_phase = phase(traffic_rng);
            ues_[u].olla.step_up_db = ran_.olla_step_up_db;
            ues_[u].olla.step_down_db = ran_.olla_step_down_db;
        }
        links_.resize(ues_.size());
        wait_keys_.assign(ues_.size(), 0);

        if (ran_.shadowing_sigma_db > 0.0)
        {
            shadow_gnb_.emplace(stream_seed(seed, drop, stream_shadow_gnb), ran_.shadowing_decorrelation_m,
                                ran_.shadowing_sigma_db);
            shadow_ncr_.emplace(stream_seed(seed, drop, stream_shadow_ncr), ran_.shadowing_decorrelation_m,
                                ran_.shadowing_sigma_db);
        }

        const double n_rbs = double(ran_.n_rbs);
        p_tx_rb_w_ = dbm_to_w(ran_.gnb_tx_power_dbm) / n_rbs;
        p_ncr_rb_w_ = dbm_to_w(ran_.ncr_max_output_dbm) / n_rbs;
        noise_ue_w_ = dbm_to_w(noise_power_dbm(ran_.subcarriers_per_rb, ran_.subcarrier_spacing_hz, ran_.ue_noise_figure_db));
        noise_ncr_w_ =
            dbm_to_w(noise_power_dbm(ran_.subcarriers_per_rb, ran_.subcarrier_spacing_hz, ran_.ncr_noise_figure_db));
    }

    std::vector<NodeInfo> Simulation::nodes() const
    {
        std::vector<NodeInfo> out{{"gnb", "gNB", gnb_.position}, {"ncr", "NCR", ncr_access_.position}};
        for (std::size_t u = 0; u < ues_.size(); ++u)
            out.push_back({"ue" + std::to_string(u), "UE", ues_[u].position});
        return out;
    }

    double Simulation::frequency_for_measurement() const
    {
        return mode_ == Mode::baseline ? ran_.f1_hz + delta_f_ : ran_.f1_hz;
    }

    double Simulation::shadowing_gnb(Vec3 p) const { return shadow_gnb_ ? (*shadow_gnb_)(p.x, p.y) : 0.0; }
    double Simulation::shadowing_ncr(Vec3 p) const { return shadow_ncr_ ? (*shadow_ncr_)(p.x, p.y) : 0.0; }

    double Simulation::path_gain(Vec3 a, Vec3 b, double f, double shadow_db) const
    {
        const double d = norm(b - a);
        double loss = path_loss_db(ran_.los, d, f);
        if (ran_.blockage && !scenario_.layout.line_of_sight(a.x, a.y, b.x, b.y))
            loss = std::max(loss, path_loss_db(ran_.nlos, d, f));
        return std::pow(10.0, -0.1 * (loss + shadow_db));
    }

    BeamWeights Simulation::data_weights(const Antenna &ant, std::size_t beam, Vec3 target)
    {
        const BeamWeights &raw = catalog_->codebook.entries[beam];
        if (mode_ != Mode::compensated || delta_f_ == 0.0)
            return raw;

        const auto &candidates = catalog_->main_directions[beam];
        Direction u_star = candidates.front();
        if (candidates.size() > 1)
        {
            // the served node's direction as known to the transmitter, e.g. from beam tracking
            const Direction truth = local_direction(ant, target);
            std::normal_distribution<double> err(0.0, ran_.direction_error_deg);
            double az = truth.azimuth_deg(), zen = truth.zenith_deg();
            if (ran_.direction_error_deg > 0.0)
            {
                az += err(estimate_rng_);
                zen = std::clamp(zen + err(estimate_rng_), 0.0, 180.0);
            }
            u_star = disambiguate_peak(candidates, Direction(az, zen));
        }
        const auto comp = compensation_vector(catalog_->geometry, {ran_.f1_hz, delta_f_}, u_star);
        return apply_compensation(raw, comp);
    }

    void Simulation::backhaul_sweep()
    {
        if (!ran_.ncr_enabled)
            return;
        const double f_m = frequency_for_measurement();
        const double f_d = ran_.f1_hz + delta_f_;
        const Direction to_ncr = local_direction(gnb_, ncr_backhaul_.position);
        const Direction to_gnb = local_direction(ncr_backhaul_, gnb_.position);
        bh_gnb_beam_ = best_beam(*catalog_, f_m, to_ncr);
        bh_ncr_beam_ = best_beam(*catalog_, f_m, to_gnb);

        const double s = shadowing_gnb(ncr_backhaul_.position);
        const auto &wg = catalog_->codebook.entries[bh_gnb_beam_];
        const auto &wn = catalog_->codebook.entries[bh_ncr_beam_];
        gamma_meas_ = beam_gain(catalog_->geometry, catalog_->element, wg, f_m, to_ncr) *
                      beam_gain(catalog_->geometry, catalog_->element, wn, f_m, to_gnb) *
                      path_gain(gnb_.position, ncr_backhaul_.position, f_m, s);

        const BeamWeights dg = data_weights(gnb_, bh_gnb_beam_, ncr_backhaul_.position);
        const BeamWeights dn = data_weights(ncr_backhaul_, bh_ncr_beam_, gnb_.position);
        gamma_data_ = beam_gain(catalog_->geometry, catalog_->element, dg, f_d, to_ncr) *
                      beam_gain(catalog_->geometry, catalog_->element, dn, f_d, to_gnb) *
                      path_gain(gnb_.position, ncr_backhaul_.position, f_d, s);
    }

    void Simulation::access_sweep()
    {
        const double f_m = frequency_for_measurement();
        const double f_d = ran_.f1_hz + delta_f_;
        const auto &geom = catalog_->geometry;
        const auto &elem = catalog_->element;

        const double g_meas = ncr_gain(p_ncr_rb_w_, noise_ncr_w_, gamma_meas_, p_tx_rb_w_, ran_.ncr_fixed_gain_db);
        const double g_data = ncr_gain(p_ncr_rb_w_, noise_ncr_w_, gamma_data_, p_tx_rb_w_, ran_.ncr_fixed_gain_db);

        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            const Vec3 pos = ues_[u].position;
            const Antenna ue_ant{pos, {}, std::nullopt, ran_.ue_element};
            UeLink link;

            // direct
            const Direction dg = local_direction(gnb_, pos);
            const double ue_g_gnb = antenna_gain(ue_ant, nullptr, f_m, gnb_.position);
            const double sh_g = shadowing_gnb(pos);
            link.gnb_beam = best_beam(*catalog_, f_m, dg);
            const double direct_meas = beam_gain(geom, elem, catalog_->codebook.entries[link.gnb_beam], f_m, dg) *
                                       ue_g_gnb * path_gain(gnb_.position, pos, f_m, sh_g);
            const BeamWeights wd = data_weights(gnb_, link.gnb_beam, pos);
            const double direct_data =
                beam_gain(geom, elem, wd, f_d, dg) * ue_g_gnb * path_gain(gnb_.position, pos, f_d, sh_g);

            const double rsrp_direct = p_tx_rb_w_ * direct_meas;
            link.path = ServingPath::direct;
            link.sinr_est_db = to_db_safe(p_tx_rb_w_ * direct_meas / noise_ue_w_);
            link.sinr_actual_db = to_db_safe(p_tx_rb_w_ * direct_data / noise_ue_w_);

            if (ran_.ncr_enabled)
            {
                const Direction dn = local_direction(ncr_access_, pos);
                const double ue_g_ncr = antenna_gain(ue_ant, nullptr, f_m, ncr_access_.position);
                const double sh_n = shadowing_ncr(pos);
                link.ncr_beam = best_beam(*catalog_, f_m, dn);
                const double acc_meas = beam_gain(geom, elem, catalog_->codebook.entries[link.ncr_beam], f_m, dn) *
                                        ue_g_ncr * path_gain(ncr_access_.position, pos, f_m, sh_n);
                const BeamWeights wa = data_weights(ncr_access_, link.ncr_beam, pos);
                const double acc_data =
                    beam_gain(geom, elem, wa, f_d, dn) * ue_g_ncr * path_gain(ncr_access_.position, pos, f_d, sh_n);

                const double s_meas = p_tx_rb_w_ * gamma_meas_ * g_meas * acc_meas;
                if (s_meas > rsrp_direct)
                {
                    const double i_meas = noise_ncr_w_ * g_meas * acc_meas;
                    const double s_data = p_tx_rb_w_ * gamma_data_ * g_data * acc_data;
                    const double i_data = noise_ncr_w_ * g_data * acc_data;
                    link.path = ServingPath::via_ncr;
                    link.sinr_est_db = to_db_safe(s_meas / (i_meas + noise_ue_w_));
                    link.sinr_actual_db = to_db_safe(s_data / (i_data + noise_ue_w_));
                }
            }
            links_[u] = link;
        }
    }

    std::vector<KpiRecord> Simulation::step()
    {
        if (tti_ % ran_.backhaul_sweep_period == 0)
            backhaul_sweep();
        if (tti_ % ran_.access_sweep_period == 0)
            access_sweep();

        // constant bit rate arrivals
        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            auto &ue = ues_[u];
            if (ran_.packet_bits > 0.0 && (tti_ + ue.traffic_phase) % ran_.packet_interval_slots == 0)
            {
                if (ue.backlog <= 0.0)
                    wait_keys_[u] = ++clock_;
                ue.queue.push_back(ran_.packet_bits);
                ue.backlog += ran_.packet_bits;
            }
        }

        // link adaptation decides how many RBs each backlog needs
        const double rb_bits_per_eff = ran_.rb_bandwidth_hz() * ran_.slot_s;
        std::vector<std::size_t> mcs(ues_.size(), 0);
        std::vector<Bearer> bearers(ues_.size());
        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            bearers[u].wait_key = wait_keys_[u];
            if (ues_[u].backlog <= 0.0)
                continue;
            mcs[u] = link_adapt(links_[u].sinr_est_db, ues_[u].olla, ran_.mcs);
            const double per_rb = ran_.mcs.rows[mcs[u]].spectral_efficiency * rb_bits_per_eff;
            bearers[u].demand_rbs = std::size_t(std::ceil(ues_[u].backlog / per_rb - 1e-9));
        }

        const auto alloc = rr_schedule(bearers, ran_.n_rbs, clock_);
        std::vector<std::size_t> n_rbs(ues_.size(), 0);
        for (int u : alloc)
            if (u >= 0)
                ++n_rbs[std::size_t(u)];

        std::vector<KpiRecord> records;
        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            wait_keys_[u] = bearers[u].wait_key;
            if (n_rbs[u] == 0)
                continue;
            auto &ue = ues_[u];
            const double sinr = links_[u].sinr_actual_db;
            const auto tx = transmit(mcs[u], sinr, ran_.mcs, n_rbs[u], ran_.rb_bandwidth_hz(), ran_.slot_s);
            double delivered = 0.0;
            if (tx.ack)
            {
                double budget = std::min(tx.bits, ue.backlog);
                delivered = budget;
                while (budget > 0.0 && !ue.queue.empty())
                {
                    const double take = std::min(budget, ue.queue.front());
                    ue.queue.front() -= take;
                    budget -= take;
                    if (ue.queue.front() <= 0.0)
                        ue.queue.pop_front();
                }
                ue.backlog = 0.0;
                for (double b : ue.queue)
                    ue.backlog += b;
            }
            olla_update(ue.olla, tx.ack);
            records.push_back({drop_, tti_, u, links_[u].path, mode_, n_rbs[u], sinr, mcs[u], tx.ack, delivered});
        }

        // pedestrians walk during the slot
        std::vector<Pedestrian> walkers;
        walkers.reserve(ues_.size());
        for (auto &ue : ues_)
            walkers.push_back(ue.walker);
        move_pedestrians(graph_, walkers, scenario_.ue_speed_kmh / 3.6, ran_.slot_s, scenario_.turns, mobility_rng_);
        for (std::size_t u = 0; u < ues_.size(); ++u)
        {
            ues_[u].walker = walkers[u];
            ues_[u].position = pedestrian_position(graph_, walkers[u], scenario_.ue_height_m);
        }

        ++tti_;
        return records;
    }
}
