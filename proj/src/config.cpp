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

#include "beamsquint/config.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace bsq
{
    using json = nlohmann::ordered_json;

    ArrayGeometry ArraySpec::make() const
    {
        return kind == ArrayKind::ula ? make_ula(elements, design_frequency_hz)
                                      : make_ura(rows, cols, design_frequency_hz);
    }

    namespace
    {
        std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

        // Object reader that records consumed keys so leftovers can be reported
        class Reader
        {
        public:
            Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    throw ConfigError(path_, "expected an object");
            }

            bool has(const std::string &key) const { return j_.contains(key); }
            std::string at(const std::string &key) const { return join(path_, key); }

            const json *raw(const std::string &key)
            {
                used_.insert(key);
                auto it = j_.find(key);
                return it == j_.end() ? nullptr : &*it;
            }

            double number(const std::string &key, double fallback)
            {
                const json *v = raw(key);
                if (!v)
                    return fallback;
                return as_number(*v, at(key));
            }

            std::size_t count(const std::string &key, std::size_t fallback)
            {
                const json *v = raw(key);
                if (!v)
                    return fallback;
                return as_count(*v, at(key));
            }

            bool boolean(const std::string &key, bool fallback)
            {
                const json *v = raw(key);
                if (!v)
                    return fallback;
                if (!v->is_boolean())
                    throw ConfigError(at(key), "expected true or false");
                return v->get<bool>();
            }

            std::string string(const std::string &key, const std::string &fallback)
            {
                const json *v = raw(key);
                if (!v)
                    return fallback;
                if (!v->is_string())
                    throw ConfigError(at(key), "expected a string");
                return v->get<std::string>();
            }

            void finish() const
            {
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!used_.count(it.key()))
                        throw ConfigError(at(it.key()), "unknown key");
            }

            static double as_number(const json &v, const std::string &path)
            {
                if (!v.is_number())
                    throw ConfigError(path, "expected a number");
                const double d = v.get<double>();
                if (!std::isfinite(d))
                    throw ConfigError(path, "expected a finite number");
                return d;
            }

            static std::size_t as_count(const json &v, const std::string &path)
            {
                if (v.is_number_unsigned())
                    return v.get<std::size_t>();
                if (v.is_number_integer() && v.get<long long>() >= 0)
                    return std::size_t(v.get<long long>());
                throw ConfigError(path, "expected a non-negative integer");
            }

        private:
            const json &j_;
            std::string path_;
            std::set<std::string> used_;
        };

        void require(bool ok, const std::string &path, const std::string &msg)
        {
            if (!ok)
                throw ConfigError(path, msg);
        }

        // ------------------------------------------------------------ sections

        ArraySpec read_array(const json &j, const std::string &path)
        {
            Reader r(j, path);
            ArraySpec a;
            const std::string type = r.string("type", "ula");
            if (type == "ula")
                a.kind = ArrayKind::ula;
            else if (type == "ura")
                a.kind = ArrayKind::ura;
            else
                throw ConfigError(r.at("type"), "expected \"ula\" or \"ura\"");
            a.elements = r.count("elements", a.elements);
            a.rows = r.count("rows", a.rows);
            a.cols = r.count("cols", a.cols);
            a.design_frequency_hz = r.number("design_frequency_hz", a.design_frequency_hz);
            r.finish();
            require(a.kind != ArrayKind::ula || a.elements >= 1, r.at("elements"), "must be at least 1");
            require(a.kind != ArrayKind::ura || (a.rows >= 1 && a.cols >= 1), path, "rows and cols must be at least 1");
            require(a.design_frequency_hz > 0.0, r.at("design_frequency_hz"), "must be positive");
            return a;
        }

        json write_array(const ArraySpec &a)
        {
            json j;
            j["type"] = a.kind == ArrayKind::ula ? "ula" : "ura";
            j["elements"] = a.elements;
            j["rows"] = a.rows;
            j["cols"] = a.cols;
            j["design_frequency_hz"] = a.design_frequency_hz;
            return j;
        }

        ElementPattern read_element(const json &j, const std::string &path)
        {
            Reader r(j, path);
            ElementPattern e;
            const std::string kind = r.string("kind", "sector_3gpp");
            if (kind == "omni")
                e.kind = ElementKind::omni;
            else if (kind == "sector_3gpp")
                e.kind = ElementKind::sector_3gpp;
            else
                throw ConfigError(r.at("kind"), "expected \"omni\" or \"sector_3gpp\"");
            e.max_gain_dbi = r.number("max_gain_dbi", e.kind == ElementKind::omni ? 0.0 : 8.0);
            e.hpbw_horizontal_deg = r.number("hpbw_horizontal_deg", e.hpbw_horizontal_deg);
            e.hpbw_vertical_deg = r.number("hpbw_vertical_deg", e.hpbw_vertical_deg);
            e.front_back_db = r.number("front_back_db", e.front_back_db);
            e.side_lobe_vertical_db = r.number("side_lobe_vertical_db", e.side_lobe_vertical_db);
            r.finish();
            require(e.hpbw_horizontal_deg > 0.0, r.at("hpbw_horizontal_deg"), "must be positive");
            require(e.hpbw_vertical_deg > 0.0, r.at("hpbw_vertical_deg"), "must be positive");
            require(e.front_back_db >= 0.0, r.at("front_back_db"), "must be non-negative");
            require(e.side_lobe_vertical_db >= 0.0, r.at("side_lobe_vertical_db"), "must be non-negative");
            return e;
        }

        json write_element(const ElementPattern &e)
        {
            json j;
            j["kind"] = e.kind == ElementKind::omni ? "omni" : "sector_3gpp";
            j["max_gain_dbi"] = e.max_gain_dbi;
            j["hpbw_horizontal_deg"] = e.hpbw_horizontal_deg;
            j["hpbw_vertical_deg"] = e.hpbw_vertical_deg;
            j["front_back_db"] = e.front_back_db;
            j["side_lobe_vertical_db"] = e.side_lobe_vertical_db;
            return j;
        }

        std::vector<BeamSpec> read_beams(const json *j, const std::string &path, std::size_t n_entries)
        {
            std::vector<BeamSpec> out;
            if (!j)
                return out;
            require(j->is_array(), path, "expected a list of beams");
            std::set<std::string> labels;
            for (std::size_t i = 0; i < j->size(); ++i)
            {
                const std::string p = path + "[" + std::to_string(i) + "]";
                Reader r((*j)[i], p);
                BeamSpec b;
                b.label = r.string("label", "");
                require(!b.label.empty(), r.at("label"), "required");
                for (char c : b.label)
                    require(std::isalnum((unsigned char)c) || c == '_' || c == '-', r.at("label"),
                            "only letters, digits, '_' and '-' are allowed");
                require(labels.insert(b.label).second, r.at("label"), "duplicate label");
                if (const json *v = r.raw("dft_index"))
                    b.dft_index = Reader::as_count(*v, r.at("dft_index"));
                if (const json *v = r.raw("steer_azimuth_deg"))
                    b.steer_azimuth_deg = Reader::as_number(*v, r.at("steer_azimuth_deg"));
                b.steer_zenith_deg = r.number("steer_zenith_deg", b.steer_zenith_deg);
                if (const json *v = r.raw("served_azimuth_deg"))
                    b.served_azimuth_deg = Reader::as_number(*v, r.at("served_azimuth_deg"));
                b.served_zenith_deg = r.number("served_zenith_deg", b.served_zenith_deg);
                r.finish();
                require(b.dft_index.has_value() != b.steer_azimuth_deg.has_value(), p,
                        "exactly one of dft_index and steer_azimuth_deg is required");
                require(!b.dft_index || *b.dft_index < n_entries, r.at("dft_index"),
                        "exceeds the codebook size " + std::to_string(n_entries));
                require(b.steer_zenith_deg >= 0.0 && b.steer_zenith_deg <= 180.0, r.at("steer_zenith_deg"),
                        "must lie in [0, 180]");
                require(b.served_zenith_deg >= 0.0 && b.served_zenith_deg <= 180.0, r.at("served_zenith_deg"),
                        "must lie in [0, 180]");
                out.push_back(b);
            }
            return out;
        }

        json write_beams(const std::vector<BeamSpec> &beams)
        {
            json arr = json::array();
            for (const auto &b : beams)
            {
                json j;
                j["label"] = b.label;
                if (b.dft_index)
                    j["dft_index"] = *b.dft_index;
                if (b.steer_azimuth_deg)
                    j["steer_azimuth_deg"] = *b.steer_azimuth_deg;
                j["steer_zenith_deg"] = b.steer_zenith_deg;
                if (b.served_azimuth_deg)
                    j["served_azimuth_deg"] = *b.served_azimuth_deg;
                j["served_zenith_deg"] = b.served_zenith_deg;
                arr.push_back(j);
            }
            return arr;
        }

        std::size_t codebook_size(const ArraySpec &a, std::size_t oversampling)
        {
            return a.kind == ArrayKind::ula ? oversampling * a.elements : oversampling * oversampling * a.rows * a.cols;
        }

        PatternConfig read_pattern(const json &j, const std::string &path)
        {
            Reader r(j, path);
            PatternConfig c;
            const json *a = r.raw("array");
            require(a != nullptr, r.at("array"), "required");
            c.array = read_array(*a, r.at("array"));
            if (const json *e = r.raw("element"))
                c.element = read_element(*e, r.at("element"));
            c.oversampling = r.count("oversampling", c.oversampling);
            require(c.oversampling >= 1, r.at("oversampling"), "must be at least 1");
            c.beams = read_beams(r.raw("beams"), r.at("beams"), codebook_size(c.array, c.oversampling));
            if (const json *f = r.raw("frequencies_hz"))
            {
                require(f->is_array(), r.at("frequencies_hz"), "expected a list of numbers");
                for (std::size_t i = 0; i < f->size(); ++i)
                {
                    const std::string p = r.at("frequencies_hz") + "[" + std::to_string(i) + "]";
                    const double v = Reader::as_number((*f)[i], p);
                    require(v > 0.0, p, "must be positive");
                    c.frequencies_hz.push_back(v);
                }
            }
            c.compensation = r.boolean("compensation", c.compensation);
            c.cut = r.string("cut", c.cut);
            require(c.cut == "azimuth" || c.cut == "zenith" || c.cut == "both", r.at("cut"),
                    "expected \"azimuth\", \"zenith\" or \"both\"");
            c.coarse_step_deg = r.number("coarse_step_deg", c.coarse_step_deg);
            c.fine_step_deg = r.number("fine_step_deg", c.fine_step_deg);
            c.fine_window_deg = r.number("fine_window_deg", c.fine_window_deg);
            c.peak_grid_step_deg = r.number("peak_grid_step_deg", c.peak_grid_step_deg);
            r.finish();
            require(c.coarse_step_deg > 0.0, r.at("coarse_step_deg"), "must be positive");
            require(c.fine_step_deg > 0.0, r.at("fine_step_deg"), "must be positive");
            require(c.fine_window_deg >= 0.0, r.at("fine_window_deg"), "must be non-negative");
            require(c.peak_grid_step_deg > 0.0, r.at("peak_grid_step_deg"), "must be positive");
            return c;
        }

        json write_pattern(const PatternConfig &c)
        {
            json j;
            j["array"] = write_array(c.array);
            j["element"] = write_element(c.element);
            j["oversampling"] = c.oversampling;
            j["beams"] = write_beams(c.beams);
            j["frequencies_hz"] = c.frequencies_hz;
            j["compensation"] = c.compensation;
            j["cut"] = c.cut;
            j["coarse_step_deg"] = c.coarse_step_deg;
            j["fine_step_deg"] = c.fine_step_deg;
            j["fine_window_deg"] = c.fine_window_deg;
            j["peak_grid_step_deg"] = c.peak_grid_step_deg;
            return j;
        }

        SweepOffsetConfig read_sweep(const json &j, const std::string &path)
        {
            Reader r(j, path);
            SweepOffsetConfig c;
            const json *a = r.raw("array");
            require(a != nullptr, r.at("array"), "required");
            c.array = read_array(*a, r.at("array"));
            if (const json *e = r.raw("element"))
                c.element = read_element(*e, r.at("element"));
            c.oversampling = r.count("oversampling", c.oversampling);
            require(c.oversampling >= 1, r.at("oversampling"), "must be at least 1");
            c.beams = read_beams(r.raw("beams"), r.at("beams"), codebook_size(c.array, c.oversampling));
            c.delta_f_min_hz = r.number("delta_f_min_hz", c.delta_f_min_hz);
            c.delta_f_max_hz = r.number("delta_f_max_hz", c.delta_f_max_hz);
            c.delta_f_step_hz = r.number("delta_f_step_hz", c.delta_f_step_hz);
            r.finish();
            require(c.delta_f_max_hz >= c.delta_f_min_hz, r.at("delta_f_max_hz"), "must not be below delta_f_min_hz");
            require(c.delta_f_step_hz > 0.0, r.at("delta_f_step_hz"), "must be positive");
            require(c.array.design_frequency_hz + c.delta_f_min_hz > 0.0, r.at("delta_f_min_hz"),
                    "would make the frequency non-positive");
            return c;
        }

        json write_sweep(const SweepOffsetConfig &c)
        {
            json j;
            j["array"] = write_array(c.array);
            j["element"] = write_element(c.element);
            j["oversampling"] = c.oversampling;
            j["beams"] = write_beams(c.beams);
            j["delta_f_min_hz"] = c.delta_f_min_hz;
            j["delta_f_max_hz"] = c.delta_f_max_hz;
            j["delta_f_step_hz"] = c.delta_f_step_hz;
            return j;
        }

        PathLossModel read_pathloss(const json &j, const std::string &path, PathLossModel m)
        {
            Reader r(j, path);
            m.a = r.number("a", m.a);
            m.b = r.number("b", m.b);
            m.c = r.number("c", m.c);
            r.finish();
            require(m.b > 0.0, r.at("b"), "must be positive");
            require(m.c >= 0.0, r.at("c"), "must be non-negative");
            return m;
        }

        json write_pathloss(const PathLossModel &m) { return json{{"a", m.a}, {"b", m.b}, {"c", m.c}}; }

        McsTable read_mcs_inline(const json &j, const std::string &path)
        {
            require(j.is_array() && !j.empty(), path, "expected a non-empty list of rows");
            McsTable t;
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                Reader r(j[i], path + "[" + std::to_string(i) + "]");
                const json *thr = r.raw("threshold_db");
                const json *eff = r.raw("spectral_efficiency");
                require(thr && eff, path + "[" + std::to_string(i) + "]",
                        "threshold_db and spectral_efficiency are required");
                t.rows.push_back({Reader::as_number(*thr, r.at("threshold_db")),
                                  Reader::as_number(*eff, r.at("spectral_efficiency"))});
                r.finish();
            }
            try
            {
                t.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(path, e.what());
            }
            return t;
        }

        RanConfig read_ran(const json &j, const std::string &path, const std::string &base_dir)
        {
            Reader r(j, path);
            RanConfig c;
            c.f1_hz = r.number("f1_hz", c.f1_hz);
            c.oversampling = r.count("oversampling", c.oversampling);
            if (const json *e = r.raw("infra_element"))
                c.infra_element = read_element(*e, r.at("infra_element"));
            if (const json *e = r.raw("ue_element"))
                c.ue_element = read_element(*e, r.at("ue_element"));
            c.n_rbs = r.count("n_rbs", c.n_rbs);
            c.subcarriers_per_rb = r.count("subcarriers_per_rb", c.subcarriers_per_rb);
            c.subcarrier_spacing_hz = r.number("subcarrier_spacing_hz", c.subcarrier_spacing_hz);
            c.slot_s = r.number("slot_s", c.slot_s);
            c.gnb_tx_power_dbm = r.number("gnb_tx_power_dbm", c.gnb_tx_power_dbm);
            c.ncr_max_output_dbm = r.number("ncr_max_output_dbm", c.ncr_max_output_dbm);
            c.ncr_fixed_gain_db = r.number("ncr_fixed_gain_db", c.ncr_fixed_gain_db);
            c.ue_noise_figure_db = r.number("ue_noise_figure_db", c.ue_noise_figure_db);
            c.ncr_noise_figure_db = r.number("ncr_noise_figure_db", c.ncr_noise_figure_db);
            c.ncr_enabled = r.boolean("ncr_enabled", c.ncr_enabled);
            if (const json *m = r.raw("path_loss_los"))
                c.los = read_pathloss(*m, r.at("path_loss_los"), c.los);
            if (const json *m = r.raw("path_loss_nlos"))
                c.nlos = read_pathloss(*m, r.at("path_loss_nlos"), c.nlos);
            c.blockage = r.boolean("blockage", c.blockage);
            c.shadowing_sigma_db = r.number("shadowing_sigma_db", c.shadowing_sigma_db);
            c.shadowing_decorrelation_m = r.number("shadowing_decorrelation_m", c.shadowing_decorrelation_m);
            c.access_sweep_period = r.count("access_sweep_period", c.access_sweep_period);
            c.backhaul_sweep_period = r.count("backhaul_sweep_period", c.backhaul_sweep_period);
            c.main_direction_threshold_db = r.number("main_direction_threshold_db", c.main_direction_threshold_db);
            c.direction_error_deg = r.number("direction_error_deg", c.direction_error_deg);
            c.olla_step_up_db = r.number("olla_step_up_db", c.olla_step_up_db);
            c.olla_step_down_db = r.number("olla_step_down_db", c.olla_step_down_db);
            c.packet_bits = r.number("packet_bits", c.packet_bits);
            c.packet_interval_slots = r.count("packet_interval_slots", c.packet_interval_slots);

            const json *inline_table = r.raw("mcs_table");
            const json *file = r.raw("mcs_table_file");
            require(!(inline_table && file), path, "give either mcs_table or mcs_table_file, not both");
            if (inline_table)
                c.mcs = read_mcs_inline(*inline_table, r.at("mcs_table"));
            if (file)
            {
                require(file->is_string(), r.at("mcs_table_file"), "expected a path string");
                std::filesystem::path p(file->get<std::string>());
                if (p.is_relative())
                    p = std::filesystem::path(base_dir) / p;
                try
                {
                    c.mcs = McsTable::from_csv(p.string());
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(r.at("mcs_table_file"), e.what());
                }
            }
            r.finish();
            try
            {
                c.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(path, e.what());
            }
            return c;
        }

        json write_ran(const RanConfig &c)
        {
            json j;
            j["f1_hz"] = c.f1_hz;
            j["oversampling"] = c.oversampling;
            j["infra_element"] = write_element(c.infra_element);
            j["ue_element"] = write_element(c.ue_element);
            j["n_rbs"] = c.n_rbs;
            j["subcarriers_per_rb"] = c.subcarriers_per_rb;
            j["subcarrier_spacing_hz"] = c.subcarrier_spacing_hz;
            j["slot_s"] = c.slot_s;
            j["gnb_tx_power_dbm"] = c.gnb_tx_power_dbm;
            j["ncr_max_output_dbm"] = c.ncr_max_output_dbm;
            j["ncr_fixed_gain_db"] = c.ncr_fixed_gain_db;
            j["ue_noise_figure_db"] = c.ue_noise_figure_db;
            j["ncr_noise_figure_db"] = c.ncr_noise_figure_db;
            j["ncr_enabled"] = c.ncr_enabled;
            j["path_loss_los"] = write_pathloss(c.los);
            j["path_loss_nlos"] = write_pathloss(c.nlos);
            j["blockage"] = c.blockage;
            j["shadowing_sigma_db"] = c.shadowing_sigma_db;
            j["shadowing_decorrelation_m"] = c.shadowing_decorrelation_m;
            j["access_sweep_period"] = c.access_sweep_period;
            j["backhaul_sweep_period"] = c.backhaul_sweep_period;
            j["main_direction_threshold_db"] = c.main_direction_threshold_db;
            j["direction_error_deg"] = c.direction_error_deg;
            j["olla_step_up_db"] = c.olla_step_up_db;
            j["olla_step_down_db"] = c.olla_step_down_db;
            j["packet_bits"] = c.packet_bits;
            j["packet_interval_slots"] = c.packet_interval_slots;
            json rows = json::array();
            for (const auto &row : c.mcs.rows)
                rows.push_back(json{{"threshold_db", row.threshold_db}, {"spectral_efficiency", row.spectral_efficiency}});
            j["mcs_table"] = rows;
            return j;
        }

        ScenarioConfig read_scenario(const json &j, const std::string &path)
        {
            Reader r(j, path);
            ScenarioConfig c;
            c.layout.blocks_x = r.count("blocks_x", c.layout.blocks_x);
            c.layout.blocks_y = r.count("blocks_y", c.layout.blocks_y);
            c.layout.block_size_m = r.number("block_size_m", c.layout.block_size_m);
            c.layout.street_width_m = r.number("street_width_m", c.layout.street_width_m);
            c.layout.sidewalk_width_m = r.number("sidewalk_width_m", c.layout.sidewalk_width_m);
            c.ue_street = r.count("ue_street", c.ue_street);
            c.ncr_cross_street = r.count("ncr_cross_street", c.ncr_cross_street);
            c.gnb_block_offset = r.count("gnb_block_offset", c.gnb_block_offset);
            c.curb_offset_m = r.number("curb_offset_m", c.curb_offset_m);
            c.n_ues = r.count("n_ues", c.n_ues);
            c.ue_speed_kmh = r.number("ue_speed_kmh", c.ue_speed_kmh);
            if (const json *t = r.raw("turn_probabilities"))
            {
                Reader tr(*t, r.at("turn_probabilities"));
                c.turns.continue_straight = tr.number("continue", c.turns.continue_straight);
                c.turns.turn_left = tr.number("left", c.turns.turn_left);
                c.turns.turn_right = tr.number("right", c.turns.turn_right);
                c.turns.cross = tr.number("cross", c.turns.cross);
                tr.finish();
            }
            c.gnb_height_m = r.number("gnb_height_m", c.gnb_height_m);
            c.ncr_height_m = r.number("ncr_height_m", c.ncr_height_m);
            c.ue_height_m = r.number("ue_height_m", c.ue_height_m);
            c.gnb_yaw_deg = r.number("gnb_yaw_deg", c.gnb_yaw_deg);
            c.gnb_downtilt_deg = r.number("gnb_downtilt_deg", c.gnb_downtilt_deg);
            c.ncr_access_yaw_deg = r.number("ncr_access_yaw_deg", c.ncr_access_yaw_deg);
            c.ncr_access_downtilt_deg = r.number("ncr_access_downtilt_deg", c.ncr_access_downtilt_deg);
            c.ncr_backhaul_yaw_deg = r.number("ncr_backhaul_yaw_deg", c.ncr_backhaul_yaw_deg);
            c.ncr_backhaul_downtilt_deg = r.number("ncr_backhaul_downtilt_deg", c.ncr_backhaul_downtilt_deg);
            r.finish();
            require(c.ue_street <= c.layout.blocks_y, r.at("ue_street"), "street index out of range");
            require(c.ncr_cross_street <= c.layout.blocks_x, r.at("ncr_cross_street"), "street index out of range");
            try
            {
                c.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(path, e.what());
            }
            return c;
        }

        json write_scenario(const ScenarioConfig &c)
        {
            json j;
            j["blocks_x"] = c.layout.blocks_x;
            j["blocks_y"] = c.layout.blocks_y;
            j["block_size_m"] = c.layout.block_size_m;
            j["street_width_m"] = c.layout.street_width_m;
            j["sidewalk_width_m"] = c.layout.sidewalk_width_m;
            j["ue_street"] = c.ue_street;
            j["ncr_cross_street"] = c.ncr_cross_street;
            j["gnb_block_offset"] = c.gnb_block_offset;
            j["curb_offset_m"] = c.curb_offset_m;
            j["n_ues"] = c.n_ues;
            j["ue_speed_kmh"] = c.ue_speed_kmh;
            j["turn_probabilities"] = json{{"continue", c.turns.continue_straight},
                                           {"left", c.turns.turn_left},
                                           {"right", c.turns.turn_right},
                                           {"cross", c.turns.cross}};
            j["gnb_height_m"] = c.gnb_height_m;
            j["ncr_height_m"] = c.ncr_height_m;
            j["ue_height_m"] = c.ue_height_m;
            j["gnb_yaw_deg"] = c.gnb_yaw_deg;
            j["gnb_downtilt_deg"] = c.gnb_downtilt_deg;
            j["ncr_access_yaw_deg"] = c.ncr_access_yaw_deg;
            j["ncr_access_downtilt_deg"] = c.ncr_access_downtilt_deg;
            j["ncr_backhaul_yaw_deg"] = c.ncr_backhaul_yaw_deg;
            j["ncr_backhaul_downtilt_deg"] = c.ncr_backhaul_downtilt_deg;
            return j;
        }

        SimulationConfig read_simulation(const json &j, const std::string &path, const std::string &base_dir)
        {
            Reader r(j, path);
            SimulationConfig c;
            if (const json *v = r.raw("ran"))
                c.ran = read_ran(*v, r.at("ran"), base_dir);
            if (const json *v = r.raw("scenario"))
                c.scenario = read_scenario(*v, r.at("scenario"));

            if (const json *v = r.raw("array_elements"))
            {
                require(v->is_array() && !v->empty(), r.at("array_elements"), "expected a non-empty list");
                c.array_elements.clear();
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    const std::string p = r.at("array_elements") + "[" + std::to_string(i) + "]";
                    const std::size_t n = Reader::as_count((*v)[i], p);
                    require(n >= 1, p, "must be at least 1");
                    c.array_elements.push_back(n);
                }
            }
            if (const json *v = r.raw("delta_f_hz"))
            {
                require(v->is_array() && !v->empty(), r.at("delta_f_hz"), "expected a non-empty list");
                c.delta_f_hz.clear();
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    const std::string p = r.at("delta_f_hz") + "[" + std::to_string(i) + "]";
                    const double d = Reader::as_number((*v)[i], p);
                    require(c.ran.f1_hz + d > 0.0, p, "would make the data frequency non-positive");
                    c.delta_f_hz.push_back(d);
                }
            }
            if (const json *v = r.raw("modes"))
            {
                require(v->is_array() && !v->empty(), r.at("modes"), "expected a non-empty list");
                c.modes.clear();
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    const std::string p = r.at("modes") + "[" + std::to_string(i) + "]";
                    require((*v)[i].is_string(), p, "expected a mode name");
                    try
                    {
                        c.modes.push_back(mode_from_string((*v)[i].get<std::string>()));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(p, e.what());
                    }
                }
            }
            c.drops = r.count("drops", c.drops);
            c.ttis = r.count("ttis", c.ttis);
            if (const json *v = r.raw("seed"))
            {
                require(v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0), r.at("seed"),
                        "expected a non-negative integer");
                c.seed = v->get<std::uint64_t>();
            }
            c.threads = r.count("threads", c.threads);
            c.write_records = r.boolean("write_records", c.write_records);
            r.finish();
            require(c.drops >= 1, r.at("drops"), "must be at least 1");
            require(c.ttis >= 1, r.at("ttis"), "must be at least 1");
            require(c.threads >= 1, r.at("threads"), "must be at least 1");
            return c;
        }

        json write_simulation(const SimulationConfig &c)
        {
            json j;
            j["ran"] = write_ran(c.ran);
            j["scenario"] = write_scenario(c.scenario);
            j["array_elements"] = c.array_elements;
            j["delta_f_hz"] = c.delta_f_hz;
            json modes = json::array();
            for (Mode m : c.modes)
                modes.push_back(std::string(to_string(m)));
            j["modes"] = modes;
            j["drops"] = c.drops;
            j["ttis"] = c.ttis;
            j["seed"] = c.seed;
            j["threads"] = c.threads;
            j["write_records"] = c.write_records;
            return j;
        }
    }

    Config parse_config(const std::string &text, const std::string &base_dir)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("", std::string("malformed JSON: ") + e.what());
        }

        Reader r(j, "");
        Config c;
        const json *v = r.raw("schema_version");
        require(v != nullptr, "schema_version", "required");
        require(v->is_number_integer(), "schema_version", "expected an integer");
        c.schema_version = v->get<int>();
        require(c.schema_version == config_schema_version, "schema_version",
                "unsupported version " + std::to_string(c.schema_version) + " (expected " +
                    std::to_string(config_schema_version) + ")");
        if (const json *s = r.raw("pattern"))
            c.pattern = read_pattern(*s, "pattern");
        if (const json *s = r.raw("sweep_offset"))
            c.sweep_offset = read_sweep(*s, "sweep_offset");
        if (const json *s = r.raw("simulation"))
            c.simulation = read_simulation(*s, "simulation", base_dir);
        r.finish();
        return c;
    }

    Config load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("", "cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        const auto parent = std::filesystem::path(path).parent_path();
        return parse_config(ss.str(), parent.empty() ? "." : parent.string());
    }

    std::string serialize_config(const Config &cfg)
    {
        json j;
        j["schema_version"] = cfg.schema_version;
        if (cfg.pattern)
            j["pattern"] = write_pattern(*cfg.pattern);
        if (cfg.sweep_offset)
            j["sweep_offset"] = write_sweep(*cfg.sweep_offset);
        if (cfg.simulation)
            j["simulation"] = write_simulation(*cfg.simulation);
        return j.dump(2) + "\n";
    }
}
