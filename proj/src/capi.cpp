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

#include "beamsquint/beamsquint.h"

#include "beamsquint/config.hpp"
#include "beamsquint/experiments.hpp"
#include "beamsquint/squint.hpp"

#include <cstring>
#include <mutex>
#include <string>

struct bsq_array
{
    bsq::ArrayGeometry geom;
};

struct bsq_config
{
    bsq::Config cfg;
};

namespace
{
    thread_local std::string last_error;
    thread_local std::string last_field;

    std::mutex log_mutex;
    bsq_log_fn log_fn = nullptr;
    void *log_user = nullptr;

    bsq_status fail(bsq_status code, const std::string &msg, const std::string &field = "")
    {
        last_error = msg;
        last_field = field;
        return code;
    }

    // Runs f and converts exceptions into status codes
    template <typename F>
    bsq_status guarded(F &&f)
    {
        last_error.clear();
        last_field.clear();
        try
        {
            f();
            return BSQ_OK;
        }
        catch (const bsq::ConfigError &e)
        {
            return fail(BSQ_ERR_CONFIG, e.what(), e.field());
        }
        catch (const std::invalid_argument &e)
        {
            return fail(BSQ_ERR_INVALID_ARGUMENT, e.what());
        }
        catch (const std::exception &e)
        {
            return fail(BSQ_ERR_RUNTIME, e.what());
        }
        catch (...)
        {
            return fail(BSQ_ERR_RUNTIME, "unknown error");
        }
    }

    void require(bool ok, const char *what)
    {
        if (!ok)
            throw std::invalid_argument(what);
    }

    bsq::ElementPattern to_pattern(bsq_element e)
    {
        if (e.kind == BSQ_ELEMENT_OMNI)
        {
            bsq::ElementPattern p;
            p.max_gain_dbi = e.max_gain_dbi;
            return p;
        }
        if (e.kind == BSQ_ELEMENT_SECTOR_3GPP)
            return bsq::ElementPattern::sector(e.max_gain_dbi);
        throw std::invalid_argument("unknown element kind");
    }

    bsq::BeamWeights to_weights(const bsq_array *array, const bsq_complex *w, std::size_t len)
    {
        require(array && w, "null argument");
        require(len == array->geom.element_count(), "weight length does not match the array element count");
        bsq::cvec v(len);
        for (std::size_t i = 0; i < len; ++i)
            v[i] = {w[i].re, w[i].im};
        return bsq::BeamWeights(std::move(v));
    }

    void copy_out(const bsq::cvec &v, bsq_complex *out, std::size_t len)
    {
        require(out != nullptr, "null output buffer");
        require(len == v.size(), "output length does not match the array element count");
        for (std::size_t i = 0; i < len; ++i)
            out[i] = {v[i].real(), v[i].imag()};
    }

    bsq::LogFn logger()
    {
        return [](bsq::LogLevel level, const std::string &msg) {
            std::lock_guard lock(log_mutex);
            if (log_fn)
                log_fn(int(level), msg.c_str(), log_user);
        };
    }

    bsq::SearchRegion peak_region(const bsq::ArrayGeometry &g)
    {
        return g.kind == bsq::ArrayKind::ura ? bsq::SearchRegion::front_hemisphere() : bsq::SearchRegion::azimuth_cut();
    }
}

extern "C" {

const char *bsq_version(void) { return BSQ_VERSION; }
const char *bsq_last_error(void) { return last_error.c_str(); }
const char *bsq_last_error_field(void) { return last_field.c_str(); }

void bsq_set_log_callback(bsq_log_fn fn, void *user)
{
    std::lock_guard lock(log_mutex);
    log_fn = fn;
    log_user = user;
}

bsq_status bsq_array_create_ula(size_t n_elements, double design_frequency_hz, bsq_array **out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        *out = new bsq_array{bsq::make_ula(n_elements, design_frequency_hz)};
    });
}

bsq_status bsq_array_create_ura(size_t n_rows, size_t n_cols, double design_frequency_hz, bsq_array **out)
{
    return guarded([&] {
        require(out != nullptr, "null output handle");
        *out = new bsq_array{bsq::make_ura(n_rows, n_cols, design_frequency_hz)};
    });
}

void bsq_array_destroy(bsq_array *array) { delete array; }

size_t bsq_array_element_count(const bsq_array *array) { return array ? array->geom.element_count() : 0; }

bsq_status bsq_steering_vector(const bsq_array *array, double frequency_hz, double azimuth_deg, double zenith_deg,
                               bsq_complex *out, size_t len)
{
    return guarded([&] {
        require(array != nullptr, "null array handle");
        copy_out(bsq::steering_vector(array->geom, frequency_hz, bsq::Direction(azimuth_deg, zenith_deg)), out, len);
    });
}

bsq_status bsq_dft_weights(const bsq_array *array, size_t oversampling, size_t index, bsq_complex *out, size_t len)
{
    return guarded([&] {
        require(array != nullptr, "null array handle");
        bsq::ArraySpec spec;
        spec.design_frequency_hz = array->geom.design_frequency_hz;
        if (array->geom.kind == bsq::ArrayKind::ura)
        {
            spec.kind = bsq::ArrayKind::ura;
            spec.rows = array->geom.rows;
            spec.cols = array->geom.cols;
        }
        else
            spec.elements = array->geom.element_count();
        require(oversampling >= 1, "oversampling must be at least 1");
        bsq::BeamSpec beam;
        beam.label = "capi";
        beam.dft_index = index;
        copy_out(bsq::beam_weights(spec, oversampling, beam).values(), out, len);
    });
}

bsq_status bsq_beam_gain(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                         double frequency_hz, double azimuth_deg, double zenith_deg, double *gain)
{
    return guarded([&] {
        require(gain != nullptr, "null output");
        const auto w = to_weights(array, weights, len);
        *gain = bsq::beam_gain(array->geom, to_pattern(element), w, frequency_hz, bsq::Direction(azimuth_deg, zenith_deg));
    });
}

bsq_status bsq_find_peak(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                         double frequency_hz, double grid_step_deg, double *azimuth_deg, double *zenith_deg)
{
    return guarded([&] {
        require(azimuth_deg && zenith_deg, "null output");
        const auto w = to_weights(array, weights, len);
        const auto pk =
            bsq::find_peak(array->geom, to_pattern(element), w, frequency_hz, grid_step_deg, peak_region(array->geom));
        *azimuth_deg = pk.azimuth_deg();
        *zenith_deg = pk.zenith_deg();
    });
}

bsq_status bsq_hpbw(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                    double frequency_hz, double peak_azimuth_deg, double peak_zenith_deg, double *width_deg)
{
    return guarded([&] {
        require(width_deg != nullptr, "null output");
        const auto w = to_weights(array, weights, len);
        *width_deg = bsq::hpbw(array->geom, to_pattern(element), w, frequency_hz,
                               bsq::Direction(peak_azimuth_deg, peak_zenith_deg));
    });
}

bsq_status bsq_predict_squint(double theta1_deg, double f1_hz, double delta_f_hz, double *shift_deg)
{
    return guarded([&] {
        require(shift_deg != nullptr, "null output");
        *shift_deg = bsq::predict_squint_deg(theta1_deg, f1_hz, delta_f_hz);
    });
}

bsq_status bsq_compensation_vector(const bsq_array *array, double f1_hz, double delta_f_hz, double azimuth_deg,
                                   double zenith_deg, bsq_complex *out, size_t len)
{
    return guarded([&] {
        require(array != nullptr, "null array handle");
        const auto c = bsq::compensation_vector(array->geom, {f1_hz, delta_f_hz}, bsq::Direction(azimuth_deg, zenith_deg));
        copy_out(c.entries, out, len);
    });
}

bsq_status bsq_apply_compensation(const bsq_complex *weights, const bsq_complex *compensation, size_t len,
                                  bsq_complex *out)
{
    return guarded([&] {
        require(weights && compensation && out, "null argument");
        for (std::size_t i = 0; i < len; ++i)
        {
            const std::complex<double> v = std::complex<double>(weights[i].re, weights[i].im) *
                                           std::complex<double>(compensation[i].re, compensation[i].im);
            out[i] = {v.real(), v.imag()};
        }
    });
}

bsq_status bsq_path_loss(double a, double b, double c, double distance_m, double frequency_hz, double *loss_db)
{
    return guarded([&] {
        require(loss_db != nullptr, "null output");
        *loss_db = bsq::path_loss_db({a, b, c}, distance_m, frequency_hz);
    });
}

bsq_status bsq_path_loss_delta(double c, double f1_hz, double delta_f_hz, double *delta_db)
{
    return guarded([&] {
        require(delta_db != nullptr, "null output");
        *delta_db = bsq::path_loss_delta_db(c, f1_hz, delta_f_hz);
    });
}

bsq_status bsq_noise_power(size_t n_subcarriers, double subcarrier_spacing_hz, double noise_figure_db, double *noise_dbm)
{
    return guarded([&] {
        require(noise_dbm != nullptr, "null output");
        *noise_dbm = bsq::noise_power_dbm(n_subcarriers, subcarrier_spacing_hz, noise_figure_db);
    });
}

bsq_status bsq_ncr_gain(double p_ncr_w, double noise_w, double gamma, double p_tx_w, double fixed_gain_db, double *gain)
{
    return guarded([&] {
        require(gain != nullptr, "null output");
        *gain = bsq::ncr_gain(p_ncr_w, noise_w, gamma, p_tx_w, fixed_gain_db);
    });
}

bsq_status bsq_config_load(const char *path, bsq_config **out)
{
    return guarded([&] {
        require(path && out, "null argument");
        *out = new bsq_config{bsq::load_config(path)};
    });
}

bsq_status bsq_config_parse(const char *json_text, bsq_config **out)
{
    return guarded([&] {
        require(json_text && out, "null argument");
        *out = new bsq_config{bsq::parse_config(json_text)};
    });
}

void bsq_config_destroy(bsq_config *config) { delete config; }

int bsq_config_has_section(const bsq_config *config, const char *section)
{
    if (!config || !section)
        return 0;
    const std::string s(section);
    if (s == "pattern")
        return config->cfg.pattern.has_value();
    if (s == "sweep_offset")
        return config->cfg.sweep_offset.has_value();
    if (s == "simulation")
        return config->cfg.simulation.has_value();
    return 0;
}

bsq_status bsq_config_serialize(const bsq_config *config, char *buf, size_t capacity, size_t *needed)
{
    std::string text;
    const auto st = guarded([&] {
        require(config != nullptr, "null config handle");
        text = bsq::serialize_config(config->cfg);
    });
    if (st != BSQ_OK)
        return st;
    if (needed)
        *needed = text.size() + 1;
    if (!buf)
        return BSQ_OK;
    if (capacity < text.size() + 1)
        return fail(BSQ_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) + " bytes, " +
                                                  std::to_string(text.size() + 1) + " needed");
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return BSQ_OK;
}

bsq_status bsq_run_pattern(const bsq_config *config, const char *out_dir)
{
    return guarded([&] {
        require(config && out_dir, "null argument");
        if (!config->cfg.pattern)
            throw bsq::ConfigError("pattern", "section required for the pattern command");
        bsq::run_pattern(*config->cfg.pattern, out_dir, logger());
    });
}

bsq_status bsq_run_sweep_offset(const bsq_config *config, const char *out_dir)
{
    return guarded([&] {
        require(config && out_dir, "null argument");
        if (!config->cfg.sweep_offset)
            throw bsq::ConfigError("sweep_offset", "section required for the sweep-offset command");
        bsq::run_sweep_offset(*config->cfg.sweep_offset, out_dir, logger());
    });
}

bsq_status bsq_run_simulate(const bsq_config *config, const char *out_dir, const bsq_run_options *options)
{
    return guarded([&] {
        require(config && out_dir, "null argument");
        if (!config->cfg.simulation)
            throw bsq::ConfigError("simulation", "section required for the simulate command");
        bsq::SimulationConfig sim = *config->cfg.simulation;
        if (options)
        {
            if (options->has_seed)
                sim.seed = options->seed;
            if (options->has_drops)
            {
                if (options->drops == 0)
                    throw bsq::ConfigError("simulation.drops", "must be at least 1");
                sim.drops = options->drops;
            }
            if (options->has_threads)
            {
                if (options->threads == 0)
                    throw bsq::ConfigError("simulation.threads", "must be at least 1");
                sim.threads = options->threads;
            }
        }
        bsq::run_simulation(sim, out_dir, logger());
    });
}
}
