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

#ifndef BEAMSQUINT_H
#define BEAMSQUINT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BSQ_BUILDING_LIBRARY)
#define BSQ_API __declspec(dllexport)
#else
#define BSQ_API __declspec(dllimport)
#endif
#else
#define BSQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsq_status
{
    BSQ_OK = 0,
    BSQ_ERR_INVALID_ARGUMENT = 1, /* bad value or null pointer */
    BSQ_ERR_CONFIG = 2,           /* configuration rejected; see bsq_last_error_field */
    BSQ_ERR_RUNTIME = 3,          /* failure while computing or writing results */
    BSQ_ERR_BUFFER_TOO_SMALL = 4  /* output buffer shorter than required */
} bsq_status;

/* Library version string, e.g. "0.1.0" */
BSQ_API const char *bsq_version(void);

/* Message and config field path of the last failure on the calling thread ("" if none) */
BSQ_API const char *bsq_last_error(void);
BSQ_API const char *bsq_last_error_field(void);

/* Progress and warning messages; level 0 = info, 1 = warning. Pass NULL to silence. */
typedef void (*bsq_log_fn)(int level, const char *message, void *user);
BSQ_API void bsq_set_log_callback(bsq_log_fn fn, void *user);

typedef struct bsq_complex
{
    double re;
    double im;
} bsq_complex;

typedef enum bsq_element_kind
{
    BSQ_ELEMENT_OMNI = 0,
    BSQ_ELEMENT_SECTOR_3GPP = 1
} bsq_element_kind;

typedef struct bsq_element
{
    bsq_element_kind kind;
    double max_gain_dbi; /* 8 for the sector element, 0 for omni */
} bsq_element;

/* ------------------------------------------------------------------ arrays */

typedef struct bsq_array bsq_array;

/* Half-wavelength spaced arrays at design_frequency_hz. ULA along y; URA on the yz-plane, row-major. */
BSQ_API bsq_status bsq_array_create_ula(size_t n_elements, double design_frequency_hz, bsq_array **out);
BSQ_API bsq_status bsq_array_create_ura(size_t n_rows, size_t n_cols, double design_frequency_hz, bsq_array **out);
BSQ_API void bsq_array_destroy(bsq_array *array);
BSQ_API size_t bsq_array_element_count(const bsq_array *array);

/* Angles are in degrees: azimuth from +x toward +y, zenith from +z. Vectors have element_count entries. */
BSQ_API bsq_status bsq_steering_vector(const bsq_array *array, double frequency_hz, double azimuth_deg,
                                       double zenith_deg, bsq_complex *out, size_t len);
BSQ_API bsq_status bsq_dft_weights(const bsq_array *array, size_t oversampling, size_t index, bsq_complex *out,
                                   size_t len);
BSQ_API bsq_status bsq_beam_gain(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                                 double frequency_hz, double azimuth_deg, double zenith_deg, double *gain);
/* Main-lobe peak on the horizontal cut (ULA) or the front hemisphere (URA) */
BSQ_API bsq_status bsq_find_peak(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                                 double frequency_hz, double grid_step_deg, double *azimuth_deg, double *zenith_deg);
BSQ_API bsq_status bsq_hpbw(const bsq_array *array, bsq_element element, const bsq_complex *weights, size_t len,
                            double frequency_hz, double peak_azimuth_deg, double peak_zenith_deg, double *width_deg);

/* ------------------------------------------------------------------ squint */

BSQ_API bsq_status bsq_predict_squint(double theta1_deg, double f1_hz, double delta_f_hz, double *shift_deg);
BSQ_API bsq_status bsq_compensation_vector(const bsq_array *array, double f1_hz, double delta_f_hz,
                                           double azimuth_deg, double zenith_deg, bsq_complex *out, size_t len);
BSQ_API bsq_status bsq_apply_compensation(const bsq_complex *weights, const bsq_complex *compensation, size_t len,
                                          bsq_complex *out);

/* ------------------------------------------------------------------ channel and repeater */

BSQ_API bsq_status bsq_path_loss(double a, double b, double c, double distance_m, double frequency_hz, double *loss_db);
BSQ_API bsq_status bsq_path_loss_delta(double c, double f1_hz, double delta_f_hz, double *delta_db);
BSQ_API bsq_status bsq_noise_power(size_t n_subcarriers, double subcarrier_spacing_hz, double noise_figure_db,
                                   double *noise_dbm);
BSQ_API bsq_status bsq_ncr_gain(double p_ncr_w, double noise_w, double gamma, double p_tx_w, double fixed_gain_db,
                                double *gain);

/* ------------------------------------------------------------------ configuration and experiments */

typedef struct bsq_config bsq_config;

BSQ_API bsq_status bsq_config_load(const char *path, bsq_config **out);
BSQ_API bsq_status bsq_config_parse(const char *json_text, bsq_config **out);
BSQ_API void bsq_config_destroy(bsq_config *config);
/* 1 if the section ("pattern", "sweep_offset", "simulation") is present */
BSQ_API int bsq_config_has_section(const bsq_config *config, const char *section);
/* Canonical JSON. *needed receives the size including the terminator; buf may be NULL to query it. */
BSQ_API bsq_status bsq_config_serialize(const bsq_config *config, char *buf, size_t capacity, size_t *needed);

typedef struct bsq_run_options
{
    int has_seed;
    uint64_t seed;
    int has_drops;
    size_t drops;
    int has_threads;
    size_t threads;
} bsq_run_options;

BSQ_API bsq_status bsq_run_pattern(const bsq_config *config, const char *out_dir);
BSQ_API bsq_status bsq_run_sweep_offset(const bsq_config *config, const char *out_dir);
BSQ_API bsq_status bsq_run_simulate(const bsq_config *config, const char *out_dir, const bsq_run_options *options);

#ifdef __cplusplus
}
#endif

#endif
