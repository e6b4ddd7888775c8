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

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                         \
    do                                                                       \
    {                                                                        \
        if (!(cond))                                                         \
        {                                                                    \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                      \
        }                                                                    \
    } while (0)

static int warnings = 0;
static void count_warnings(int level, const char *message, void *user)
{
    (void)message;
    if (level == 1)
        ++*(int *)user;
}

static void test_arrays(void)
{
    bsq_array *a = NULL;
    EXPECT(bsq_array_create_ula(0, 28e9, &a) == BSQ_ERR_INVALID_ARGUMENT);
    EXPECT(strlen(bsq_last_error()) > 0);
    EXPECT(bsq_array_create_ula(4, 28e9, NULL) == BSQ_ERR_INVALID_ARGUMENT);
    EXPECT(bsq_array_create_ula(256, 28e9, &a) == BSQ_OK);
    EXPECT(bsq_array_element_count(a) == 256);

    bsq_complex w[256], c[256], w2[256];
    EXPECT(bsq_dft_weights(a, 1, 73, w, 10) == BSQ_ERR_INVALID_ARGUMENT);
    EXPECT(bsq_dft_weights(a, 1, 256, w, 256) == BSQ_ERR_INVALID_ARGUMENT);
    EXPECT(bsq_dft_weights(a, 1, 73, w, 256) == BSQ_OK);

    bsq_element sector = {BSQ_ELEMENT_SECTOR_3GPP, 8.0};
    double az = 0, zen = 0;
    EXPECT(bsq_find_peak(a, sector, w, 256, 28e9, 0.1, &az, &zen) == BSQ_OK);
    EXPECT(fabs(az - 34.77) < 0.01);
    EXPECT(fabs(zen - 90.0) < 1e-9);

    double hp = 0;
    EXPECT(bsq_hpbw(a, sector, w, 256, 28e9, az, zen, &hp) == BSQ_OK);
    EXPECT(hp > 0.4 && hp < 0.6);

    double az2 = 0, zen2 = 0;
    EXPECT(bsq_find_peak(a, sector, w, 256, 29e9, 0.1, &az2, &zen2) == BSQ_OK);
    EXPECT(az2 < az - 1.0);

    EXPECT(bsq_compensation_vector(a, 28e9, 1e9, az, zen, c, 256) == BSQ_OK);
    EXPECT(bsq_apply_compensation(w, c, 256, w2) == BSQ_OK);
    EXPECT(bsq_find_peak(a, sector, w2, 256, 29e9, 0.1, &az2, &zen2) == BSQ_OK);
    EXPECT(fabs(az2 - az) < 0.05);

    double g1 = 0, g2 = 0;
    EXPECT(bsq_beam_gain(a, sector, w, 256, 28e9, az, zen, &g1) == BSQ_OK);
    EXPECT(bsq_beam_gain(a, sector, w2, 256, 29e9, az, zen, &g2) == BSQ_OK);
    EXPECT(fabs(10 * log10(g1 / g2)) < 0.1);
    EXPECT(bsq_beam_gain(a, sector, w, 255, 28e9, az, zen, &g1) == BSQ_ERR_INVALID_ARGUMENT);

    bsq_complex s[256];
    EXPECT(bsq_steering_vector(a, 28e9, 0.0, 90.0, s, 256) == BSQ_OK);
    EXPECT(fabs(s[17].re - 1.0) < 1e-12 && fabs(s[17].im) < 1e-12);
    EXPECT(bsq_steering_vector(a, 28e9, 0.0, 200.0, s, 256) == BSQ_ERR_INVALID_ARGUMENT);
    bsq_array_destroy(a);
    bsq_array_destroy(NULL);

    bsq_array *u = NULL;
    EXPECT(bsq_array_create_ura(4, 3, 28e9, &u) == BSQ_OK);
    EXPECT(bsq_array_element_count(u) == 12);
    bsq_array_destroy(u);
}

static void test_scalars(void)
{
    double v = 0;
    EXPECT(bsq_predict_squint(15, 28e9, 1e9, &v) == BSQ_OK);
    EXPECT(fabs(v + 0.548) < 1e-3);
    EXPECT(bsq_predict_squint(90, 28e9, 1e9, &v) == BSQ_ERR_INVALID_ARGUMENT);
    EXPECT(bsq_path_loss(28, 22, 20, 200, 28e9, &v) == BSQ_OK);
    EXPECT(fabs(v - 107.5658) < 1e-3);
    EXPECT(bsq_path_loss_delta(20, 28e9, 1e9, &v) == BSQ_OK);
    EXPECT(fabs(v - 0.3048) < 1e-4);
    EXPECT(bsq_noise_power(12, 60e3, 9, &v) == BSQ_OK);
    EXPECT(fabs(v + 106.427) < 1e-3);
    EXPECT(bsq_ncr_gain(1e-3, 1e-13, 1e-9, 1.0, 60, &v) == BSQ_OK);
    EXPECT(fabs(v / 9.999e5 - 1) < 1e-3);
    EXPECT(bsq_ncr_gain(1e-3, 1e-13, 1e-9, 1.0, 60, NULL) == BSQ_ERR_INVALID_ARGUMENT);
}

static void test_config(void)
{
    bsq_config *cfg = NULL;
    EXPECT(bsq_config_parse("{\"schema_version\": 1, \"pattern\": {\"array\": {\"elements\": 8}, \"bogus\": 1}}", &cfg) ==
           BSQ_ERR_CONFIG);
    EXPECT(strcmp(bsq_last_error_field(), "pattern.bogus") == 0);
    EXPECT(bsq_config_load("/nonexistent/cfg.json", &cfg) == BSQ_ERR_CONFIG);

    const char *text = "{\"schema_version\": 1, \"pattern\": {\"array\": {\"elements\": 16},"
                       " \"beams\": [{\"label\": \"b\", \"dft_index\": 3}]}}";
    EXPECT(bsq_config_parse(text, &cfg) == BSQ_OK);
    EXPECT(bsq_config_has_section(cfg, "pattern") == 1);
    EXPECT(bsq_config_has_section(cfg, "simulation") == 0);

    size_t needed = 0;
    EXPECT(bsq_config_serialize(cfg, NULL, 0, &needed) == BSQ_OK);
    EXPECT(needed > 10);
    char small[4];
    EXPECT(bsq_config_serialize(cfg, small, sizeof small, &needed) == BSQ_ERR_BUFFER_TOO_SMALL);
    char *buf = malloc(needed);
    EXPECT(bsq_config_serialize(cfg, buf, needed, &needed) == BSQ_OK);
    EXPECT(strlen(buf) + 1 == needed);
    bsq_config *again = NULL;
    EXPECT(bsq_config_parse(buf, &again) == BSQ_OK);
    bsq_config_destroy(again);
    free(buf);

    /* no frequencies: nothing to write, one warning, still success */
    bsq_set_log_callback(count_warnings, &warnings);
    EXPECT(bsq_run_pattern(cfg, "capi_out_pattern") == BSQ_OK);
    EXPECT(warnings == 1);
    bsq_set_log_callback(NULL, NULL);
    EXPECT(bsq_run_sweep_offset(cfg, "capi_out") == BSQ_ERR_CONFIG);
    EXPECT(bsq_run_simulate(cfg, "capi_out", NULL) == BSQ_ERR_CONFIG);
    bsq_config_destroy(cfg);
}

int main(void)
{
    EXPECT(strcmp(bsq_version(), "0.1.0") == 0);
    test_arrays();
    test_scalars();
    test_config();
    if (failures)
    {
        fprintf(stderr, "%d C API check(s) failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
