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

#include "beamsquint/beamforming.hpp"

#include <vector>

namespace bsq
{
    // Measurement subband at f1, data subband at f2 = f1 + delta_f
    struct FrequencyPlan
    {
        double f1_hz = 28e9;
        double delta_f_hz = 0.0;

        double f2_hz() const { return f1_hz + delta_f_hz; }
        void validate() const; // throws std::invalid_argument
    };

    struct CompensationVector
    {
        cvec entries;            // unit modulus
        Direction target;        // u*, the beam direction observed at f1
    };

    // First-order main-lobe shift: -tan(theta1) * delta_f / f1, in degrees
    double predict_squint_deg(double theta1_deg, double f1_hz, double delta_f_hz);

    // c_n = exp(-j 2 pi delta_f / c * u*^T R_n)
    CompensationVector compensation_vector(const ArrayGeometry &geom, const FrequencyPlan &plan,
                                           const Direction &u_star);

    // W2 = W1 (Hadamard) C
    BeamWeights apply_compensation(const BeamWeights &w, const CompensationVector &comp);

    // ULA closed form with 0-based element index n and the element-independent phase dropped:
    // c_n = exp(-j pi (delta_f / f1) n sin(theta*)), zen* = 90 deg
    CompensationVector ula_compensation(std::size_t n_elements, double f1_hz, double delta_f_hz, double theta_star_deg);

    // URA closed form in row-major order (n_r along y, n_c along z):
    // c = exp(-j pi (delta_f / f1) (n_r sin(phi*) sin(theta*) + n_c cos(phi*)))
    // theta* is the azimuth and phi* the zenith of u*.
    CompensationVector ura_compensation(std::size_t n_rows, std::size_t n_cols, double f1_hz, double delta_f_hz,
                                        double theta_star_deg, double phi_star_deg);

    // Candidate closest (chordal distance between unit vectors) to the estimate; ties go to the earlier entry
    Direction disambiguate_peak(const std::vector<Direction> &candidates, const Direction &estimated);

    // Every local maximum of |B| within threshold_db of the global maximum, strongest first.
    // Maxima are located on a grid over `region` and refined.
    std::vector<Direction> find_all_main_directions(const ArrayGeometry &geom, const ElementPattern &pattern,
                                                    const BeamWeights &w, double frequency_hz, double threshold_db,
                                                    double grid_step_deg = 0.1,
                                                    const SearchRegion &region = SearchRegion::azimuth_cut());

    // Local maxima of a gain map produced by PatternGrid (same indexing), within threshold_db of the
    // global maximum, strongest first. Returns grid indices.
    std::vector<std::size_t> grid_local_maxima(const std::vector<double> &gains, std::size_t n_az, std::size_t n_zen,
                                               bool azimuth_wraps, double threshold_db);
}
