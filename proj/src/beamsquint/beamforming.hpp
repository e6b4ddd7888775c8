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

#include "beamsquint/geometry.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bsq
{
    using cdouble = std::complex<double>;
    using cvec = std::vector<cdouble>;

    // Complex per-element weights g_n * exp(j omega_n)
    class BeamWeights
    {
    public:
        BeamWeights() = default;
        explicit BeamWeights(cvec values) : values_(std::move(values)) {}

        std::size_t size() const { return values_.size(); }
        const cvec &values() const { return values_; }
        std::span<const cdouble> span() const { return values_; }
        cdouble operator[](std::size_t i) const { return values_[i]; }

        double norm() const; // Euclidean norm

        friend bool operator==(const BeamWeights &, const BeamWeights &) = default;

    private:
        cvec values_;
    };

    enum class ElementKind
    {
        omni,
        sector_3gpp
    };

    // Single element radiation pattern.
    // The sector form is the 3GPP 3D element: A = -min(-(A_V + A_H), A_max) + G_max with
    // A_H = -min(12 (az/65)^2, A_max) and A_V = -min(12 ((zen-90)/65)^2, SLA_V).
    struct ElementPattern
    {
        ElementKind kind = ElementKind::omni;
        double max_gain_dbi = 0.0;
        double hpbw_horizontal_deg = 65.0;
        double hpbw_vertical_deg = 65.0;
        double front_back_db = 30.0;   // A_max
        double side_lobe_vertical_db = 30.0; // SLA_V

        static ElementPattern omni() { return {}; }
        static ElementPattern sector(double max_gain_dbi = 8.0)
        {
            ElementPattern p;
            p.kind = ElementKind::sector_3gpp;
            p.max_gain_dbi = max_gain_dbi;
            return p;
        }
    };

    // Linear power gain of one element toward `dir` (local array frame)
    double element_gain(const ElementPattern &pattern, const Direction &dir);

    // psi_n = exp(j 2 pi f / c * u^T R_n)
    cvec steering_vector(const ArrayGeometry &geom, double frequency_hz, const Direction &dir);

    // Matched-filter weights steering toward `dir` at `frequency_hz`, normalized to unit power
    BeamWeights conjugate_steering(const ArrayGeometry &geom, double frequency_hz, const Direction &dir);

    // B(u) = sqrt(a(u)) * sum_n w_n psi_n(f)
    cdouble beam_pattern(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                         double frequency_hz, const Direction &dir);

    // Same field, evaluated as the f1 response modulated by the per-element phase deviation
    // d_n(u) = exp(j 2 pi delta_f / c * u^T R_n). Equal to beam_pattern at f1 + delta_f.
    cdouble beam_pattern_offset(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                double f1_hz, double delta_f_hz, const Direction &dir);

    // |B(u)|^2
    double beam_gain(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                     double frequency_hz, const Direction &dir);

    double to_db(double linear);

    // Angular box searched by the peak finders. A zero-width zenith range is a horizontal cut.
    struct SearchRegion
    {
        double azimuth_min_deg = -180.0;
        double azimuth_max_deg = 180.0;
        double zenith_min_deg = 0.0;
        double zenith_max_deg = 180.0;

        static SearchRegion full_sphere() { return {}; }
        static SearchRegion azimuth_cut(double zenith_deg = 90.0) { return {-180.0, 180.0, zenith_deg, zenith_deg}; }
        static SearchRegion front_hemisphere() { return {-90.0, 90.0, 0.0, 180.0}; }

        bool is_cut() const { return zenith_min_deg == zenith_max_deg; }
    };

    // Precomputed steering vectors on a regular grid so many weight vectors can be scanned
    // with one matrix-vector product each.
    class PatternGrid
    {
    public:
        PatternGrid(const ArrayGeometry &geom, const ElementPattern &pattern, double frequency_hz,
                    const SearchRegion &region, double grid_step_deg);

        std::size_t azimuth_count() const { return n_az_; }
        std::size_t zenith_count() const { return n_zen_; }
        Direction direction(std::size_t i_az, std::size_t i_zen) const;
        double azimuth_step() const { return az_step_; }
        double zenith_step() const { return zen_step_; }

        // |B|^2 at every grid point; index = i_zen * azimuth_count() + i_az
        std::vector<double> gains(const BeamWeights &w) const;

    private:
        std::size_t n_el_ = 0, n_az_ = 0, n_zen_ = 0;
        double az0_ = 0, az_step_ = 0, zen0_ = 0, zen_step_ = 0;
        bool az_wraps_ = false;
        cvec steering_;             // [point][element], element pattern amplitude folded in
    };

    // Location of the maximum of |B| in `region`: grid scan at `grid_step_deg`, then golden-section
    // refinement of each coordinate to better than 0.01 degrees. Ties resolve to the smallest azimuth,
    // then the smallest zenith.
    Direction find_peak(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                        double frequency_hz, double grid_step_deg = 0.1,
                        const SearchRegion &region = SearchRegion::full_sphere());

    // Refine a coarse maximum by alternating golden-section searches along azimuth and zenith
    Direction refine_peak(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                          double frequency_hz, const Direction &start, double bracket_deg, const SearchRegion &region);

    // Width of the contiguous azimuth interval around `peak` (at the peak zenith) where the gain
    // stays within `drop_db` of the gain at `peak`. Crossings are bisection-refined to 0.001 deg.
    // Throws std::runtime_error if a crossing is not found within +/-90 degrees.
    double beamwidth(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                     double frequency_hz, const Direction &peak, double drop_db);

    // Half-power beamwidth (|B|^2 >= |B(peak)|^2 / 2)
    double hpbw(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                double frequency_hz, const Direction &peak);

    // First minimum of |B| on each side of the main lobe along the azimuth cut through `peak`.
    // Returns {left, right} azimuths in degrees.
    struct NullPair
    {
        double left_deg;
        double right_deg;
    };
    NullPair first_nulls_azimuth(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                 double frequency_hz, const Direction &peak);
    // Same along the zenith cut through `peak`
    NullPair first_nulls_zenith(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                double frequency_hz, const Direction &peak);

    struct Codebook
    {
        std::vector<BeamWeights> entries;
        double design_frequency_hz = 0.0;
        std::size_t oversampling = 1;
    };

    // entry k: w_n = exp(-j 2 pi k n / (O N)) / sqrt(N), n = 0..N-1, k = 0..O*N-1
    Codebook dft_codebook(std::size_t n_elements, std::size_t oversampling, double design_frequency_hz);

    // Kronecker product of two DFT codebooks matching the URA enumeration;
    // entry index = k_r * (O * n_cols) + k_c
    Codebook dft_codebook_2d(std::size_t n_rows, std::size_t n_cols, std::size_t oversampling,
                             double design_frequency_hz);
}
