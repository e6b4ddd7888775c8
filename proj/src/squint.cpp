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

#include "beamsquint/squint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bsq
{
    void FrequencyPlan::validate() const
    {
        if (!(f1_hz > 0.0) || !std::isfinite(f1_hz))
            throw std::invalid_argument("frequency plan: f1 must be positive");
        if (!(f1_hz + delta_f_hz > 0.0) || !std::isfinite(delta_f_hz))
            throw std::invalid_argument("frequency plan: f1 + delta_f must be positive");
    }

    double predict_squint_deg(double theta1_deg, double f1_hz, double delta_f_hz)
    {
        if (!(std::abs(theta1_deg) < 90.0))
            throw std::invalid_argument("predict_squint: |theta1| must be below 90 degrees");
        if (!(f1_hz > 0.0))
            throw std::invalid_argument("predict_squint: f1 must be positive");
        return rad2deg(-std::tan(deg2rad(theta1_deg)) * delta_f_hz / f1_hz);
    }

    CompensationVector compensation_vector(const ArrayGeometry &geom, const FrequencyPlan &plan,
                                           const Direction &u_star)
    {
        plan.validate();
        if (geom.element_count() == 0)
            throw std::invalid_argument("compensation_vector: array has no elements");

        CompensationVector comp{cvec(geom.element_count(), cdouble{1.0, 0.0}), u_star};
        if (plan.delta_f_hz == 0.0)
            return comp;

        const double kd = 2.0 * pi * plan.delta_f_hz / speed_of_light;
        const Vec3 u = unit_vector(u_star);
        for (std::size_t n = 0; n < comp.entries.size(); ++n)
            comp.entries[n] = std::polar(1.0, -kd * dot(u, geom.element_positions[n]));
        return comp;
    }

    BeamWeights apply_compensation(const BeamWeights &w, const CompensationVector &comp)
    {
        if (w.size() != comp.entries.size())
            throw std::invalid_argument("apply_compensation: weight and compensation lengths differ");
        cvec out(w.size());
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = w[n] * comp.entries[n];
        return BeamWeights(std::move(out));
    }

    CompensationVector ula_compensation(std::size_t n_elements, double f1_hz, double delta_f_hz, double theta_star_deg)
    {
        FrequencyPlan{f1_hz, delta_f_hz}.validate();
        if (n_elements == 0)
            throw std::invalid_argument("ula_compensation: element count must be at least 1");

        CompensationVector comp{cvec(n_elements, cdouble{1.0, 0.0}), Direction(theta_star_deg, 90.0)};
        if (delta_f_hz == 0.0)
            return comp;
        const double step = -pi * (delta_f_hz / f1_hz) * std::sin(deg2rad(theta_star_deg));
        for (std::size_t n = 0; n < n_elements; ++n)
            comp.entries[n] = std::polar(1.0, step * double(n));
        return comp;
    }

    CompensationVector ura_compensation(std::size_t n_rows, std::size_t n_cols, double f1_hz, double delta_f_hz,
                                        double theta_star_deg, double phi_star_deg)
    {
        FrequencyPlan{f1_hz, delta_f_hz}.validate();
        if (n_rows == 0 || n_cols == 0)
            throw std::invalid_argument("ura_compensation: rows and columns must be at least 1");

        CompensationVector comp{cvec(n_rows * n_cols, cdouble{1.0, 0.0}), Direction(theta_star_deg, phi_star_deg)};
        if (delta_f_hz == 0.0)
            return comp;
        const double r = pi * delta_f_hz / f1_hz;
        const double sp = std::sin(deg2rad(phi_star_deg));
        const double row_step = -r * sp * std::sin(deg2rad(theta_star_deg));
        const double col_step = -r * std::cos(deg2rad(phi_star_deg));
        for (std::size_t nr = 0; nr < n_rows; ++nr)
            for (std::size_t nc = 0; nc < n_cols; ++nc)
                comp.entries[nr * n_cols + nc] = std::polar(1.0, row_step * double(nr) + col_step * double(nc));
        return comp;
    }

    Direction disambiguate_peak(const std::vector<Direction> &candidates, const Direction &estimated)
    {
        if (candidates.empty())
            throw std::invalid_argument("disambiguate_peak: no candidate directions");
        const Vec3 e = unit_vector(estimated);
        std::size_t best = 0;
        double best_d = norm(unit_vector(candidates[0]) - e);
        for (std::size_t i = 1; i < candidates.size(); ++i)
        {
            const double d = norm(unit_vector(candidates[i]) - e);
            if (d < best_d)
            {
                best_d = d;
                best = i;
            }
        }
        return candidates[best];
    }

    std::vector<std::size_t> grid_local_maxima(const std::vector<double> &gains, std::size_t n_az, std::size_t n_zen,
                                               bool azimuth_wraps, double threshold_db)
    {
        if (!(threshold_db > 0.0))
            throw std::invalid_argument("main directions: threshold must be positive");
        if (gains.size() != n_az * n_zen || gains.empty())
            throw std::invalid_argument("main directions: gain map size mismatch");

        const double g_max = *std::max_element(gains.begin(), gains.end());
        const double floor = g_max * std::pow(10.0, -0.1 * threshold_db);

        auto at = [&](std::size_t ia, std::size_t iz) { return gains[iz * n_az + ia]; };

        std::vector<std::size_t> peaks;
        for (std::size_t iz = 0; iz < n_zen; ++iz)
            for (std::size_t ia = 0; ia < n_az; ++ia)
            {
                const double g = at(ia, iz);
                if (g < floor)
                    continue;
                bool is_max = true;
                // plateau handling: a neighbour that is equal and earlier in scan order wins
                for (int dz = -1; dz <= 1 && is_max; ++dz)
                    for (int da = -1; da <= 1 && is_max; ++da)
                    {
                        if (dz == 0 && da == 0)
                            continue;
                        const long z = long(iz) + dz;
                        long a = long(ia) + da;
                        if (z < 0 || z >= long(n_zen))
                            continue;
                        if (a < 0 || a >= long(n_az))
                        {
                            if (!azimuth_wraps)
                                continue;
                            a = (a + long(n_az)) % long(n_az);
                        }
                        const double h = at(std::size_t(a), std::size_t(z));
                        const bool earlier = z < long(iz) || (z == long(iz) && a < long(ia));
                        if (h > g || (h == g && earlier))
                            is_max = false;
                    }
                if (is_max)
                    peaks.push_back(iz * n_az + ia);
            }

        std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
        return peaks;
    }

    std::vector<Direction> find_all_main_directions(const ArrayGeometry &geom, const ElementPattern &pattern,
                                                    const BeamWeights &w, double frequency_hz, double threshold_db,
                                                    double grid_step_deg, const SearchRegion &region)
    {
        const PatternGrid grid(geom, pattern, frequency_hz, region, grid_step_deg);
        const auto gains = grid.gains(w);
        const bool wraps = region.azimuth_max_deg - region.azimuth_min_deg >= 360.0;
        const auto idx = grid_local_maxima(gains, grid.azimuth_count(), grid.zenith_count(), wraps, threshold_db);

        std::vector<std::pair<double, Direction>> refined;
        refined.reserve(idx.size());
        for (std::size_t i : idx)
        {
            const Direction coarse = grid.direction(i % grid.azimuth_count(), i / grid.azimuth_count());
            const Direction d = refine_peak(geom, pattern, w, frequency_hz, coarse, grid_step_deg, region);
            refined.emplace_back(beam_gain(geom, pattern, w, frequency_hz, d), d);
        }

        // refinement may lift a maximum that sat just below the threshold on the grid, or lower one above it
        const double g_max = refined.empty() ? 0.0 : std::max_element(refined.begin(), refined.end(), [](auto &a, auto &b) {
                                                        return a.first < b.first;
                                                    })->first;
        const double floor = g_max * std::pow(10.0, -0.1 * threshold_db);
        std::stable_sort(refined.begin(), refined.end(), [](auto &a, auto &b) { return a.first > b.first; });

        std::vector<Direction> out;
        for (auto &[g, d] : refined)
            if (g >= floor)
                out.push_back(d);
        return out;
    }
}
