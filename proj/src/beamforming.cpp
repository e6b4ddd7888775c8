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

#include "beamsquint/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bsq
{
    double BeamWeights::norm() const
    {
        double s = 0.0;
        for (const auto &v : values_)
            s += std::norm(v);
        return std::sqrt(s);
    }

    double to_db(double linear)
    {
        if (linear <= 0.0)
            return -std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(linear);
    }

    double element_gain(const ElementPattern &p, const Direction &dir)
    {
        if (p.kind == ElementKind::omni)
            return std::pow(10.0, 0.1 * p.max_gain_dbi);

        const double az = dir.azimuth_deg();
        const double zen = dir.zenith_deg();
        const double a_h = -std::min(12.0 * std::pow(az / p.hpbw_horizontal_deg, 2), p.front_back_db);
        const double a_v = -std::min(12.0 * std::pow((zen - 90.0) / p.hpbw_vertical_deg, 2), p.side_lobe_vertical_db);
        const double a = -std::min(-(a_v + a_h), p.front_back_db) + p.max_gain_dbi;
        return std::pow(10.0, 0.1 * a);
    }

    namespace
    {
        void check_frequency(double f)
        {
            if (!(f > 0.0) || !std::isfinite(f))
                throw std::invalid_argument("frequency must be positive");
        }

        void check_length(const ArrayGeometry &geom, const BeamWeights &w)
        {
            if (w.size() != geom.element_count())
                throw std::invalid_argument("beam weight length does not match the array element count");
        }

        // sum_n w_n exp(j k u^T R_n)
        cdouble array_factor(const ArrayGeometry &geom, const BeamWeights &w, double k, Vec3 u)
        {
            cdouble acc{0.0, 0.0};
            const auto &pos = geom.element_positions;
            for (std::size_t n = 0; n < pos.size(); ++n)
                acc += w[n] * std::polar(1.0, k * dot(u, pos[n]));
            return acc;
        }

        constexpr double golden = 0.6180339887498949;

        // Golden-section maximization of f on [a, b]
        template <typename F>
        double golden_max(F &&f, double a, double b, double tol)
        {
            double c = b - golden * (b - a);
            double d = a + golden * (b - a);
            double fc = f(c), fd = f(d);
            while (b - a > tol)
            {
                if (fc >= fd)
                {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - golden * (b - a);
                    fc = f(c);
                }
                else
                {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + golden * (b - a);
                    fd = f(d);
                }
            }
            return 0.5 * (a + b);
        }

        std::size_t grid_count(double lo, double hi, double step, bool wraps)
        {
            if (hi <= lo)
                return 1;
            const double span = hi - lo;
            const auto n = std::size_t(std::floor(span / step + 1e-9));
            return wraps ? std::max<std::size_t>(n, 1) : n + 1;
        }

        void check_region(const SearchRegion &r, double step)
        {
            if (!(step > 0.0))
                throw std::invalid_argument("grid step must be positive");
            if (r.azimuth_max_deg < r.azimuth_min_deg || r.zenith_max_deg < r.zenith_min_deg ||
                r.zenith_min_deg < 0.0 || r.zenith_max_deg > 180.0)
                throw std::invalid_argument("invalid search region");
        }

        bool wraps_azimuth(const SearchRegion &r) { return r.azimuth_max_deg - r.azimuth_min_deg >= 360.0; }
    }

    cvec steering_vector(const ArrayGeometry &geom, double frequency_hz, const Direction &dir)
    {
        check_frequency(frequency_hz);
        const double k = 2.0 * pi * frequency_hz / speed_of_light;
        const Vec3 u = unit_vector(dir);
        cvec psi(geom.element_count());
        for (std::size_t n = 0; n < psi.size(); ++n)
            psi[n] = std::polar(1.0, k * dot(u, geom.element_positions[n]));
        return psi;
    }

    BeamWeights conjugate_steering(const ArrayGeometry &geom, double frequency_hz, const Direction &dir)
    {
        cvec psi = steering_vector(geom, frequency_hz, dir);
        const double scale = 1.0 / std::sqrt(double(psi.size()));
        for (auto &v : psi)
            v = std::conj(v) * scale;
        return BeamWeights(std::move(psi));
    }

    cdouble beam_pattern(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                         double frequency_hz, const Direction &dir)
    {
        check_frequency(frequency_hz);
        check_length(geom, w);
        const double k = 2.0 * pi * frequency_hz / speed_of_light;
        return std::sqrt(element_gain(pattern, dir)) * array_factor(geom, w, k, unit_vector(dir));
    }

    cdouble beam_pattern_offset(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                double f1_hz, double delta_f_hz, const Direction &dir)
    {
        check_frequency(f1_hz);
        check_frequency(f1_hz + delta_f_hz);
        check_length(geom, w);
        const double k1 = 2.0 * pi * f1_hz / speed_of_light;
        const double kd = 2.0 * pi * delta_f_hz / speed_of_light;
        const Vec3 u = unit_vector(dir);

        cdouble acc{0.0, 0.0};
        for (std::size_t n = 0; n < w.size(); ++n)
        {
            const double proj = dot(u, geom.element_positions[n]);
            const cdouble base = w[n] * std::polar(1.0, k1 * proj);
            const cdouble deviation = std::polar(1.0, kd * proj);
            acc += base * deviation;
        }
        return std::sqrt(element_gain(pattern, dir)) * acc;
    }

    double beam_gain(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                     double frequency_hz, const Direction &dir)
    {
        return std::norm(beam_pattern(geom, pattern, w, frequency_hz, dir));
    }

    // ---------------------------------------------------------------- PatternGrid

    PatternGrid::PatternGrid(const ArrayGeometry &geom, const ElementPattern &pattern, double frequency_hz,
                             const SearchRegion &region, double grid_step_deg)
    {
        check_frequency(frequency_hz);
        check_region(region, grid_step_deg);
        n_el_ = geom.element_count();
        az_wraps_ = wraps_azimuth(region);
        az0_ = region.azimuth_min_deg;
        zen0_ = region.zenith_min_deg;
        az_step_ = grid_step_deg;
        zen_step_ = grid_step_deg;
        n_az_ = grid_count(region.azimuth_min_deg, region.azimuth_max_deg, grid_step_deg, az_wraps_);
        n_zen_ = grid_count(region.zenith_min_deg, region.zenith_max_deg, grid_step_deg, false);

        const double k = 2.0 * pi * frequency_hz / speed_of_light;
        steering_.resize(n_az_ * n_zen_ * n_el_);
        for (std::size_t iz = 0; iz < n_zen_; ++iz)
            for (std::size_t ia = 0; ia < n_az_; ++ia)
            {
                const Direction dir = direction(ia, iz);
                const Vec3 u = unit_vector(dir);
                const double amp = std::sqrt(element_gain(pattern, dir));
                cdouble *row = &steering_[(iz * n_az_ + ia) * n_el_];
                for (std::size_t n = 0; n < n_el_; ++n)
                    row[n] = std::polar(amp, k * dot(u, geom.element_positions[n]));
            }
    }

    Direction PatternGrid::direction(std::size_t i_az, std::size_t i_zen) const
    {
        return Direction(az0_ + double(i_az) * az_step_, zen0_ + double(i_zen) * zen_step_);
    }

    std::vector<double> PatternGrid::gains(const BeamWeights &w) const
    {
        if (w.size() != n_el_)
            throw std::invalid_argument("beam weight length does not match the array element count");
        const std::size_t n_pts = n_az_ * n_zen_;
        std::vector<double> out(n_pts);
        const cdouble *wv = w.values().data();
        for (std::size_t p = 0; p < n_pts; ++p)
        {
            const cdouble *row = &steering_[p * n_el_];
            double re = 0.0, im = 0.0;
            for (std::size_t n = 0; n < n_el_; ++n)
            {
                re += wv[n].real() * row[n].real() - wv[n].imag() * row[n].imag();
                im += wv[n].real() * row[n].imag() + wv[n].imag() * row[n].real();
            }
            out[p] = re * re + im * im;
        }
        return out;
    }

    // ---------------------------------------------------------------- peak search

    Direction refine_peak(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                          double frequency_hz, const Direction &start, double bracket_deg, const SearchRegion &region)
    {
        const bool az_wraps = wraps_azimuth(region);
        double az = start.azimuth_deg();
        double zen = start.zenith_deg();

        auto gain_at = [&](double a, double z) { return beam_gain(geom, pattern, w, frequency_hz, Direction(a, z)); };

        constexpr double tol = 1e-4;
        double bracket = bracket_deg;
        for (int iter = 0; iter < 8; ++iter)
        {
            const double az_prev = az, zen_prev = zen;

            double a_lo = az - bracket, a_hi = az + bracket;
            if (!az_wraps)
            {
                a_lo = std::max(a_lo, region.azimuth_min_deg);
                a_hi = std::min(a_hi, region.azimuth_max_deg);
            }
            if (a_hi > a_lo)
                az = golden_max([&](double a) { return gain_at(a, zen); }, a_lo, a_hi, tol);

            if (!region.is_cut())
            {
                const double z_lo = std::max(zen - bracket, region.zenith_min_deg);
                const double z_hi = std::min(zen + bracket, region.zenith_max_deg);
                if (z_hi > z_lo)
                    zen = golden_max([&](double z) { return gain_at(az, z); }, z_lo, z_hi, tol);
            }
            else
                break;

            if (std::abs(az - az_prev) < tol && std::abs(zen - zen_prev) < tol)
                break;
            bracket = std::max(0.5 * bracket, 10.0 * tol);
        }
        return Direction(az, zen);
    }

    Direction find_peak(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                        double frequency_hz, double grid_step_deg, const SearchRegion &region)
    {
        check_frequency(frequency_hz);
        check_length(geom, w);
        check_region(region, grid_step_deg);

        const bool az_wraps = wraps_azimuth(region);
        const std::size_t n_az = grid_count(region.azimuth_min_deg, region.azimuth_max_deg, grid_step_deg, az_wraps);
        const std::size_t n_zen = grid_count(region.zenith_min_deg, region.zenith_max_deg, grid_step_deg, false);

        double best = -1.0;
        Direction best_dir;
        for (std::size_t iz = 0; iz < n_zen; ++iz)
            for (std::size_t ia = 0; ia < n_az; ++ia)
            {
                const Direction dir(region.azimuth_min_deg + double(ia) * grid_step_deg,
                                    region.zenith_min_deg + double(iz) * grid_step_deg);
                const double g = beam_gain(geom, pattern, w, frequency_hz, dir);
                const bool better = g > best ||
                                    (g == best && (dir.azimuth_deg() < best_dir.azimuth_deg() ||
                                                   (dir.azimuth_deg() == best_dir.azimuth_deg() &&
                                                    dir.zenith_deg() < best_dir.zenith_deg())));
                if (better)
                {
                    best = g;
                    best_dir = dir;
                }
            }

        return refine_peak(geom, pattern, w, frequency_hz, best_dir, grid_step_deg, region);
    }

    // ---------------------------------------------------------------- beam width and nulls

    double beamwidth(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                     double frequency_hz, const Direction &peak, double drop_db)
    {
        if (!(drop_db > 0.0))
            throw std::invalid_argument("beamwidth: drop must be positive");
        const double zen = peak.zenith_deg();
        const double az0 = peak.azimuth_deg();
        auto gain_at = [&](double a) { return beam_gain(geom, pattern, w, frequency_hz, Direction(a, zen)); };

        const double level = gain_at(az0) * std::pow(10.0, -0.1 * drop_db);
        constexpr double step = 0.005;
        constexpr double limit = 90.0;

        auto crossing = [&](double sign) {
            double inside = 0.0;
            for (double off = step; off <= limit + 1e-12; off += step)
            {
                if (gain_at(az0 + sign * off) < level)
                {
                    double lo = inside, hi = off;
                    while (hi - lo > 1e-5)
                    {
                        const double mid = 0.5 * (lo + hi);
                        (gain_at(az0 + sign * mid) >= level ? lo : hi) = mid;
                    }
                    return 0.5 * (lo + hi);
                }
                inside = off;
            }
            throw std::runtime_error("beamwidth: level crossing not bracketed within 90 degrees of the peak");
        };

        return crossing(-1.0) + crossing(+1.0);
    }

    double hpbw(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                double frequency_hz, const Direction &peak)
    {
        return beamwidth(geom, pattern, w, frequency_hz, peak, 10.0 * std::log10(2.0));
    }

    namespace
    {
        // Walks away from the peak along one coordinate until |B| starts rising again
        template <typename G>
        double first_minimum(G &&gain_at, double origin, double sign, double lo_limit, double hi_limit)
        {
            constexpr double step = 0.005;
            double prev = gain_at(origin);
            for (double off = step;; off += step)
            {
                const double x = origin + sign * off;
                if (x < lo_limit || x > hi_limit)
                    throw std::runtime_error("first null not found inside the search range");
                const double g = gain_at(x);
                if (g > prev)
                {
                    // minimum lies within [off - 2 step, off]
                    const double a = origin + sign * (off - 2.0 * step);
                    const double b = x;
                    return golden_max([&](double t) { return -gain_at(t); }, std::min(a, b), std::max(a, b), 1e-5);
                }
                prev = g;
            }
        }
    }

    NullPair first_nulls_azimuth(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                 double frequency_hz, const Direction &peak)
    {
        const double zen = peak.zenith_deg();
        auto gain_at = [&](double a) { return beam_gain(geom, pattern, w, frequency_hz, Direction(a, zen)); };
        const double az = peak.azimuth_deg();
        return {first_minimum(gain_at, az, -1.0, az - 90.0, az + 90.0),
                first_minimum(gain_at, az, +1.0, az - 90.0, az + 90.0)};
    }

    NullPair first_nulls_zenith(const ArrayGeometry &geom, const ElementPattern &pattern, const BeamWeights &w,
                                double frequency_hz, const Direction &peak)
    {
        const double az = peak.azimuth_deg();
        auto gain_at = [&](double z) { return beam_gain(geom, pattern, w, frequency_hz, Direction(az, z)); };
        const double zen = peak.zenith_deg();
        return {first_minimum(gain_at, zen, -1.0, 0.0, 180.0), first_minimum(gain_at, zen, +1.0, 0.0, 180.0)};
    }

    // ---------------------------------------------------------------- codebooks

    Codebook dft_codebook(std::size_t n_elements, std::size_t oversampling, double design_frequency_hz)
    {
        if (n_elements == 0 || oversampling == 0)
            throw std::invalid_argument("dft_codebook: element count and oversampling must be at least 1");
        const std::size_t n_beams = oversampling * n_elements;
        const double scale = 1.0 / std::sqrt(double(n_elements));

        Codebook cb;
        cb.design_frequency_hz = design_frequency_hz;
        cb.oversampling = oversampling;
        cb.entries.reserve(n_beams);
        for (std::size_t k = 0; k < n_beams; ++k)
        {
            cvec w(n_elements);
            for (std::size_t n = 0; n < n_elements; ++n)
            {
                // reduce k*n modulo the period first to keep the phase argument small and exact
                const std::size_t kn = (k * n) % n_beams;
                w[n] = std::polar(scale, -2.0 * pi * double(kn) / double(n_beams));
            }
            cb.entries.emplace_back(std::move(w));
        }
        return cb;
    }

    Codebook dft_codebook_2d(std::size_t n_rows, std::size_t n_cols, std::size_t oversampling,
                             double design_frequency_hz)
    {
        const Codebook rows = dft_codebook(n_rows, oversampling, design_frequency_hz);
        const Codebook cols = dft_codebook(n_cols, oversampling, design_frequency_hz);

        Codebook cb;
        cb.design_frequency_hz = design_frequency_hz;
        cb.oversampling = oversampling;
        cb.entries.reserve(rows.entries.size() * cols.entries.size());
        for (const auto &wr : rows.entries)
            for (const auto &wc : cols.entries)
            {
                cvec w;
                w.reserve(n_rows * n_cols);
                for (std::size_t r = 0; r < n_rows; ++r)
                    for (std::size_t c = 0; c < n_cols; ++c)
                        w.push_back(wr[r] * wc[c]);
                cb.entries.emplace_back(std::move(w));
            }
        return cb;
    }
}
