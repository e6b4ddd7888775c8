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

#include "beamsquint/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsq
{
    double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

    Direction::Direction(double azimuth_deg, double zenith_deg)
    {
        if (!std::isfinite(azimuth_deg) || !std::isfinite(zenith_deg))
            throw std::invalid_argument("Direction: angles must be finite");
        if (zenith_deg < 0.0 || zenith_deg > 180.0)
            throw std::invalid_argument("Direction: zenith must lie in [0, 180] degrees");

        double az = std::fmod(azimuth_deg, 360.0);
        if (az <= -180.0)
            az += 360.0;
        else if (az > 180.0)
            az -= 360.0;

        if (zenith_deg == 0.0 || zenith_deg == 180.0)
            az = 0.0;

        azimuth_ = az;
        zenith_ = zenith_deg;
    }

    Vec3 unit_vector(const Direction &dir)
    {
        const double az = deg2rad(dir.azimuth_deg());
        const double zen = deg2rad(dir.zenith_deg());
        const double s = std::sin(zen);
        return {s * std::cos(az), s * std::sin(az), std::cos(zen)};
    }

    Direction direction_of(Vec3 v)
    {
        const double r = norm(v);
        if (!(r > 0.0))
            throw std::invalid_argument("direction_of: zero-length vector");
        const double cz = std::clamp(v.z / r, -1.0, 1.0);
        const double zen = rad2deg(std::acos(cz));
        const double rho = std::hypot(v.x, v.y);
        const double az = rho > 0.0 ? rad2deg(std::atan2(v.y, v.x)) : 0.0;
        return Direction(az, zen);
    }

    namespace
    {
        double half_wavelength(double design_frequency_hz)
        {
            if (!(design_frequency_hz > 0.0))
                throw std::invalid_argument("array design frequency must be positive");
            return 0.5 * speed_of_light / design_frequency_hz;
        }
    }

    std::vector<Vec3> ula_positions(std::size_t n_elements, double design_frequency_hz)
    {
        if (n_elements == 0)
            throw std::invalid_argument("ula_positions: element count must be at least 1");
        const double d = half_wavelength(design_frequency_hz);
        const double center = 0.5 * double(n_elements + 1);

        std::vector<Vec3> pos(n_elements);
        for (std::size_t n = 1; n <= n_elements; ++n)
            pos[n - 1] = {0.0, (double(n) - center) * d, 0.0};
        return pos;
    }

    std::vector<Vec3> ura_positions(std::size_t n_rows, std::size_t n_cols, double design_frequency_hz)
    {
        if (n_rows == 0 || n_cols == 0)
            throw std::invalid_argument("ura_positions: rows and columns must be at least 1");
        const double d = half_wavelength(design_frequency_hz);
        const double row_center = 0.5 * double(n_rows + 1);
        const double col_center = 0.5 * double(n_cols + 1);

        std::vector<Vec3> pos;
        pos.reserve(n_rows * n_cols);
        for (std::size_t r = 1; r <= n_rows; ++r)
            for (std::size_t c = 1; c <= n_cols; ++c)
                pos.push_back({0.0, (double(r) - row_center) * d, (double(c) - col_center) * d});
        return pos;
    }

    ArrayGeometry make_ula(std::size_t n_elements, double design_frequency_hz)
    {
        return {ArrayKind::ula, ula_positions(n_elements, design_frequency_hz), design_frequency_hz, n_elements, 1};
    }

    ArrayGeometry make_ura(std::size_t n_rows, std::size_t n_cols, double design_frequency_hz)
    {
        return {ArrayKind::ura, ura_positions(n_rows, n_cols, design_frequency_hz), design_frequency_hz, n_rows, n_cols};
    }

    ArrayGeometry make_arbitrary(std::vector<Vec3> positions, double design_frequency_hz)
    {
        if (positions.empty())
            throw std::invalid_argument("make_arbitrary: at least one element is required");
        half_wavelength(design_frequency_hz);
        const std::size_t n = positions.size();
        return {ArrayKind::arbitrary, std::move(positions), design_frequency_hz, n, 1};
    }

    // R = Rz(yaw) * Ry(downtilt); a positive downtilt tips boresight below the horizon.
    Vec3 to_global(const Mounting &m, Vec3 l)
    {
        const double t = deg2rad(m.downtilt_deg);
        const double ct = std::cos(t), st = std::sin(t);
        const Vec3 p{ct * l.x + st * l.z, l.y, -st * l.x + ct * l.z};

        const double a = deg2rad(m.yaw_deg);
        const double ca = std::cos(a), sa = std::sin(a);
        return {ca * p.x - sa * p.y, sa * p.x + ca * p.y, p.z};
    }

    Vec3 to_local(const Mounting &m, Vec3 g)
    {
        const double a = deg2rad(m.yaw_deg);
        const double ca = std::cos(a), sa = std::sin(a);
        const Vec3 p{ca * g.x + sa * g.y, -sa * g.x + ca * g.y, g.z};

        const double t = deg2rad(m.downtilt_deg);
        const double ct = std::cos(t), st = std::sin(t);
        return {ct * p.x - st * p.z, p.y, st * p.x + ct * p.z};
    }
}
