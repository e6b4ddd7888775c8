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

#include <cstddef>
#include <vector>

namespace bsq
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr double pi = 3.14159265358979323846;

    inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    double dot(Vec3 a, Vec3 b);
    double norm(Vec3 a);

    // Angular coordinates in degrees.
    // Azimuth is measured from +x toward +y, zenith from +z; boresight is (0, 90).
    class Direction
    {
    public:
        Direction() = default;

        // Wraps the azimuth into (-180, 180]; throws if zenith is outside [0, 180].
        // At the poles the azimuth is set to 0.
        Direction(double azimuth_deg, double zenith_deg);

        double azimuth_deg() const { return azimuth_; }
        double zenith_deg() const { return zenith_; }

        friend bool operator==(const Direction &, const Direction &) = default;

    private:
        double azimuth_ = 0.0;
        double zenith_ = 90.0;
    };

    // [sin(zen) cos(az), sin(zen) sin(az), cos(zen)]
    Vec3 unit_vector(const Direction &dir);

    // Inverse of unit_vector for any non-zero vector (normalized internally)
    Direction direction_of(Vec3 v);

    enum class ArrayKind
    {
        ula,
        ura,
        arbitrary
    };

    struct ArrayGeometry
    {
        ArrayKind kind = ArrayKind::arbitrary;
        std::vector<Vec3> element_positions; // [m], local array frame
        double design_frequency_hz = 0.0;    // spacing is half the wavelength at this frequency
        std::size_t rows = 0;                // URA: elements along y; ULA: N
        std::size_t cols = 0;                // URA: elements along z; ULA: 1

        std::size_t element_count() const { return element_positions.size(); }
    };

    // ULA along the y-axis, centered at the origin:
    // y_n = (n - (N+1)/2) * lambda_c / 2 for n = 1..N.
    std::vector<Vec3> ula_positions(std::size_t n_elements, double design_frequency_hz);

    // URA on the yz-plane. Row index n_r moves along y, column index n_c along z.
    // Enumeration is row-major: element (n_r, n_c) is stored at index n_r * n_cols + n_c (0-based).
    std::vector<Vec3> ura_positions(std::size_t n_rows, std::size_t n_cols, double design_frequency_hz);

    ArrayGeometry make_ula(std::size_t n_elements, double design_frequency_hz);
    ArrayGeometry make_ura(std::size_t n_rows, std::size_t n_cols, double design_frequency_hz);
    ArrayGeometry make_arbitrary(std::vector<Vec3> positions, double design_frequency_hz);

    // Orientation of an antenna panel in the global frame: the local +x axis (boresight)
    // is rotated by `yaw_deg` about +z, then pitched down by `downtilt_deg`.
    struct Mounting
    {
        double yaw_deg = 0.0;
        double downtilt_deg = 0.0;
    };

    Vec3 to_local(const Mounting &m, Vec3 global);
    Vec3 to_global(const Mounting &m, Vec3 local);
}
