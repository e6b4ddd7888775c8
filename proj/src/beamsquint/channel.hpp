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

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace bsq
{
    // L = a + b log10(d / 1 m) + c log10(f / 1 GHz)
    struct PathLossModel
    {
        double a = 28.0;
        double b = 22.0;
        double c = 20.0;
    };

    double path_loss_db(const PathLossModel &m, double distance_3d_m, double frequency_hz);

    // Extra loss at f1 + delta_f relative to f1: c log10(1 + delta_f / f1)
    double path_loss_delta_db(double c_coeff, double f1_hz, double delta_f_hz);

    // Thermal noise of a band: -174 dBm/Hz + 10 log10(n_subcarriers * scs) + NF
    double noise_power_dbm(std::size_t n_subcarriers, double subcarrier_spacing_hz, double noise_figure_db);

    inline double dbm_to_w(double dbm) { return 1e-3 * std::pow(10.0, 0.1 * dbm); }
    inline double w_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

    // Zero-mean Gaussian field in dB on the horizontal plane with exponential autocorrelation
    // exp(-|dx| / d_corr), synthesized as a sum of random cosines whose wave vectors follow the
    // kernel's spectral density. Read-only after construction.
    class ShadowingField
    {
    public:
        ShadowingField(std::uint64_t seed, double decorrelation_distance_m, double sigma_db,
                       std::size_t n_features = 2048);

        double operator()(double x, double y) const;
        double sigma_db() const { return sigma_db_; }

    private:
        double sigma_db_ = 0.0;
        double scale_ = 0.0;
        std::vector<double> kx_, ky_, phase_;
    };

    // Panel with an optional array; without one the node radiates through its element alone
    struct Antenna
    {
        Vec3 position;
        Mounting mounting;
        std::optional<ArrayGeometry> array;
        ElementPattern element;
    };

    // Direction of `to` seen from `from`, in `from`'s local panel frame
    Direction local_direction(const Antenna &from, Vec3 to);

    // |B|^2 of one end toward a global point; weights are ignored for antennas without an array
    double antenna_gain(const Antenna &ant, const BeamWeights *w, double frequency_hz, Vec3 toward);

    // |B_tx(u_tx->rx)|^2 |B_rx(u_rx->tx)|^2 10^(-(L + S)/10)
    double link_gain(const Antenna &tx, const BeamWeights *tx_w, const Antenna &rx, const BeamWeights *rx_w,
                     double frequency_hz, const PathLossModel &model, double shadowing_db);
}
