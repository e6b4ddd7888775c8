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

#include "beamsquint/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bsq
{
    double path_loss_db(const PathLossModel &m, double distance_3d_m, double frequency_hz)
    {
        if (!(distance_3d_m > 0.0))
            throw std::invalid_argument("path_loss: distance must be positive");
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("path_loss: frequency must be positive");
        return m.a + m.b * std::log10(distance_3d_m) + m.c * std::log10(frequency_hz * 1e-9);
    }

    double path_loss_delta_db(double c_coeff, double f1_hz, double delta_f_hz)
    {
        if (!(f1_hz > 0.0))
            throw std::invalid_argument("path_loss_delta: f1 must be positive");
        if (delta_f_hz < 0.0)
            throw std::invalid_argument("path_loss_delta: delta_f must be non-negative");
        return c_coeff * std::log10(1.0 + delta_f_hz / f1_hz);
    }

    double noise_power_dbm(std::size_t n_subcarriers, double subcarrier_spacing_hz, double noise_figure_db)
    {
        if (n_subcarriers == 0 || !(subcarrier_spacing_hz > 0.0))
            throw std::invalid_argument("noise_power: bandwidth must be positive");
        return -174.0 + 10.0 * std::log10(double(n_subcarriers) * subcarrier_spacing_hz) + noise_figure_db;
    }

    ShadowingField::ShadowingField(std::uint64_t seed, double decorrelation_distance_m, double sigma_db,
                                   std::size_t n_features)
        : sigma_db_(sigma_db)
    {
        if (sigma_db < 0.0)
            throw std::invalid_argument("shadowing: sigma must be non-negative");
        if (sigma_db == 0.0)
            return;
        if (!(decorrelation_distance_m > 0.0))
            throw std::invalid_argument("shadowing: decorrelation distance must be positive");
        if (n_features == 0)
            throw std::invalid_argument("shadowing: at least one feature is required");

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        // The 2D spectrum of exp(-r/d) has radial CDF 1 - (1 + (k d)^2)^(-1/2)
        kx_.resize(n_features);
        ky_.resize(n_features);
        phase_.resize(n_features);
        for (std::size_t m = 0; m < n_features; ++m)
        {
            const double u = unit(rng);
            const double k = std::sqrt(1.0 / ((1.0 - u) * (1.0 - u)) - 1.0) / decorrelation_distance_m;
            const double angle = 2.0 * pi * unit(rng);
            kx_[m] = k * std::cos(angle);
            ky_[m] = k * std::sin(angle);
            phase_[m] = 2.0 * pi * unit(rng);
        }
        scale_ = sigma_db * std::sqrt(2.0 / double(n_features));
    }

    double ShadowingField::operator()(double x, double y) const
    {
        if (kx_.empty())
            return 0.0;
        double s = 0.0;
        for (std::size_t m = 0; m < kx_.size(); ++m)
            s += std::cos(kx_[m] * x + ky_[m] * y + phase_[m]);
        return scale_ * s;
    }

    Direction local_direction(const Antenna &from, Vec3 to)
    {
        const Vec3 d = to - from.position;
        if (!(norm(d) > 0.0))
            throw std::invalid_argument("link endpoints coincide");
        return direction_of(to_local(from.mounting, d));
    }

    double antenna_gain(const Antenna &ant, const BeamWeights *w, double frequency_hz, Vec3 toward)
    {
        const Direction dir = local_direction(ant, toward);
        if (!ant.array)
            return element_gain(ant.element, dir);
        if (w == nullptr)
            throw std::invalid_argument("antenna with an array requires beam weights");
        return beam_gain(*ant.array, ant.element, *w, frequency_hz, dir);
    }

    double link_gain(const Antenna &tx, const BeamWeights *tx_w, const Antenna &rx, const BeamWeights *rx_w,
                     double frequency_hz, const PathLossModel &model, double shadowing_db)
    {
        const double d = norm(rx.position - tx.position);
        if (!(d > 0.0))
            throw std::invalid_argument("link endpoints coincide");
        const double g_tx = antenna_gain(tx, tx_w, frequency_hz, rx.position);
        const double g_rx = antenna_gain(rx, rx_w, frequency_hz, tx.position);
        const double loss_db = path_loss_db(model, d, frequency_hz) + shadowing_db;
        return g_tx * g_rx * std::pow(10.0, -0.1 * loss_db);
    }
}
