// SPDX-License-Identifier: Apache-2.0
//
// xljrc - dual-polarized XL-MIMO joint radar and communication simulator
// Copyright (C) 2025-2026 the xljrc developers
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

#include "channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xljrc
{
    std::vector<double> element_offsets(const ArrayConfig &array)
    {
        const int n = array.n_elements;
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i)
            out[static_cast<std::size_t>(i - 1)] = 0.5 * (2.0 * i - n - 1);
        return out;
    }

    double element_distance(double d_bar, double aoa, double offset, double spacing)
    {
        if (d_bar <= 0.0)
            throw std::domain_error("element_distance: scatterer distance must be positive");
        const double off = offset * spacing;
        const double arg = d_bar * d_bar + off * off - 2.0 * d_bar * off * std::sin(aoa);
        if (arg < 0.0)
            throw std::domain_error("element_distance: negative radicand (impossible geometry)");
        return std::sqrt(arg);
    }

    SteeringVector steering_vector(const ArrayConfig &array, const PathConfig &path)
    {
        const int n = array.n_elements;
        const double lambda = array.wavelength();
        const double spacing = array.element_spacing();
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        const auto offsets = element_offsets(array);

        SteeringVector a;
        a.entries.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            const double d = element_distance(path.scatterer_distance, path.aoa,
                                              offsets[static_cast<std::size_t>(i)], spacing);
            const double phase = TWO_PI / lambda * (d - path.scatterer_distance);
            a.entries[static_cast<std::size_t>(i)] = std::polar(scale, phase);
        }
        return a;
    }

    double copol_pattern(const ArrayConfig &array, double aoa)
    {
        switch (array.pattern)
        {
        case ElementPattern::Isotropic:
            return 1.0;
        case ElementPattern::Dipole:
            return std::sin(aoa);
        case ElementPattern::Patch:
            return std::pow(std::cos(aoa), array.patch_exponent);
        }
        return 1.0;
    }

    cdouble copol_gain(const ArrayConfig &array, double aoa, double distance)
    {
        if (distance <= 0.0)
            throw std::domain_error("copol_gain: distance must be positive");
        const double mag = array.max_gain * copol_pattern(array, aoa) / distance;
        const double phase = -TWO_PI / array.wavelength() * distance;
        return std::polar(1.0, phase) * mag;
    }

    cdouble crosspol_gain(cdouble copol, double xpd_linear)
    {
        if (xpd_linear <= 0.0)
            throw std::domain_error("crosspol_gain: XPD must be positive");
        return copol / std::sqrt(xpd_linear);
    }

    ElementGainMatrix element_gain_matrix(const ArrayConfig &array, double aoa, double distance)
    {
        const cdouble gc = copol_gain(array, aoa, distance);
        const cdouble gx = crosspol_gain(gc, array.xpd_linear());
        ElementGainMatrix j;
        j.g = {gc, gx, gx, -gc};
        return j;
    }

    double xpd_measured(const ElementGainMatrix &gain)
    {
        const double gx = std::abs(gain.crosspol());
        if (gx == 0.0)
            return std::numeric_limits<double>::infinity();
        const double r = std::abs(gain.copol()) / gx;
        return r * r;
    }

    CMat2 depolarization_matrix(double chi, const std::array<double, 4> &phases)
    {
        if (chi < 0.0 || chi > 1.0)
            throw std::domain_error("depolarization_matrix: chi must be in [0,1]");
        const double norm = std::sqrt(1.0 / (1.0 + chi));
        const double leak = std::sqrt(chi);
        return {std::polar(norm, phases[0]), std::polar(norm * leak, phases[1]),
                std::polar(norm * leak, phases[2]), std::polar(norm, phases[3])};
    }

    CMat2 rotation_matrix(double angle)
    {
        const double c = std::cos(angle), s = std::sin(angle);
        return {cdouble(c, 0.0), cdouble(s, 0.0), cdouble(-s, 0.0), cdouble(c, 0.0)};
    }

    double polarization_shift(const PathConfig &path, const ArrayConfig &array, int element,
                              double deviation, RngStream &rng, bool include_gradient)
    {
        if (element < 0 || element >= array.n_elements)
            throw std::out_of_range("polarization_shift: element index out of range");
        double angle = path.pol_angle0;
        if (include_gradient)
        {
            const double offset = 0.5 * (2.0 * (element + 1) - array.n_elements - 1);
            const double off = offset * array.element_spacing();
            const double d = path.scatterer_distance;
            const double delta_d = std::sqrt(d * d + off * off) - d;
            angle += TWO_PI / array.wavelength() * delta_d;
        }
        if (deviation > 0.0)
            angle += rng.uniform(-deviation, deviation);
        return wrap_angle(angle);
    }

    ChannelMatrix assemble_channel(const ScenarioConfig &config, RngStream &rng)
    {
        const auto paths = realize_paths(config, rng);
        return assemble_channel(config, paths, rng);
    }

    ChannelMatrix assemble_channel(const ScenarioConfig &config, const std::vector<PathConfig> &paths,
                                   RngStream &rng, const CMat2 *tx_gain)
    {
        const ArrayConfig &array = config.array;
        const int n = array.n_elements;
        const double spacing = array.element_spacing();
        const CMat2 jt = tx_gain ? *tx_gain : CMat2::identity();
        const auto offsets = element_offsets(array);

        ChannelMatrix h = ChannelMatrix::zeros(n);
        for (const auto &path : paths)
        {
            const SteeringVector a = steering_vector(array, path);
            const CMat2 depol = depolarization_matrix(path.chi, path.depol_phases);
            const CMat2 depol_jt = depol * jt;
            for (int i = 0; i < n; ++i)
            {
                if (!path.visibility[static_cast<std::size_t>(i)])
                    continue;
                const double d = element_distance(path.scatterer_distance, path.aoa,
                                                  offsets[static_cast<std::size_t>(i)], spacing);
                const ElementGainMatrix jn = element_gain_matrix(array, path.aoa, d);
                const double angle =
                    polarization_shift(path, array, i, config.pol_deviation, rng, config.pol_gradient);
                const cdouble scale = path.gain * a.entries[static_cast<std::size_t>(i)];
                h.block(i) += scale * (jn.g.transpose() * (rotation_matrix(angle) * depol_jt));
            }
        }
        return h;
    }

    std::pair<ChannelMatrix, ChannelMatrix> split_copol_crosspol(const ChannelMatrix &h)
    {
        ChannelMatrix hc = ChannelMatrix::zeros(h.n_antennas);
        ChannelMatrix hx = ChannelMatrix::zeros(h.n_antennas);
        for (int i = 0; i < h.n_antennas; ++i)
        {
            const CMat2 &b = h.block(i);
            hc.block(i) = {b.a, {0.0, 0.0}, {0.0, 0.0}, b.d};
            hx.block(i) = {{0.0, 0.0}, b.b, b.c, {0.0, 0.0}};
        }
        return {std::move(hc), std::move(hx)};
    }
}
