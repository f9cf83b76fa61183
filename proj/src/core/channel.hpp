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
//
// Dual-polarized near-field channel synthesis. The channel of one antenna
// is a complex 2x2 block in the [V, H] basis,
//
//     [ h_VrVt  h_VrHt ]
//     [ h_HrVt  h_HrHt ] ,
//
// mapping the transmit vector [E_V; E_H] to the received [y_V; y_H]. A
// realization accumulates, per path and per visible antenna, the product of
// the element gain matrix, the scalar steering/path gain, the polarization
// rotation at that element, the path depolarization matrix and the transmit
// gain matrix.

#ifndef XLJRC_CORE_CHANNEL_HPP
#define XLJRC_CORE_CHANNEL_HPP

#include <utility>
#include <vector>

#include "mat2.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace xljrc
{
    // Unit-norm near-field steering vector; |entries[n]| = 1/sqrt(N).
    struct SteeringVector
    {
        std::vector<cdouble> entries;
    };

    // Per-element dual-polarized gain matrix [[Gc, Gx], [Gx, -Gc]].
    struct ElementGainMatrix
    {
        CMat2 g;
        cdouble copol() const { return g.a; }
        cdouble crosspol() const { return g.b; }
    };

    // Polarization-resolved channel: one 2x2 block per receive antenna
    // (the stacked 2N x 2 matrix, stored block-wise).
    struct ChannelMatrix
    {
        int n_antennas = 0;
        std::vector<CMat2> blocks;

        const CMat2 &block(int n) const { return blocks[static_cast<std::size_t>(n)]; }
        CMat2 &block(int n) { return blocks[static_cast<std::size_t>(n)]; }

        static ChannelMatrix zeros(int n)
        {
            ChannelMatrix h;
            h.n_antennas = n;
            h.blocks.assign(static_cast<std::size_t>(n), CMat2{});
            return h;
        }
    };

    // Centered element offsets delta_n = (2n - N - 1)/2, n = 1..N.
    std::vector<double> element_offsets(const ArrayConfig &array);

    // Scatterer-to-element distance by the law of cosines:
    // sqrt(d^2 + (delta*s)^2 - 2 d delta s sin(aoa)). Throws std::domain_error
    // if the radicand is negative.
    double element_distance(double d_bar, double aoa, double offset, double spacing);

    // entries[n] = (1/sqrt(N)) exp(+j 2pi/lambda (d(n) - d_bar)); the center
    // element of an odd array has zero phase.
    SteeringVector steering_vector(const ArrayConfig &array, const PathConfig &path);

    // Normalized co-pol pattern f_co: 1 (isotropic), sin(phi) (dipole),
    // cos^k(phi) (patch).
    double copol_pattern(const ArrayConfig &array, double aoa);

    // Gmax * f_co(phi) * (1/d) * exp(-j 2pi/lambda d)
    cdouble copol_gain(const ArrayConfig &array, double aoa, double distance);

    // Gx = Gc / sqrt(XPD)
    cdouble crosspol_gain(cdouble copol, double xpd_linear);

    ElementGainMatrix element_gain_matrix(const ArrayConfig &array, double aoa, double distance);

    // (|Gc| / |Gx|)^2; +inf when Gx = 0
    double xpd_measured(const ElementGainMatrix &gain);

    // sqrt(1/(1+chi)) [[e^{ja0}, sqrt(chi) e^{ja1}], [sqrt(chi) e^{ja2}, e^{ja3}]]
    // with phases stored in PathConfig order (HH, HV, VH, VV). Squared
    // Frobenius norm is 2 for every chi in [0,1].
    CMat2 depolarization_matrix(double chi, const std::array<double, 4> &phases);

    // [[cos, sin], [-sin, cos]]
    CMat2 rotation_matrix(double angle);

    // Polarization angle seen by one element: the initial angle of the path
    // plus the geometric near-field gradient (2pi/lambda) * (sqrt(d^2 +
    // (delta_n s)^2) - d) plus a random deviation in [-deviation, +deviation].
    // Returned wrapped into [0, 2pi). `include_gradient` = false drops the
    // geometric term (far-field behaviour).
    double polarization_shift(const PathConfig &path, const ArrayConfig &array, int element,
                              double deviation, RngStream &rng, bool include_gradient = true);

    // Full channel realization. Paths are realized from the scenario first;
    // the overload takes pre-realized paths. `tx_gain` defaults to identity.
    ChannelMatrix assemble_channel(const ScenarioConfig &config, RngStream &rng);
    ChannelMatrix assemble_channel(const ScenarioConfig &config, const std::vector<PathConfig> &paths,
                                   RngStream &rng, const CMat2 *tx_gain = nullptr);

    // (H_C, H_X): per-block diagonal part and anti-diagonal part; the two
    // always recombine to the input exactly.
    std::pair<ChannelMatrix, ChannelMatrix> split_copol_crosspol(const ChannelMatrix &h);
}

#endif
