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
// Test-only reference implementations. These deliberately re-derive results
// with independent control flow and scalar arithmetic; they share nothing
// with the library paths they check.

#ifndef XLJRC_TESTS_SUPPORT_ORACLES_HPP
#define XLJRC_TESTS_SUPPORT_ORACLES_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "core/scenario.hpp"
#include "core/selection.hpp"

namespace xljrc_test
{
    // Slow antenna-major reference of the channel synthesis (Eq.-level scalar
    // arithmetic, antenna-major loop order). Valid for scenarios with zero
    // per-element polarization deviation.
    inline std::vector<std::complex<double>>
    reference_channel(const xljrc::ScenarioConfig &sc, const std::vector<xljrc::PathConfig> &paths)
    {
        const int n = sc.array.n_elements;
        const double c0 = 299792458.0;
        const double lam = c0 / sc.array.carrier_freq;
        const double sp = sc.array.spacing > 0.0 ? sc.array.spacing : lam / 2.0;
        const double xpd = std::pow(10.0, sc.array.xpd_db / 10.0);
        std::vector<std::complex<double>> out(4 * static_cast<std::size_t>(n), 0.0);

        for (int i = 0; i < n; ++i)
        {
            for (const auto &p : paths)
            {
                if (!p.visibility[static_cast<std::size_t>(i)])
                    continue;
                const double delta_n = (2.0 * (i + 1) - n - 1) / 2.0;
                const double off = delta_n * sp;
                const double db = p.scatterer_distance;
                const double d = std::sqrt(db * db + off * off - 2.0 * db * off * std::sin(p.aoa));

                const std::complex<double> steer =
                    std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                               2.0 * M_PI / lam * (d - db));

                double f_co = 1.0;
                if (sc.array.pattern == xljrc::ElementPattern::Dipole)
                    f_co = std::sin(p.aoa);
                else if (sc.array.pattern == xljrc::ElementPattern::Patch)
                    f_co = std::pow(std::cos(p.aoa), sc.array.patch_exponent);
                const std::complex<double> gc =
                    sc.array.max_gain * f_co / d * std::polar(1.0, -2.0 * M_PI / lam * d);
                const std::complex<double> gx = gc / std::sqrt(xpd);

                double ang = p.pol_angle0;
                if (sc.pol_gradient)
                    ang += 2.0 * M_PI / lam * (std::sqrt(db * db + off * off) - db);

                const double norm = std::sqrt(1.0 / (1.0 + p.chi));
                const double leak = std::sqrt(p.chi);
                const std::complex<double> x00 = std::polar(norm, p.depol_phases[0]);
                const std::complex<double> x01 = std::polar(norm * leak, p.depol_phases[1]);
                const std::complex<double> x10 = std::polar(norm * leak, p.depol_phases[2]);
                const std::complex<double> x11 = std::polar(norm, p.depol_phases[3]);

                const double cs = std::cos(ang), sn = std::sin(ang);
                const std::complex<double> r00 = cs * x00 + sn * x10;
                const std::complex<double> r01 = cs * x01 + sn * x11;
                const std::complex<double> r10 = -sn * x00 + cs * x10;
                const std::complex<double> r11 = -sn * x01 + cs * x11;

                const std::complex<double> b00 = gc * r00 + gx * r10;
                const std::complex<double> b01 = gc * r01 + gx * r11;
                const std::complex<double> b10 = gx * r00 - gc * r10;
                const std::complex<double> b11 = gx * r01 - gc * r11;

                const std::complex<double> scale = p.gain * steer;
                out[4 * static_cast<std::size_t>(i) + 0] += scale * b00;
                out[4 * static_cast<std::size_t>(i) + 1] += scale * b01;
                out[4 * static_cast<std::size_t>(i) + 2] += scale * b10;
                out[4 * static_cast<std::size_t>(i) + 3] += scale * b11;
            }
        }
        return out;
    }

    // Straight-line re-implementation of the greedy selection pass
    // (0 = discard, 1 = communication, 2 = sensing).
    inline void greedy_reference(const xljrc::PowerProfile &p, double eps, double gamma_comm,
                                 double gamma_radar, std::vector<int> &roles)
    {
        const int n = p.size();
        roles.assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            if (p.p_h[k] > p.px_v_to_h[k])
                roles[k] = 1;
            else if (p.p_v[k] > p.px_h_to_v[k])
                roles[k] = 2;
            else
                roles[k] = 0;
        }
        for (int i = 1; i < n; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            if (std::fabs(p.p_h[k] - p.p_v[k]) <= eps)
                roles[k] = roles[k - 1];
        }
        for (int i = 0; i < n; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            if (roles[k] == 1 && p.px_v_to_h[k] / p.p_h[k] > gamma_comm)
                roles[k] = 0;
            if (roles[k] == 2)
            {
                const double ratio = p.px_h_to_v[k] > 0.0
                                         ? p.p_v[k] / p.px_h_to_v[k]
                                         : std::numeric_limits<double>::infinity();
                if (ratio < gamma_radar)
                    roles[k] = 0;
            }
        }
    }

    // Quadrature oracle for the Rician tail integral, built on the standard
    // library Bessel function.
    inline double marcum_q1_quadrature(double a, double b)
    {
        const double hi = std::max(a, b) + 14.0;
        if (hi <= b)
            return 0.0;
        auto f = [&](double x) {
            return x * std::cyl_bessel_i(0.0, a * x) * std::exp(-0.5 * (x * x + a * a));
        };
        auto simpson = [&](int n) {
            const double h = (hi - b) / n;
            double s = f(b) + f(hi);
            for (int i = 1; i < n; ++i)
                s += f(b + i * h) * (i % 2 ? 4.0 : 2.0);
            return s * h / 3.0;
        };
        double prev = simpson(512);
        for (int n = 1024; n <= 65536; n *= 2)
        {
            const double cur = simpson(n);
            if (std::abs(cur - prev) < 1e-12)
                return cur;
            prev = cur;
        }
        return prev;
    }
}

#endif
