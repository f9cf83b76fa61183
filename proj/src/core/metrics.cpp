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

#include "metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xljrc
{
    double sinr_post_selection(const std::vector<bool> &mask, const ChannelMatrix &hc,
                               const ChannelMatrix &hx, const SopSignal &sop, double noise_variance)
    {
        if (hc.n_antennas != hx.n_antennas ||
            mask.size() != static_cast<std::size_t>(hc.n_antennas))
            throw std::invalid_argument("sinr_post_selection: shape mismatch");
        bool any = false;
        const double pv = std::norm(sop.v_weight());
        const double ph = std::norm(sop.h_weight());
        double sig = 0.0, interf = 0.0;
        for (int n = 0; n < hc.n_antennas; ++n)
        {
            if (!mask[static_cast<std::size_t>(n)])
                continue;
            any = true;
            const CMat2 &c = hc.block(n);
            const CMat2 &x = hx.block(n);
            sig += std::norm(c.a) * pv + std::norm(c.d) * ph;
            interf += std::norm(x.b) * ph + std::norm(x.c) * pv;
        }
        if (!any)
            throw std::invalid_argument("sinr_post_selection: empty selection");
        const double den = interf + noise_variance;
        if (den <= 0.0 || sig / den > 1e12)
            return std::numeric_limits<double>::infinity();
        return sig / den;
    }

    double effective_xpd_factor(double chi_as)
    {
        if (chi_as < 0.0)
            throw std::domain_error("effective_xpd_factor: chi_as must be >= 0");
        return 1.0 / (1.0 + chi_as);
    }

    double ser_closed_form(double mean_snr)
    {
        if (mean_snr < 0.0)
            throw std::domain_error("ser_closed_form: mean SNR must be >= 0");
        return 0.5 * (1.0 - std::sqrt(mean_snr / (1.0 + mean_snr)));
    }

    double ser_with_as(double mean_snr_as, double chi_as)
    {
        const double g = mean_snr_as * effective_xpd_factor(chi_as);
        return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
    }

    MonteCarloEstimate ser_monte_carlo(double mean_snr, double chi, std::size_t trials, RngStream &rng)
    {
        if (trials == 0)
            throw std::invalid_argument("ser_monte_carlo: trials must be positive");
        const double scale = 2.0 / (1.0 + chi);
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const double gamma = mean_snr > 0.0 ? rng.exponential(mean_snr) : 0.0;
            const double p = gaussian_q(std::sqrt(scale * gamma));
            sum += p;
            sum_sq += p * p;
        }
        MonteCarloEstimate est;
        est.trials = trials;
        est.value = sum / static_cast<double>(trials);
        const double var = sum_sq / static_cast<double>(trials) - est.value * est.value;
        est.ci_half_width = 1.96 * std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
        return est;
    }

    double detection_threshold(double pfa, double noise_sigma)
    {
        if (pfa <= 0.0 || pfa >= 1.0)
            throw std::domain_error("detection_threshold: pfa must be in (0,1)");
        if (noise_sigma <= 0.0)
            throw std::domain_error("detection_threshold: noise sigma must be positive");
        return noise_sigma * std::sqrt(-std::log(pfa));
    }

    namespace
    {
        // I0(x) e^{-x}
        double bessel_i0_scaled(double x)
        {
            if (x < 0.0)
                x = -x;
            if (x <= 30.0)
            {
                // power series, then scale
                double term = 1.0, sum = 1.0;
                const double q = 0.25 * x * x;
                for (int k = 1; k < 200; ++k)
                {
                    term *= q / (static_cast<double>(k) * k);
                    sum += term;
                    if (term < sum * 1e-17)
                        break;
                }
                return sum * std::exp(-x);
            }
            // asymptotic expansion
            double term = 1.0, sum = 1.0;
            for (int k = 1; k <= 12; ++k)
            {
                const double num = (2.0 * k - 1.0) * (2.0 * k - 1.0);
                term *= num / (8.0 * k * x);
                sum += term;
                if (term < 1e-17)
                    break;
            }
            return sum / std::sqrt(TWO_PI * x);
        }

        // Rician tail integrand with the exponential factored against the
        // scaled Bessel: x I0(a x) exp(-(x^2+a^2)/2) = x i0e(a x) exp(-(x-a)^2/2)
        double rician_tail_integrand(double x, double a)
        {
            const double d = x - a;
            return x * bessel_i0_scaled(a * x) * std::exp(-0.5 * d * d);
        }

        double simpson(double lo, double hi, double a, int n)
        {
            const double h = (hi - lo) / n;
            double s = rician_tail_integrand(lo, a) + rician_tail_integrand(hi, a);
            for (int i = 1; i < n; ++i)
                s += rician_tail_integrand(lo + i * h, a) * (i % 2 ? 4.0 : 2.0);
            return s * h / 3.0;
        }

        // Fallback for arguments too large for the linear-space series: the
        // integrand is a near-Gaussian bump of unit width centered at `a`.
        double marcum_q1_integral(double a, double b)
        {
            const double lo = b;
            const double hi = std::max(a, b) + 12.0;
            if (hi <= lo)
                return 0.0;
            double prev = simpson(lo, hi, a, 256);
            for (int n = 512; n <= 16384; n *= 2)
            {
                const double cur = simpson(lo, hi, a, n);
                if (std::abs(cur - prev) < 1e-12)
                    return cur;
                prev = cur;
            }
            return prev;
        }
    }

    double marcum_q1(double a, double b)
    {
        if (a < 0.0 || b < 0.0)
            throw std::domain_error("marcum_q1: arguments must be >= 0");
        if (b == 0.0)
            return 1.0;
        const double ha = 0.5 * a * a;
        const double hb = 0.5 * b * b;
        if (a == 0.0)
            return std::exp(-hb);
        if (b >= a + 14.0 && hb > 650.0)
            return 0.0; // below 1e-10 by the Gaussian bound
        if (a >= b + 14.0 && ha > 650.0)
            return 1.0;
        if (ha > 650.0 || hb > 650.0)
            return std::min(1.0, marcum_q1_integral(a, b));

        // canonical series: sum_k Pois(k; a^2/2) * P(Pois(b^2/2) <= k)
        double pois_a = std::exp(-ha);
        double pois_b = std::exp(-hb);
        double inner = pois_b;
        double sum = pois_a * inner;
        double tail = 1.0 - pois_a;
        for (int k = 1; k < 1000000; ++k)
        {
            pois_a *= ha / k;
            pois_b *= hb / k;
            inner += pois_b;
            sum += pois_a * inner;
            tail -= pois_a;
            if (tail < 1e-14 && static_cast<double>(k) > ha)
                break; // remaining mass bounds the truncation error
        }
        return std::min(1.0, sum);
    }

    double pd_analytic(double sinr, double pfa)
    {
        if (sinr < 0.0)
            throw std::domain_error("pd_analytic: SINR must be >= 0");
        if (pfa <= 0.0 || pfa >= 1.0)
            throw std::domain_error("pd_analytic: pfa must be in (0,1)");
        if (std::isinf(sinr))
            return 1.0;
        return marcum_q1(std::sqrt(2.0 * sinr), std::sqrt(-2.0 * std::log(pfa)));
    }

    MonteCarloEstimate pd_monte_carlo(double amplitude, double noise_power, double pfa,
                                      std::size_t trials, RngStream &rng)
    {
        if (noise_power <= 0.0)
            throw std::invalid_argument("pd_monte_carlo: noise power must be positive");
        if (trials == 0)
            throw std::invalid_argument("pd_monte_carlo: trials must be positive");
        const double threshold = detection_threshold(pfa, std::sqrt(noise_power));
        std::size_t hits = 0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const cdouble z = amplitude + rng.cgaussian(noise_power);
            if (std::abs(z) > threshold)
                ++hits;
        }
        MonteCarloEstimate est;
        est.trials = trials;
        est.value = static_cast<double>(hits) / static_cast<double>(trials);
        est.ci_half_width =
            1.96 * std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(trials));
        return est;
    }

    double required_snr(double pd, double pfa, int ref_cells)
    {
        if (!(pfa > 0.0 && pfa < pd && pd < 1.0))
            throw std::domain_error("required_snr: need 0 < pfa < pd < 1");
        if (ref_cells < 1)
            throw std::domain_error("required_snr: ref_cells must be >= 1");
        const double r = 1.0 / static_cast<double>(ref_cells);
        return (std::pow(pd / pfa, r) - 1.0) / (1.0 - std::pow(pd, r));
    }

    SnrImprovement snr_improvement(const std::vector<double> &useful,
                                   const std::vector<double> &interference,
                                   const std::vector<bool> &selected, double noise_power)
    {
        if (useful.size() != interference.size() || useful.size() != selected.size())
            throw std::invalid_argument("snr_improvement: length mismatch");
        double sel_useful = 0.0, sel_interf = 0.0, all_useful = 0.0, all_interf = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < useful.size(); ++i)
        {
            all_useful += useful[i];
            all_interf += interference[i];
            if (selected[i])
            {
                any = true;
                sel_useful += useful[i];
                sel_interf += interference[i];
            }
        }
        if (!any)
            throw std::invalid_argument("snr_improvement: empty selection");

        SnrImprovement out;
        const double denom_total = all_useful + all_interf;
        out.power_ratio = denom_total > 0.0 ? sel_useful / denom_total : 0.0;
        out.snr_as_scale = all_useful > 0.0 ? sel_useful / all_useful : 0.0;
        out.sinr_as = sel_useful / (sel_interf + noise_power);
        return out;
    }

    std::vector<std::pair<double, double>> roc_curve(double sinr, const std::vector<double> &pfa_grid)
    {
        std::vector<std::pair<double, double>> roc;
        roc.reserve(pfa_grid.size());
        double prev = 0.0;
        bool first = true;
        for (double pfa : pfa_grid)
        {
            if (pfa <= 0.0 || pfa >= 1.0)
                throw std::domain_error("roc_curve: pfa grid values must be in (0,1)");
            if (!first && pfa <= prev)
                throw std::invalid_argument("roc_curve: pfa grid must be ascending");
            prev = pfa;
            first = false;
            roc.emplace_back(pfa, pd_analytic(sinr, pfa));
        }
        return roc;
    }
}
