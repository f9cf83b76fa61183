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
// Closed-form and Monte Carlo performance metrics: post-selection SINR,
// Rayleigh-fading SER with and without selection, Rayleigh/Rician detection
// statistics (threshold, Marcum-Q detection probability, required SNR),
// selection improvement ratios and ROC curves.

#ifndef XLJRC_CORE_METRICS_HPP
#define XLJRC_CORE_METRICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "rng.hpp"
#include "waveforms.hpp"

namespace xljrc
{
    // Gaussian tail Q(x)
    inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

    // ||S H_C E||^2 / (||S H_X E||^2 + sigma^2) with both polarization rows of
    // every selected antenna included and E the SOP weight vector. Ratios
    // above 1e12 are reported as +inf.
    double sinr_post_selection(const std::vector<bool> &mask, const ChannelMatrix &hc,
                               const ChannelMatrix &hx, const SopSignal &sop, double noise_variance);

    // eta = 1 / (1 + chi_AS)
    double effective_xpd_factor(double chi_as);

    // Rayleigh-fading BPSK/QPSK symbol error rate 0.5 (1 - sqrt(g/(1+g)))
    double ser_closed_form(double mean_snr);

    // Post-selection form with the adjusted leakage factor folded in
    double ser_with_as(double mean_snr_as, double chi_as);

    struct MonteCarloEstimate
    {
        double value = 0.0;
        double ci_half_width = 0.0; // 95% normal CI
        std::size_t trials = 0;
    };

    // Averages Q(sqrt(2 gamma / (1+chi))) over exponential instantaneous-SNR
    // draws of the given mean.
    MonteCarloEstimate ser_monte_carlo(double mean_snr, double chi, std::size_t trials, RngStream &rng);

    // sigma_phi sqrt(-ln pfa); sigma_phi is the RMS envelope of the combined
    // noise-plus-residual-interference (E[z^2] = sigma_phi^2).
    double detection_threshold(double pfa, double noise_sigma);

    // First-order Marcum Q, absolute accuracy ~1e-10 (canonical series; tail
    // integration for extreme arguments).
    double marcum_q1(double a, double b);

    // P_d = Q1(sqrt(2 SINR), sqrt(-2 ln pfa))
    double pd_analytic(double sinr, double pfa);

    // Fraction of |E + CN(0, noise_power)| draws above the threshold
    MonteCarloEstimate pd_monte_carlo(double amplitude, double noise_power, double pfa,
                                      std::size_t trials, RngStream &rng);

    // ((pd/pfa)^{1/R} - 1) / (1 - pd^{1/R})
    double required_snr(double pd, double pfa, int ref_cells);

    struct SnrImprovement
    {
        double power_ratio = 0.0;  // sum_sel useful / sum_all (useful + interf)
        double snr_as_scale = 0.0; // sum_sel useful / sum_all useful
        double sinr_as = 0.0;      // sum_sel useful / (sum_sel interf + noise)
    };

    SnrImprovement snr_improvement(const std::vector<double> &useful,
                                   const std::vector<double> &interference,
                                   const std::vector<bool> &selected, double noise_power);

    // Pointwise pd_analytic over an ascending pfa grid in (0,1)
    std::vector<std::pair<double, double>> roc_curve(double sinr, const std::vector<double> &pfa_grid);

    // Per-trial metric record
    struct MetricsReport
    {
        double sinr_db = 0.0;
        double se = 0.0;
        double ser_analytic = 0.0;
        double ser_mc = 0.0;
        double ser_mc_ci = 0.0;
        double pd_analytic = 0.0;
        double pd_mc = 0.0;
        double pd_mc_ci = 0.0;
        double snr_improvement = 0.0;
        double radar_sinr = 0.0;
        double chi_as = 0.0;
        std::vector<std::pair<double, double>> roc;
    };
}

#endif
