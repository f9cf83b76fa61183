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
// Polarization-aware antenna selection: greedy single-pass role assignment
// driven by per-antenna co-/cross-pol powers, spatial-consistency smoothing,
// visibility-region fairness quotas, role-power threshold filters, an
// exhaustive subset-selection oracle and the baseline selectors.

#ifndef XLJRC_CORE_SELECTION_HPP
#define XLJRC_CORE_SELECTION_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "channel.hpp"
#include "scenario.hpp"
#include "waveforms.hpp"

namespace xljrc
{
    // Per-antenna received powers of the four signal components.
    struct PowerProfile
    {
        std::vector<double> p_h;       // co-pol OFDM power on the H branch
        std::vector<double> p_v;       // co-pol chirp power on the V branch
        std::vector<double> px_h_to_v; // OFDM leakage into the V branch
        std::vector<double> px_v_to_h; // chirp leakage into the H branch
        int size() const { return static_cast<int>(p_h.size()); }
    };

    // Component powers as sample means over the first `window` samples of the
    // transmit streams (0 = whole frame), scaled per antenna by the channel
    // block magnitudes. Throws on an empty window.
    PowerProfile power_profile(const ChannelMatrix &h, const SopSignal &sig, std::size_t window = 0);

    // Polarization power imbalance Gamma_n = P_H(n) / P_V(n); +inf where
    // P_V(n) = 0.
    std::vector<double> imbalance_factor(const PowerProfile &profile);

    struct OpCounters
    {
        std::uint64_t comparisons = 0;
        std::uint64_t sorts = 0;
        std::uint64_t divisions = 0;
    };

    struct SelectionResult
    {
        std::vector<bool> comm_mask;
        std::vector<bool> sense_mask;
        std::vector<bool> discarded;
        OpCounters counters;

        int n_comm() const { return static_cast<int>(std::count(comm_mask.begin(), comm_mask.end(), true)); }
        int n_sense() const { return static_cast<int>(std::count(sense_mask.begin(), sense_mask.end(), true)); }
    };

    struct SelectionThresholds
    {
        double gamma_comm = 0.5;  // drop comm antennas with P_X/P_C above this
        double gamma_radar = 2.0; // drop sensing antennas with P_C/P_X below this
    };

    // Single greedy pass: communication if P_H > P_X^{V->H}, else sensing if
    // P_V > P_X^{H->V}, else discard; a second pass copies the previous
    // antenna's assignment where |P_H - P_V| <= epsilon; the threshold
    // filters run last. Counters track every comparison and division.
    SelectionResult greedy_select(const PowerProfile &profile, double epsilon,
                                  const SelectionThresholds &thresholds);

    // Visibility-region quotas: per VR, communication gets floor(f |V|) with
    // f = 1/2 (fairness) or lambda (adaptive); the remainder is offered to
    // sensing. Membership changes promote/demote by the role-power margin
    // (P_role - P_leakage, descending, index ascending on ties) among
    // threshold-eligible antennas. With multiple VRs the union floors
    // |S_c|, |S_s| >= min_l |V_l| are enforced, then the caps N_c / N_s.
    // Throws std::runtime_error when a quota exceeds the eligible antennas.
    SelectionResult enforce_vr_fairness(const SelectionResult &result, const PowerProfile &profile,
                                        const std::vector<std::vector<bool>> &vrs,
                                        SelectionMode mode, double lambda,
                                        const SelectionThresholds &thresholds,
                                        int n_comm_cap, int n_sense_cap);

    // Relaxed variant for sweep pipelines: quotas and floors clip to the
    // eligible pool of the current realization instead of failing.
    SelectionResult enforce_vr_fairness_relaxed(const SelectionResult &result,
                                                const PowerProfile &profile,
                                                const std::vector<std::vector<bool>> &vrs,
                                                SelectionMode mode, double lambda,
                                                const SelectionThresholds &thresholds,
                                                int n_comm_cap, int n_sense_cap);

    // sum_{n in mask} log2(1 + SINR_n)
    double evaluate_se_objective(const std::vector<bool> &comm_mask,
                                 const std::vector<double> &sinr_per_antenna);

    // Q((tau - sum_{n in mask} P_n) / sigma_n), Q the Gaussian tail
    double evaluate_pd_objective(const std::vector<bool> &sense_mask,
                                 const std::vector<double> &radar_powers, double tau, double sigma_n);

    // Exhaustive subset-selection oracle for the two constrained problems
    // (desk scale, n <= 14). Masks tie-break lexicographically smallest.
    struct BruteForceResult
    {
        std::vector<bool> comm_mask;
        std::vector<bool> sense_mask;
        double se = 0.0;
        double pd = 0.0;
        bool comm_feasible = false;
        bool sense_feasible = false;
    };

    BruteForceResult brute_force_select(const PowerProfile &profile,
                                        const std::vector<std::vector<bool>> &vrs,
                                        const SelectionThresholds &thresholds, int n_comm_cap,
                                        int n_sense_cap, double noise_variance, double tau,
                                        double sigma_n);

    enum class BaselineKind
    {
        AllOn,
        RandomK,
        TopPowerK
    };

    // Comparison arms: every antenna on, k random antennas, or the k antennas
    // with the highest total received power; roles assigned per antenna by
    // the larger of (P_H, P_V).
    SelectionResult baseline_select(BaselineKind kind, const PowerProfile &profile, int k,
                                    RngStream &rng);

    enum class ComplexityScheme
    {
        Proposed,
        Hrnp,
        Ls,
        Ga,
        Pso
    };

    // Analytic operation-count models (unit constants; iterative schemes use
    // N_it = 50 iterations and population 30).
    double complexity_counts(int n, int k, int l, ComplexityScheme scheme);
}

#endif
