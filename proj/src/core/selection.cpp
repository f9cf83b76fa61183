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

#include "selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace xljrc
{
    PowerProfile power_profile(const ChannelMatrix &h, const SopSignal &sig, std::size_t window)
    {
        const std::size_t nh = sig.h_stream.size();
        const std::size_t nv = sig.v_stream.size();
        if (window == 0)
            window = std::min(nh, nv);
        if (window == 0 || window > nh || window > nv)
            throw std::invalid_argument("power_profile: empty or oversized averaging window");

        double mh = 0.0, mv = 0.0; // mean sample powers of the weighted streams
        for (std::size_t t = 0; t < window; ++t)
        {
            mh += std::norm(sig.h_stream[t]);
            mv += std::norm(sig.v_stream[t]);
        }
        mh /= static_cast<double>(window);
        mv /= static_cast<double>(window);

        const int n = h.n_antennas;
        PowerProfile p;
        p.p_h.resize(static_cast<std::size_t>(n));
        p.p_v.resize(static_cast<std::size_t>(n));
        p.px_h_to_v.resize(static_cast<std::size_t>(n));
        p.px_v_to_h.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            const CMat2 &b = h.block(i);
            const std::size_t k = static_cast<std::size_t>(i);
            p.p_v[k] = std::norm(b.a) * mv;       // chirp arriving on V
            p.px_h_to_v[k] = std::norm(b.b) * mh; // OFDM leaking into V
            p.px_v_to_h[k] = std::norm(b.c) * mv; // chirp leaking into H
            p.p_h[k] = std::norm(b.d) * mh;       // OFDM arriving on H
        }
        return p;
    }

    std::vector<double> imbalance_factor(const PowerProfile &profile)
    {
        std::vector<double> g(profile.p_h.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            g[i] = profile.p_v[i] > 0.0 ? profile.p_h[i] / profile.p_v[i]
                                        : std::numeric_limits<double>::infinity();
        return g;
    }

    namespace
    {
        enum class Role : std::uint8_t
        {
            Discard,
            Comm,
            Sense
        };

        void roles_to_result(const std::vector<Role> &roles, SelectionResult &r)
        {
            const std::size_t n = roles.size();
            r.comm_mask.assign(n, false);
            r.sense_mask.assign(n, false);
            r.discarded.assign(n, false);
            for (std::size_t i = 0; i < n; ++i)
            {
                switch (roles[i])
                {
                case Role::Comm:
                    r.comm_mask[i] = true;
                    break;
                case Role::Sense:
                    r.sense_mask[i] = true;
                    break;
                case Role::Discard:
                    r.discarded[i] = true;
                    break;
                }
            }
        }

        double comm_margin(const PowerProfile &p, std::size_t i)
        {
            return p.p_h[i] - p.px_v_to_h[i];
        }

        double sense_margin(const PowerProfile &p, std::size_t i)
        {
            return p.p_v[i] - p.px_h_to_v[i];
        }

        bool comm_eligible(const PowerProfile &p, std::size_t i, double gamma_comm)
        {
            if (p.p_h[i] <= 0.0)
                return false;
            return p.px_v_to_h[i] / p.p_h[i] <= gamma_comm;
        }

        bool sense_eligible(const PowerProfile &p, std::size_t i, double gamma_radar)
        {
            const double ratio = p.px_h_to_v[i] > 0.0
                                     ? p.p_v[i] / p.px_h_to_v[i]
                                     : std::numeric_limits<double>::infinity();
            return ratio >= gamma_radar;
        }
    }

    SelectionResult greedy_select(const PowerProfile &profile, double epsilon,
                                  const SelectionThresholds &thresholds)
    {
        const std::size_t n = profile.p_h.size();
        SelectionResult res;
        std::vector<Role> roles(n, Role::Discard);

        // imbalance factors are part of the per-antenna evaluation
        for (std::size_t i = 0; i < n; ++i)
        {
            res.counters.divisions++;
            (void)(profile.p_v[i] > 0.0 ? profile.p_h[i] / profile.p_v[i] : 0.0);
        }

        // step 1: role assignment by co-pol power vs. leakage
        for (std::size_t i = 0; i < n; ++i)
        {
            res.counters.comparisons++;
            if (profile.p_h[i] > profile.px_v_to_h[i])
            {
                roles[i] = Role::Comm;
                continue;
            }
            res.counters.comparisons++;
            if (profile.p_v[i] > profile.px_h_to_v[i])
                roles[i] = Role::Sense;
            else
                roles[i] = Role::Discard;
        }

        // step 2: spatial consistency; antenna 1 keeps its step-1 role
        for (std::size_t i = 1; i < n; ++i)
        {
            res.counters.comparisons++;
            if (std::abs(profile.p_h[i] - profile.p_v[i]) <= epsilon)
                roles[i] = roles[i - 1];
        }

        // step 3: cross-pol power ratio filters
        for (std::size_t i = 0; i < n; ++i)
        {
            if (roles[i] == Role::Comm)
            {
                res.counters.divisions++;
                res.counters.comparisons++;
                if (!comm_eligible(profile, i, thresholds.gamma_comm))
                    roles[i] = Role::Discard;
            }
            else if (roles[i] == Role::Sense)
            {
                res.counters.divisions++;
                res.counters.comparisons++;
                if (!sense_eligible(profile, i, thresholds.gamma_radar))
                    roles[i] = Role::Discard;
            }
        }

        roles_to_result(roles, res);
        return res;
    }

    namespace
    {
        // Merge sort by margin descending (index ascending on ties), counting
        // every key comparison. A fixed algorithm keeps the counters
        // reproducible across standard libraries.
        void merge_sort_by_margin(std::vector<int> &idx, std::vector<int> &scratch, std::size_t lo,
                                  std::size_t hi, const std::vector<double> &margin,
                                  OpCounters &counters)
        {
            if (hi - lo < 2)
                return;
            const std::size_t mid = lo + (hi - lo) / 2;
            merge_sort_by_margin(idx, scratch, lo, mid, margin, counters);
            merge_sort_by_margin(idx, scratch, mid, hi, margin, counters);
            std::size_t a = lo, b = mid, o = lo;
            while (a < mid && b < hi)
            {
                counters.comparisons++;
                const double ma = margin[static_cast<std::size_t>(idx[a])];
                const double mb = margin[static_cast<std::size_t>(idx[b])];
                const bool take_a = ma != mb ? ma > mb : idx[a] < idx[b];
                scratch[o++] = take_a ? idx[a++] : idx[b++];
            }
            while (a < mid)
                scratch[o++] = idx[a++];
            while (b < hi)
                scratch[o++] = idx[b++];
            std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
                      scratch.begin() + static_cast<std::ptrdiff_t>(hi),
                      idx.begin() + static_cast<std::ptrdiff_t>(lo));
        }

        void sort_by_margin(std::vector<int> &idx, const std::vector<double> &margin,
                            OpCounters &counters)
        {
            counters.sorts++;
            std::vector<int> scratch(idx.size());
            merge_sort_by_margin(idx, scratch, 0, idx.size(), margin, counters);
        }
    }

    namespace
    {
        SelectionResult enforce_vr_fairness_impl(const SelectionResult &result,
                                                 const PowerProfile &profile,
                                                 const std::vector<std::vector<bool>> &vrs,
                                                 SelectionMode mode, double lambda,
                                                 const SelectionThresholds &thresholds,
                                                 int n_comm_cap, int n_sense_cap, bool strict);
    }

    SelectionResult enforce_vr_fairness(const SelectionResult &result, const PowerProfile &profile,
                                        const std::vector<std::vector<bool>> &vrs,
                                        SelectionMode mode, double lambda,
                                        const SelectionThresholds &thresholds,
                                        int n_comm_cap, int n_sense_cap)
    {
        return enforce_vr_fairness_impl(result, profile, vrs, mode, lambda, thresholds, n_comm_cap,
                                        n_sense_cap, true);
    }

    SelectionResult enforce_vr_fairness_relaxed(const SelectionResult &result,
                                                const PowerProfile &profile,
                                                const std::vector<std::vector<bool>> &vrs,
                                                SelectionMode mode, double lambda,
                                                const SelectionThresholds &thresholds,
                                                int n_comm_cap, int n_sense_cap)
    {
        return enforce_vr_fairness_impl(result, profile, vrs, mode, lambda, thresholds, n_comm_cap,
                                        n_sense_cap, false);
    }

    namespace
    {
        SelectionResult enforce_vr_fairness_impl(const SelectionResult &result,
                                                 const PowerProfile &profile,
                                                 const std::vector<std::vector<bool>> &vrs,
                                                 SelectionMode mode, double lambda,
                                                 const SelectionThresholds &thresholds,
                                                 int n_comm_cap, int n_sense_cap, bool strict)
    {
        if (vrs.empty())
            throw std::invalid_argument("enforce_vr_fairness: no visibility regions");
        const std::size_t n = profile.p_h.size();
        const double frac = mode == SelectionMode::Fairness ? 0.5 : lambda;

        SelectionResult out = result;
        std::vector<Role> roles(n, Role::Discard);
        for (std::size_t i = 0; i < n; ++i)
            roles[i] = out.comm_mask[i] ? Role::Comm : (out.sense_mask[i] ? Role::Sense : Role::Discard);

        std::vector<double> m_comm(n), m_sense(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            m_comm[i] = comm_margin(profile, i);
            m_sense[i] = sense_margin(profile, i);
        }

        int s_min = static_cast<int>(n);
        for (const auto &vr : vrs)
        {
            const int sz = static_cast<int>(std::count(vr.begin(), vr.end(), true));
            s_min = std::min(s_min, sz);
        }

        // per-VR quota pass
        for (const auto &vr : vrs)
        {
            std::vector<int> members;
            for (std::size_t i = 0; i < n; ++i)
                if (vr[i])
                    members.push_back(static_cast<int>(i));
            int quota_c = static_cast<int>(std::floor(frac * static_cast<double>(members.size())));

            std::vector<int> in_comm, eligible_c;
            for (int i : members)
            {
                const std::size_t k = static_cast<std::size_t>(i);
                if (roles[k] == Role::Comm)
                    in_comm.push_back(i);
                if (comm_eligible(profile, k, thresholds.gamma_comm))
                    eligible_c.push_back(i);
            }
            if (quota_c > static_cast<int>(eligible_c.size()))
            {
                if (strict)
                    throw std::runtime_error("enforce_vr_fairness: communication quota exceeds "
                                             "eligible antennas in a visibility region");
                quota_c = static_cast<int>(eligible_c.size());
            }

            if (static_cast<int>(in_comm.size()) > quota_c)
            {
                // demote the weakest margins back to unassigned
                sort_by_margin(in_comm, m_comm, out.counters);
                for (std::size_t k = static_cast<std::size_t>(quota_c); k < in_comm.size(); ++k)
                    roles[static_cast<std::size_t>(in_comm[k])] = Role::Discard;
            }
            else if (static_cast<int>(in_comm.size()) < quota_c)
            {
                // promote eligible antennas by margin: unassigned first, then sensing
                std::vector<int> pool_free, pool_sense;
                for (int i : eligible_c)
                {
                    const Role r = roles[static_cast<std::size_t>(i)];
                    if (r == Role::Discard)
                        pool_free.push_back(i);
                    else if (r == Role::Sense)
                        pool_sense.push_back(i);
                }
                sort_by_margin(pool_free, m_comm, out.counters);
                sort_by_margin(pool_sense, m_comm, out.counters);
                int need = quota_c - static_cast<int>(in_comm.size());
                for (int i : pool_free)
                {
                    if (need == 0)
                        break;
                    roles[static_cast<std::size_t>(i)] = Role::Comm;
                    --need;
                }
                for (int i : pool_sense)
                {
                    if (need == 0)
                        break;
                    roles[static_cast<std::size_t>(i)] = Role::Comm;
                    --need;
                }
            }

            // remainder of the VR is offered to sensing
            std::vector<int> pool_s;
            for (int i : members)
            {
                const std::size_t k = static_cast<std::size_t>(i);
                if (roles[k] == Role::Discard && sense_eligible(profile, k, thresholds.gamma_radar))
                    pool_s.push_back(i);
            }
            int sense_room = static_cast<int>(members.size()) - quota_c;
            for (int i : members)
                if (roles[static_cast<std::size_t>(i)] == Role::Sense)
                    --sense_room;
            sort_by_margin(pool_s, m_sense, out.counters);
            for (int i : pool_s)
            {
                if (sense_room <= 0)
                    break;
                roles[static_cast<std::size_t>(i)] = Role::Sense;
                --sense_room;
            }
        }

        // union floors apply only when multiple VRs exist; a single VR is
        // governed by its quota split alone
        auto count_role = [&](Role r) {
            int c = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (roles[i] == r)
                    ++c;
            return c;
        };
        auto in_any_vr = [&](std::size_t i) {
            for (const auto &vr : vrs)
                if (vr[i])
                    return true;
            return false;
        };

        const int floor_c = vrs.size() > 1 ? std::min(s_min, n_comm_cap) : 0;
        if (count_role(Role::Comm) < floor_c)
        {
            std::vector<int> pool;
            for (std::size_t i = 0; i < n; ++i)
                if (roles[i] != Role::Comm && in_any_vr(i) &&
                    comm_eligible(profile, i, thresholds.gamma_comm))
                    pool.push_back(static_cast<int>(i));
            sort_by_margin(pool, m_comm, out.counters);
            for (int i : pool)
            {
                if (count_role(Role::Comm) >= floor_c)
                    break;
                roles[static_cast<std::size_t>(i)] = Role::Comm;
            }
            if (strict && count_role(Role::Comm) < floor_c)
                throw std::runtime_error("enforce_vr_fairness: fairness floor exceeds eligible "
                                         "communication antennas");
        }
        const int floor_s = vrs.size() > 1 ? std::min(s_min, n_sense_cap) : 0;
        if (count_role(Role::Sense) < floor_s)
        {
            std::vector<int> pool;
            for (std::size_t i = 0; i < n; ++i)
                if (roles[i] == Role::Discard && in_any_vr(i) &&
                    sense_eligible(profile, i, thresholds.gamma_radar))
                    pool.push_back(static_cast<int>(i));
            sort_by_margin(pool, m_sense, out.counters);
            for (int i : pool)
            {
                if (count_role(Role::Sense) >= floor_s)
                    break;
                roles[static_cast<std::size_t>(i)] = Role::Sense;
            }
            if (strict && count_role(Role::Sense) < floor_s)
                throw std::runtime_error("enforce_vr_fairness: fairness floor exceeds eligible "
                                         "sensing antennas");
        }

        // caps last: drop the weakest margins
        auto apply_cap = [&](Role role, int cap, const std::vector<double> &margin) {
            std::vector<int> held;
            for (std::size_t i = 0; i < n; ++i)
                if (roles[i] == role)
                    held.push_back(static_cast<int>(i));
            if (static_cast<int>(held.size()) <= cap)
                return;
            sort_by_margin(held, margin, out.counters);
            for (std::size_t k = static_cast<std::size_t>(cap); k < held.size(); ++k)
                roles[static_cast<std::size_t>(held[k])] = Role::Discard;
        };
        apply_cap(Role::Comm, n_comm_cap, m_comm);
        apply_cap(Role::Sense, n_sense_cap, m_sense);

        roles_to_result(roles, out);
        return out;
    }
    }

    double evaluate_se_objective(const std::vector<bool> &comm_mask,
                                 const std::vector<double> &sinr_per_antenna)
    {
        if (comm_mask.size() != sinr_per_antenna.size())
            throw std::invalid_argument("evaluate_se_objective: mask length mismatch");
        double se = 0.0;
        for (std::size_t i = 0; i < comm_mask.size(); ++i)
            if (comm_mask[i])
                se += std::log2(1.0 + sinr_per_antenna[i]);
        return se;
    }

    double evaluate_pd_objective(const std::vector<bool> &sense_mask,
                                 const std::vector<double> &radar_powers, double tau, double sigma_n)
    {
        if (sense_mask.size() != radar_powers.size())
            throw std::invalid_argument("evaluate_pd_objective: mask length mismatch");
        if (sigma_n <= 0.0)
            throw std::invalid_argument("evaluate_pd_objective: sigma_n must be positive");
        double total = 0.0;
        for (std::size_t i = 0; i < sense_mask.size(); ++i)
            if (sense_mask[i])
                total += radar_powers[i];
        const double x = (tau - total) / sigma_n;
        return 0.5 * std::erfc(x / std::sqrt(2.0));
    }

    BruteForceResult brute_force_select(const PowerProfile &profile,
                                        const std::vector<std::vector<bool>> &vrs,
                                        const SelectionThresholds &thresholds, int n_comm_cap,
                                        int n_sense_cap, double noise_variance, double tau,
                                        double sigma_n)
    {
        const int n = profile.size();
        if (n > 14)
            throw std::invalid_argument("brute_force_select: instance too large (n <= 14)");
        if (vrs.empty())
            throw std::invalid_argument("brute_force_select: no visibility regions");

        int s_min = n;
        std::vector<bool> in_union(static_cast<std::size_t>(n), false);
        for (const auto &vr : vrs)
        {
            int sz = 0;
            for (int i = 0; i < n; ++i)
                if (vr[static_cast<std::size_t>(i)])
                {
                    in_union[static_cast<std::size_t>(i)] = true;
                    ++sz;
                }
            s_min = std::min(s_min, sz);
        }

        std::vector<double> sinr(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            sinr[k] = profile.p_h[k] / (profile.px_v_to_h[k] + noise_variance);
        }

        BruteForceResult best;
        best.comm_mask.assign(static_cast<std::size_t>(n), false);
        best.sense_mask.assign(static_cast<std::size_t>(n), false);
        best.se = -1.0;
        best.pd = -1.0;

        const std::uint32_t limit = 1u << n;
        std::vector<bool> mask(static_cast<std::size_t>(n));
        for (std::uint32_t bits = 0; bits < limit; ++bits)
        {
            int count = 0;
            bool ok_union = true;
            for (int i = 0; i < n; ++i)
            {
                const bool sel = (bits >> i) & 1u;
                mask[static_cast<std::size_t>(i)] = sel;
                if (sel)
                {
                    ++count;
                    if (!in_union[static_cast<std::size_t>(i)])
                        ok_union = false;
                }
            }
            if (!ok_union || count < s_min)
                continue;

            // P1: spectral efficiency
            if (count <= n_comm_cap)
            {
                bool ok = true;
                double se = 0.0;
                for (int i = 0; i < n && ok; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    if (!mask[k])
                        continue;
                    if (!comm_eligible(profile, k, thresholds.gamma_comm))
                        ok = false;
                    else
                        se += std::log2(1.0 + sinr[k]);
                }
                if (ok)
                {
                    const bool tie_wins =
                        se == best.se &&
                        std::lexicographical_compare(mask.begin(), mask.end(),
                                                     best.comm_mask.begin(), best.comm_mask.end());
                    if (!best.comm_feasible || se > best.se || tie_wins)
                    {
                        best.comm_mask = mask;
                        best.se = se;
                        best.comm_feasible = true;
                    }
                }
            }

            // P2: detection probability
            if (count <= n_sense_cap)
            {
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    if (mask[k] && !sense_eligible(profile, k, thresholds.gamma_radar))
                        ok = false;
                }
                if (ok)
                {
                    const double pd = evaluate_pd_objective(mask, profile.p_v, tau, sigma_n);
                    const bool tie_wins =
                        pd == best.pd &&
                        std::lexicographical_compare(mask.begin(), mask.end(),
                                                     best.sense_mask.begin(), best.sense_mask.end());
                    if (!best.sense_feasible || pd > best.pd || tie_wins)
                    {
                        best.sense_mask = mask;
                        best.pd = pd;
                        best.sense_feasible = true;
                    }
                }
            }
        }

        if (!best.comm_feasible)
        {
            best.comm_mask.assign(static_cast<std::size_t>(n), false);
            best.se = 0.0;
        }
        if (!best.sense_feasible)
        {
            best.sense_mask.assign(static_cast<std::size_t>(n), false);
            best.pd = 0.0;
        }
        return best;
    }

    SelectionResult baseline_select(BaselineKind kind, const PowerProfile &profile, int k,
                                    RngStream &rng)
    {
        const int n = profile.size();
        if (k < 0 || k > n)
            throw std::invalid_argument("baseline_select: k out of range");

        std::vector<bool> active(static_cast<std::size_t>(n), false);
        switch (kind)
        {
        case BaselineKind::AllOn:
            active.assign(static_cast<std::size_t>(n), true);
            break;
        case BaselineKind::RandomK:
        {
            std::vector<int> idx(static_cast<std::size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = 0; i < k; ++i)
            {
                const auto j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
                std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
                active[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = true;
            }
            break;
        }
        case BaselineKind::TopPowerK:
        {
            std::vector<int> idx(static_cast<std::size_t>(n));
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                const double pa = profile.p_h[static_cast<std::size_t>(a)] +
                                  profile.p_v[static_cast<std::size_t>(a)];
                const double pb = profile.p_h[static_cast<std::size_t>(b)] +
                                  profile.p_v[static_cast<std::size_t>(b)];
                if (pa != pb)
                    return pa > pb;
                return a < b;
            });
            for (int i = 0; i < k; ++i)
                active[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = true;
            break;
        }
        }

        SelectionResult res;
        res.comm_mask.assign(static_cast<std::size_t>(n), false);
        res.sense_mask.assign(static_cast<std::size_t>(n), false);
        res.discarded.assign(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i)
        {
            const std::size_t j = static_cast<std::size_t>(i);
            if (!active[j])
            {
                res.discarded[j] = true;
                continue;
            }
            if (profile.p_h[j] >= profile.p_v[j])
                res.comm_mask[j] = true;
            else
                res.sense_mask[j] = true;
        }
        return res;
    }

    double complexity_counts(int n, int k, int l, ComplexityScheme scheme)
    {
        if (n < 1 || k < 1 || l < 1)
            throw std::invalid_argument("complexity_counts: arguments must be positive");
        const double nn = n, kk = k, ll = l;
        const double iterations = 50.0, population = 30.0;
        switch (scheme)
        {
        case ComplexityScheme::Proposed:
            return kk * ll * nn * std::log2(nn);
        case ComplexityScheme::Hrnp:
            return nn * kk + nn * std::log2(nn);
        case ComplexityScheme::Ls:
            return iterations * nn * kk * kk;
        case ComplexityScheme::Ga:
            return iterations * population * nn * kk * kk;
        case ComplexityScheme::Pso:
            return iterations * population * nn * kk * kk;
        }
        return 0.0;
    }
}
