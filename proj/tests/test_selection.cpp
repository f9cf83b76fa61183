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

#include <doctest.h>

#include <cmath>

#include "core/metrics.hpp"
#include "core/selection.hpp"
#include "support/oracles.hpp"

using namespace xljrc;
using xljrc_test::greedy_reference;

namespace
{
    PowerProfile random_profile(int n, RngStream &rng, double leak_scale = 0.4)
    {
        PowerProfile p;
        p.p_h.resize(static_cast<std::size_t>(n));
        p.p_v.resize(static_cast<std::size_t>(n));
        p.px_h_to_v.resize(static_cast<std::size_t>(n));
        p.px_v_to_h.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            p.p_h[k] = rng.uniform();
            p.p_v[k] = rng.uniform();
            p.px_h_to_v[k] = leak_scale * rng.uniform();
            p.px_v_to_h[k] = leak_scale * rng.uniform();
        }
        return p;
    }
}

TEST_CASE("power profile separates the four components")
{
    // hand-built 2-antenna channel with unit streams
    ChannelMatrix h = ChannelMatrix::zeros(2);
    h.block(0) = {cdouble(2, 0), cdouble(0.5, 0), cdouble(0.1, 0), cdouble(3, 0)};
    h.block(1) = {cdouble(0, 1), cdouble(0, 0), cdouble(0, 0), cdouble(1, 1)};
    SopSignal sig;
    sig.delta = PI / 4;
    sig.theta = 0.0;
    sig.h_stream.assign(64, cdouble(1.0, 0.0) / std::sqrt(2.0));
    sig.v_stream.assign(64, cdouble(1.0, 0.0) / std::sqrt(2.0));

    const auto p = power_profile(h, sig);
    CHECK(p.p_v[0] == doctest::Approx(4.0 * 0.5).epsilon(1e-12));
    CHECK(p.px_h_to_v[0] == doctest::Approx(0.25 * 0.5).epsilon(1e-12));
    CHECK(p.px_v_to_h[0] == doctest::Approx(0.01 * 0.5).epsilon(1e-12));
    CHECK(p.p_h[0] == doctest::Approx(9.0 * 0.5).epsilon(1e-12));
    // block-diagonal antenna has zero cross power
    CHECK(p.px_h_to_v[1] == 0.0);
    CHECK(p.px_v_to_h[1] == 0.0);

    SopSignal empty;
    CHECK_THROWS_AS(power_profile(h, empty), std::invalid_argument);
}

TEST_CASE("imbalance factor")
{
    PowerProfile p;
    p.p_h = {1.0, 2.0, 0.5};
    p.p_v = {1.0, 1.0, 0.0};
    p.px_h_to_v = {0, 0, 0};
    p.px_v_to_h = {0, 0, 0};
    const auto g = imbalance_factor(p);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == 2.0);
    CHECK(std::isinf(g[2]));
}

TEST_CASE("greedy assigns all antennas to communication when H dominates")
{
    PowerProfile p;
    const int n = 10;
    p.p_h.assign(n, 5.0);
    p.p_v.assign(n, 0.01);
    p.px_h_to_v.assign(n, 0.05);
    p.px_v_to_h.assign(n, 0.1);
    const auto sel = greedy_select(p, 1e-6, SelectionThresholds{});
    CHECK(sel.n_comm() == n);
    CHECK(sel.n_sense() == 0);
}

TEST_CASE("spatial-consistency smoothing copies the previous assignment")
{
    // antenna 4 (0-based 3) is sensing; antenna 5 has nearly equal powers and
    // would otherwise go to communication
    PowerProfile p;
    p.p_h = {1.0, 1.0, 1.0, 0.0, 1.0};
    p.p_v = {0.0, 0.0, 0.0, 1.0, 1.0 + 1e-7};
    p.px_h_to_v.assign(5, 0.0);
    p.px_v_to_h = {0.0, 0.0, 0.0, 0.5, 0.0};
    const auto sel = greedy_select(p, 1e-3, SelectionThresholds{});
    CHECK(sel.sense_mask[3]);
    CHECK(sel.sense_mask[4]); // smoothed onto the previous antenna's role
    CHECK_FALSE(sel.comm_mask[4]);
}

TEST_CASE("greedy matches the straight-line reference on random profiles")
{
    RngStream rng(31, 0);
    const SelectionThresholds thr{0.5, 2.0};
    for (int rep = 0; rep < 300; ++rep)
    {
        const auto p = random_profile(12, rng, 1.2);
        const double eps = rep % 3 == 0 ? 0.0 : 0.05;
        const auto sel = greedy_select(p, eps, thr);
        std::vector<int> roles;
        greedy_reference(p, eps, thr.gamma_comm, thr.gamma_radar, roles);
        for (int i = 0; i < 12; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            CHECK(sel.comm_mask[k] == (roles[k] == 1));
            CHECK(sel.sense_mask[k] == (roles[k] == 2));
            CHECK(sel.discarded[k] == (roles[k] == 0));
        }
    }
}

TEST_CASE("role exclusivity and threshold soundness hold on random profiles")
{
    RngStream rng(32, 0);
    const SelectionThresholds thr{0.5, 2.0};
    for (int rep = 0; rep < 100; ++rep)
    {
        const auto p = random_profile(24, rng, 1.5);
        const auto sel = greedy_select(p, 0.02, thr);
        for (int i = 0; i < 24; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            const bool both = sel.comm_mask[k] && sel.sense_mask[k];
            CHECK_FALSE(both);
            if (sel.comm_mask[k])
                CHECK(p.px_v_to_h[k] / p.p_h[k] <= thr.gamma_comm);
            if (sel.sense_mask[k])
                CHECK(p.p_v[k] / p.px_h_to_v[k] >= thr.gamma_radar);
        }
    }
}

TEST_CASE("greedy is covariant under index permutation when smoothing is off")
{
    RngStream rng(33, 0);
    const auto p = random_profile(16, rng);
    const auto sel = greedy_select(p, 0.0, SelectionThresholds{});

    // reverse the antenna order
    PowerProfile q = p;
    std::reverse(q.p_h.begin(), q.p_h.end());
    std::reverse(q.p_v.begin(), q.p_v.end());
    std::reverse(q.px_h_to_v.begin(), q.px_h_to_v.end());
    std::reverse(q.px_v_to_h.begin(), q.px_v_to_h.end());
    const auto sel_r = greedy_select(q, 0.0, SelectionThresholds{});
    for (int i = 0; i < 16; ++i)
        CHECK(sel.comm_mask[static_cast<std::size_t>(i)] ==
              sel_r.comm_mask[static_cast<std::size_t>(15 - i)]);
}

TEST_CASE("fairness quota: single region splits half/half")
{
    RngStream rng(34, 0);
    PowerProfile p = random_profile(10, rng, 0.1);
    // make every antenna communication-heavy and eligible
    for (int i = 0; i < 10; ++i)
    {
        p.p_h[static_cast<std::size_t>(i)] = 1.0 + i * 0.1;
        p.px_v_to_h[static_cast<std::size_t>(i)] = 0.01;
        p.p_v[static_cast<std::size_t>(i)] = 0.5;
        p.px_h_to_v[static_cast<std::size_t>(i)] = 0.01;
    }
    const auto sel = greedy_select(p, 0.0, SelectionThresholds{});
    CHECK(sel.n_comm() == 10);

    std::vector<std::vector<bool>> vrs = {std::vector<bool>(10, true)};
    const auto fair = enforce_vr_fairness(sel, p, vrs, SelectionMode::Fairness, 0.5,
                                          SelectionThresholds{}, 10, 10);
    CHECK(fair.n_comm() == 5);
    CHECK(fair.n_sense() == 5); // remainder is sensing-eligible here

    const auto adaptive = enforce_vr_fairness(sel, p, vrs, SelectionMode::Adaptive, 0.7,
                                              SelectionThresholds{}, 10, 10);
    CHECK(adaptive.n_comm() == 7);
}

TEST_CASE("fairness keeps the strongest communication margins")
{
    PowerProfile p;
    p.p_h = {10.0, 1.0, 9.0, 2.0, 8.0, 3.0};
    p.p_v = {0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
    p.px_h_to_v.assign(6, 0.01);
    p.px_v_to_h.assign(6, 0.0);
    const auto sel = greedy_select(p, 0.0, SelectionThresholds{});
    CHECK(sel.n_comm() == 6);
    std::vector<std::vector<bool>> vrs = {std::vector<bool>(6, true)};
    const auto fair = enforce_vr_fairness(sel, p, vrs, SelectionMode::Fairness, 0.5,
                                          SelectionThresholds{}, 6, 6);
    CHECK(fair.n_comm() == 3);
    CHECK(fair.comm_mask[0]);
    CHECK(fair.comm_mask[2]);
    CHECK(fair.comm_mask[4]);
}

TEST_CASE("multi-region fairness reaches the union floors when feasible")
{
    RngStream rng(35, 0);
    int feasible_checked = 0;
    for (int rep = 0; rep < 60; ++rep)
    {
        const int n = 12;
        auto p = random_profile(n, rng, 0.2);
        std::vector<std::vector<bool>> vrs(2, std::vector<bool>(n, false));
        for (int i = 0; i < 4; ++i)
            vrs[0][static_cast<std::size_t>(i)] = true; // |V1| = 4
        for (int i = 4; i < 12; ++i)
            vrs[1][static_cast<std::size_t>(i)] = true; // |V2| = 8

        const auto sel = greedy_select(p, 0.0, SelectionThresholds{});
        try
        {
            const auto fair = enforce_vr_fairness(sel, p, vrs, SelectionMode::Fairness, 0.5,
                                                  SelectionThresholds{}, n, n);
            CHECK(fair.n_comm() >= 4);
            CHECK(fair.n_sense() >= 4);
            for (int i = 0; i < n; ++i)
            {
                const bool both = fair.comm_mask[static_cast<std::size_t>(i)] &&
                                  fair.sense_mask[static_cast<std::size_t>(i)];
                CHECK_FALSE(both);
            }
            ++feasible_checked;
        }
        catch (const std::runtime_error &)
        {
            // genuinely infeasible draws are allowed; the feasible ones must
            // satisfy the floors
        }
    }
    CHECK(feasible_checked > 30);
}

TEST_CASE("fairness caps are enforced last")
{
    RngStream rng(36, 0);
    PowerProfile p = random_profile(8, rng, 0.05);
    for (auto &v : p.p_h)
        v += 1.0; // all communication eligible
    const auto sel = greedy_select(p, 0.0, SelectionThresholds{});
    std::vector<std::vector<bool>> vrs = {std::vector<bool>(8, true)};
    const auto fair = enforce_vr_fairness(sel, p, vrs, SelectionMode::Fairness, 0.5,
                                          SelectionThresholds{}, 2, 8);
    CHECK(fair.n_comm() <= 2);
}

TEST_CASE("fairness raises when the quota exceeds the eligible antennas")
{
    PowerProfile p;
    p.p_h.assign(6, 1.0);
    p.p_v.assign(6, 0.5);
    p.px_h_to_v.assign(6, 0.01);
    p.px_v_to_h.assign(6, 0.9); // ratio 0.9 > gamma_comm = 0.5 everywhere
    const auto sel = greedy_select(p, 0.0, SelectionThresholds{});
    std::vector<std::vector<bool>> vrs = {std::vector<bool>(6, true)};
    CHECK_THROWS_AS(enforce_vr_fairness(sel, p, vrs, SelectionMode::Fairness, 0.5,
                                        SelectionThresholds{}, 6, 6),
                    std::runtime_error);
}

TEST_CASE("objective evaluators")
{
    CHECK(evaluate_se_objective({false, false}, {1.0, 2.0}) == 0.0);
    CHECK(evaluate_se_objective({true}, {1.0}) == doctest::Approx(1.0)); // log2(2)
    RngStream rng(37, 0);
    std::vector<bool> mask(20);
    std::vector<double> sinr(20);
    for (int i = 0; i < 20; ++i)
    {
        mask[static_cast<std::size_t>(i)] = rng.bernoulli(0.5);
        sinr[static_cast<std::size_t>(i)] = rng.uniform(0.0, 50.0);
    }
    double expect = 0.0;
    for (int i = 0; i < 20; ++i)
        if (mask[static_cast<std::size_t>(i)])
            expect += std::log2(1.0 + sinr[static_cast<std::size_t>(i)]);
    CHECK(evaluate_se_objective(mask, sinr) == doctest::Approx(expect).epsilon(1e-12));

    // Gaussian tail objective
    CHECK(evaluate_pd_objective({true}, {3.0}, 3.0, 1.0) == doctest::Approx(0.5));
    CHECK(evaluate_pd_objective({true}, {100.0}, 3.0, 1.0) == doctest::Approx(1.0));
    // erfc-based reference
    const double tau = 2.0, sigma = 0.7, total = 1.1;
    const double expect_pd = 0.5 * std::erfc((tau - total) / sigma / std::sqrt(2.0));
    CHECK(evaluate_pd_objective({true, true}, {0.6, 0.5}, tau, sigma) ==
          doctest::Approx(expect_pd).epsilon(1e-12));
    CHECK_THROWS_AS(evaluate_pd_objective({true}, {1.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("brute force on degenerate and infeasible instances")
{
    PowerProfile p;
    p.p_h = {1.0};
    p.p_v = {1.0};
    p.px_h_to_v = {0.01};
    p.px_v_to_h = {0.01};
    std::vector<std::vector<bool>> vrs = {{true}};
    auto res = brute_force_select(p, vrs, SelectionThresholds{}, 1, 1, 0.1, 0.5, 1.0);
    CHECK(res.comm_feasible);
    CHECK(res.comm_mask[0]);
    CHECK(res.sense_feasible);
    CHECK(res.sense_mask[0]);

    // infeasible: leakage ratio above gamma everywhere
    p.px_v_to_h = {2.0};
    p.px_h_to_v = {2.0};
    res = brute_force_select(p, vrs, SelectionThresholds{}, 1, 1, 0.1, 0.5, 1.0);
    CHECK_FALSE(res.comm_feasible);
    CHECK_FALSE(res.sense_feasible);
    CHECK(res.comm_mask == std::vector<bool>{false});

    // instance too large
    PowerProfile big;
    big.p_h.assign(15, 1.0);
    big.p_v.assign(15, 1.0);
    big.px_h_to_v.assign(15, 0.0);
    big.px_v_to_h.assign(15, 0.0);
    CHECK_THROWS_AS(brute_force_select(big, {std::vector<bool>(15, true)}, SelectionThresholds{},
                                       15, 15, 0.1, 0.5, 1.0),
                    std::invalid_argument);
}

TEST_CASE("brute force upper-bounds the greedy objective")
{
    RngStream rng(38, 0);
    const double noise = 0.05;
    for (int rep = 0; rep < 50; ++rep)
    {
        const int n = 8;
        const auto p = random_profile(n, rng, 0.6);
        std::vector<std::vector<bool>> vrs = {std::vector<bool>(n, true)};
        const SelectionThresholds thr{0.5, 2.0};

        const auto brute = brute_force_select(p, vrs, thr, 4, 4, noise, 0.5, 0.2);
        if (!brute.comm_feasible)
            continue;

        auto greedy = greedy_select(p, 0.0, thr);
        SelectionResult fair;
        try
        {
            fair = enforce_vr_fairness(greedy, p, vrs, SelectionMode::Fairness, 0.5, thr, 4, 4);
        }
        catch (const std::runtime_error &)
        {
            continue;
        }
        std::vector<double> sinr(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            sinr[static_cast<std::size_t>(i)] =
                p.p_h[static_cast<std::size_t>(i)] /
                (p.px_v_to_h[static_cast<std::size_t>(i)] + noise);
        const double greedy_se = evaluate_se_objective(fair.comm_mask, sinr);
        CHECK(brute.se >= greedy_se - 1e-9);
    }
}

TEST_CASE("baseline selectors")
{
    RngStream rng(39, 0);
    const auto p = random_profile(12, rng);

    RngStream ra(40, 0);
    const auto all = baseline_select(BaselineKind::AllOn, p, 12, ra);
    CHECK(all.n_comm() + all.n_sense() == 12);
    for (int i = 0; i < 12; ++i)
    {
        const std::size_t k = static_cast<std::size_t>(i);
        if (p.p_h[k] >= p.p_v[k])
            CHECK(all.comm_mask[k]);
        else
            CHECK(all.sense_mask[k]);
    }

    RngStream rb(41, 5), rc(41, 5);
    const auto r1 = baseline_select(BaselineKind::RandomK, p, 6, rb);
    const auto r2 = baseline_select(BaselineKind::RandomK, p, 6, rc);
    CHECK(r1.comm_mask == r2.comm_mask);
    CHECK(r1.sense_mask == r2.sense_mask);
    CHECK(r1.n_comm() + r1.n_sense() == 6);

    RngStream rd(42, 0);
    const auto top = baseline_select(BaselineKind::TopPowerK, p, 4, rd);
    // independent sort-and-take oracle
    std::vector<int> idx(12);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double pa = p.p_h[static_cast<std::size_t>(a)] + p.p_v[static_cast<std::size_t>(a)];
        const double pb = p.p_h[static_cast<std::size_t>(b)] + p.p_v[static_cast<std::size_t>(b)];
        return pa != pb ? pa > pb : a < b;
    });
    for (int i = 0; i < 12; ++i)
    {
        const bool should = std::find(idx.begin(), idx.begin() + 4, i) != idx.begin() + 4;
        const std::size_t k = static_cast<std::size_t>(i);
        CHECK((top.comm_mask[k] || top.sense_mask[k]) == should);
    }

    RngStream re(43, 0);
    CHECK_THROWS_AS(baseline_select(BaselineKind::RandomK, p, 13, re), std::invalid_argument);
}

TEST_CASE("analytic complexity models")
{
    // proposed: count(2N)/count(N) = 2 log2(2N)/log2(N)
    for (int n : {64, 256, 1024})
    {
        const double ratio = complexity_counts(2 * n, 1, 1, ComplexityScheme::Proposed) /
                             complexity_counts(n, 1, 1, ComplexityScheme::Proposed);
        const double expect = 2.0 * std::log2(2.0 * n) / std::log2(static_cast<double>(n));
        CHECK(ratio == doctest::Approx(expect).epsilon(1e-12));
    }

    // GA grows quadratically in K, proposed linearly
    for (int k : {2, 4, 8})
    {
        const double ga_ratio = complexity_counts(256, k, 1, ComplexityScheme::Ga) /
                                complexity_counts(256, 1, 1, ComplexityScheme::Ga);
        const double prop_ratio = complexity_counts(256, k, 1, ComplexityScheme::Proposed) /
                                  complexity_counts(256, 1, 1, ComplexityScheme::Proposed);
        CHECK(ga_ratio == doctest::Approx(static_cast<double>(k) * k));
        CHECK(prop_ratio == doctest::Approx(static_cast<double>(k)));
    }

    CHECK_THROWS_AS(complexity_counts(0, 1, 1, ComplexityScheme::Proposed), std::invalid_argument);
}

TEST_CASE("greedy SE objective is monotone under antenna addition")
{
    RngStream rng(44, 0);
    for (int rep = 0; rep < 40; ++rep)
    {
        std::vector<double> sinr(16);
        std::vector<bool> mask(16, false);
        for (int i = 0; i < 16; ++i)
        {
            sinr[static_cast<std::size_t>(i)] = rng.uniform(0.0, 30.0);
            mask[static_cast<std::size_t>(i)] = rng.bernoulli(0.4);
        }
        const double before = evaluate_se_objective(mask, sinr);
        // add one antenna not yet selected
        for (int i = 0; i < 16; ++i)
            if (!mask[static_cast<std::size_t>(i)])
            {
                auto grown = mask;
                grown[static_cast<std::size_t>(i)] = true;
                CHECK(evaluate_se_objective(grown, sinr) >= before);
                break;
            }
    }
}
