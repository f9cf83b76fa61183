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

#include "core/waveforms.hpp"

using namespace xljrc;

namespace
{
    std::vector<cdouble> ones(std::size_t n) { return std::vector<cdouble>(n, cdouble{1.0, 0.0}); }
}

TEST_CASE("SOP weights split the transmit power")
{
    auto s = make_sop(0.0, 0.0, ones(4), ones(4));
    CHECK(s.h_stream[0] == cdouble(1.0, 0.0));
    CHECK(std::abs(s.v_stream[0]) == doctest::Approx(0.0));

    s = make_sop(PI / 2, 0.3, ones(4), ones(4));
    CHECK(std::abs(s.h_stream[0]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(s.v_stream[0]) == doctest::Approx(1.0));

    s = make_sop(PI / 4, 0.0, ones(4), ones(4));
    CHECK(std::abs(s.h_stream[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s.v_stream[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));

    // |w_H|^2 + |w_V|^2 = 1 for any delta
    for (double delta : {0.1, 0.5, 1.2})
    {
        s = make_sop(delta, 1.0, ones(1), ones(1));
        CHECK(std::norm(s.h_weight()) + std::norm(s.v_weight()) == doctest::Approx(1.0));
    }

    CHECK_THROWS_AS(make_sop(-0.1, 0.0, ones(1), ones(1)), std::domain_error);
    CHECK_THROWS_AS(make_sop(1.8, 0.0, ones(1), ones(1)), std::domain_error);
}

TEST_CASE("all-zero QPSK bits map to a constant constellation point")
{
    OfdmParams params;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(2 * params.n_subcarriers), 0);
    const auto frame = ofdm_modulate(bits, params);
    const cdouble expect = map_symbol(Constellation::Qpsk, bits.data());
    for (const auto &s : frame.symbols)
        CHECK(std::abs(s - expect) < 1e-15);
}

TEST_CASE("OFDM loopback recovers the payload exactly")
{
    OfdmParams params;
    RngStream rng(5, 0);
    for (Constellation c : {Constellation::Qpsk, Constellation::Qam16})
    {
        params.constellation = c;
        const auto frame = ofdm_random_frame(params, 6, rng);
        const auto res = ofdm_demodulate(frame.stream, cdouble{1.0, 0.0}, frame);
        CHECK(res.symbol_errors == 0);
        CHECK(res.bits == frame.bits);
    }
}

TEST_CASE("OFDM stream has unit average power")
{
    OfdmParams params;
    RngStream rng(6, 0);
    const auto frame = ofdm_random_frame(params, 200, rng); // 16000 samples
    double p = 0.0;
    for (const auto &x : frame.stream)
        p += std::norm(x);
    p /= static_cast<double>(frame.stream.size());
    CHECK(p == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("OFDM bit-count mismatch raises")
{
    OfdmParams params;
    CHECK_THROWS_AS(ofdm_modulate(std::vector<std::uint8_t>(7, 0), params), std::invalid_argument);
    CHECK_THROWS_AS(ofdm_modulate({}, params), std::invalid_argument);
}

TEST_CASE("chirp envelope, Nyquist check and degenerate bandwidth")
{
    const auto c = chirp_generate(100e6, 10e-6, 200e6);
    CHECK(c.samples.size() == 2000);
    for (const auto &s : c.samples)
        CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-9));

    const auto tone = chirp_generate(0.0, 1e-6, 10e6);
    for (const auto &s : tone.samples)
        CHECK(std::abs(s - cdouble(1.0, 0.0)) < 1e-12);

    CHECK_THROWS_AS(chirp_generate(100e6, 10e-6, 150e6), std::invalid_argument);
}

TEST_CASE("chirp instantaneous frequency sweeps -B/2 .. B/2")
{
    const double bw = 50e6, dur = 20e-6, fs = 100e6;
    const auto c = chirp_generate(bw, dur, fs);
    const std::size_t n = c.samples.size();
    // discrete phase difference -> instantaneous frequency
    auto freq_at = [&](std::size_t i) {
        const double dphi = std::arg(c.samples[i + 1] * std::conj(c.samples[i]));
        return dphi * fs / TWO_PI;
    };
    CHECK(freq_at(0) == doctest::Approx(-bw / 2).epsilon(0.01));
    CHECK(freq_at(n - 2) == doctest::Approx(bw / 2).epsilon(0.01));
    CHECK(freq_at(n / 2) == doctest::Approx(0.0).epsilon(1e-3 * bw));
    // linearity: second difference of frequency is constant
    const double f0 = freq_at(100), f1 = freq_at(200), f2 = freq_at(300);
    CHECK(f2 - f1 == doctest::Approx(f1 - f0).epsilon(1e-6));
}

TEST_CASE("chirp matched filter peak-to-sidelobe exceeds 13 dB")
{
    // BT = 128
    const auto c = chirp_generate(64e6, 2e-6, 128e6);
    const std::size_t n = c.samples.size();
    // full linear autocorrelation
    double peak = 0.0, sidelobe = 0.0;
    for (std::size_t lag = 0; lag < n; ++lag)
    {
        cdouble acc{0.0, 0.0};
        for (std::size_t t = lag; t < n; ++t)
            acc += c.samples[t] * std::conj(c.samples[t - lag]);
        const double mag = std::abs(acc);
        if (lag == 0)
            peak = mag;
        else if (lag > 2) // outside the mainlobe
            sidelobe = std::max(sidelobe, mag);
    }
    CHECK(20.0 * std::log10(peak / sidelobe) > 13.0);
}

TEST_CASE("receive model mixes branches per block entries")
{
    ChannelMatrix h = ChannelMatrix::zeros(2);
    h.block(0) = {cdouble(2, 0), cdouble(0, 0), cdouble(0, 0), cdouble(3, 0)};  // block-diagonal
    h.block(1) = {cdouble(0, 0), cdouble(5, 0), cdouble(7, 0), cdouble(0, 0)};  // anti-diagonal

    std::vector<cdouble> hs = {cdouble(1, 0), cdouble(0, 1)};
    std::vector<cdouble> vs = {cdouble(-1, 0), cdouble(0.5, 0.5)};
    SopSignal sig;
    sig.delta = PI / 4;
    sig.h_stream = hs;
    sig.v_stream = vs;

    RngStream rng(9, 0);
    const auto bundle = transmit_receive(h, sig, 0.0, rng);
    // antenna 0: y_v = 2 v, y_h = 3 h (no leakage, no noise)
    CHECK(bundle.v_row(0)[0] == cdouble(-2, 0));
    CHECK(bundle.h_row(0)[1] == cdouble(0, 3));
    // antenna 1: full swap
    CHECK(bundle.v_row(1)[0] == 5.0 * hs[0]);
    CHECK(bundle.h_row(1)[0] == 7.0 * vs[0]);
}

TEST_CASE("receive model: zero channel leaves calibrated noise")
{
    ChannelMatrix h = ChannelMatrix::zeros(4);
    SopSignal sig;
    sig.h_stream = ones(25000);
    sig.v_stream = ones(25000);
    RngStream rng(10, 0);
    const auto bundle = transmit_receive(h, sig, 0.7, rng);
    double p = 0.0;
    for (const auto &x : bundle.y_v)
        p += std::norm(x);
    for (const auto &x : bundle.y_h)
        p += std::norm(x);
    p /= static_cast<double>(bundle.y_v.size() + bundle.y_h.size());
    CHECK(p == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("receive model is linear and reproducible")
{
    ChannelMatrix h = ChannelMatrix::zeros(1);
    h.block(0) = {cdouble(1, 2), cdouble(0.3, 0), cdouble(0, -1), cdouble(2, 0.5)};
    SopSignal sig;
    sig.h_stream = {cdouble(0.2, 0.1), cdouble(-1, 0)};
    sig.v_stream = {cdouble(0.5, 0), cdouble(0, 0.7)};

    SopSignal scaled = sig;
    for (auto &x : scaled.h_stream)
        x *= 3.0;
    for (auto &x : scaled.v_stream)
        x *= 3.0;

    RngStream rng(11, 0);
    const auto b1 = transmit_receive(h, sig, 0.0, rng);
    const auto b2 = transmit_receive(h, scaled, 0.0, rng);
    for (std::size_t t = 0; t < 2; ++t)
    {
        CHECK(std::abs(b2.y_v[t] - 3.0 * b1.y_v[t]) < 1e-14);
        CHECK(std::abs(b2.y_h[t] - 3.0 * b1.y_h[t]) < 1e-14);
    }

    RngStream ra(12, 4), rb(12, 4);
    const auto n1 = transmit_receive(h, sig, 0.4, ra);
    const auto n2 = transmit_receive(h, sig, 0.4, rb);
    CHECK(n1.y_v == n2.y_v);
    CHECK(n1.y_h == n2.y_h);
}

TEST_CASE("mitigation removes, keeps or attenuates the cross terms")
{
    ChannelMatrix h = ChannelMatrix::zeros(2);
    h.block(0) = {cdouble(1, 0), cdouble(0.8, -0.1), cdouble(0.5, 0.2), cdouble(1, 0)};
    h.block(1) = {cdouble(0.3, 0), cdouble(-0.4, 0), cdouble(0.9, 0), cdouble(0.1, 0)};
    SopSignal sig;
    RngStream rng(13, 0);
    sig.h_stream = {cdouble(1, 0), cdouble(0, 1), cdouble(-0.5, 0.5)};
    sig.v_stream = {cdouble(0.7, 0), cdouble(0.2, -0.2), cdouble(0, -1)};

    const auto bundle = transmit_receive(h, sig, 0.05, rng);

    // residual = 1: identity
    const auto same = mitigate_depolarization(bundle, h, sig, 1.0);
    CHECK(same.y_v == bundle.y_v);
    CHECK(same.y_h == bundle.y_h);

    // residual = 0: exactly the co-pol part plus the original noise
    const auto clean = mitigate_depolarization(bundle, h, sig, 0.0);
    for (int n = 0; n < 2; ++n)
        for (std::size_t t = 0; t < 3; ++t)
        {
            const cdouble expect_v = bundle.v_row(n)[t] - h.block(n).b * sig.h_stream[t];
            const cdouble expect_h = bundle.h_row(n)[t] - h.block(n).c * sig.v_stream[t];
            CHECK(std::abs(clean.v_row(n)[t] - expect_v) < 1e-15);
            CHECK(std::abs(clean.h_row(n)[t] - expect_h) < 1e-15);
        }

    CHECK_THROWS_AS(mitigate_depolarization(bundle, h, sig, 1.5), std::domain_error);
}

TEST_CASE("residual of 0.1 attenuates cross-term power by 20 dB")
{
    // pure cross channel isolates the leakage term
    ChannelMatrix h = ChannelMatrix::zeros(1);
    h.block(0) = {cdouble(0, 0), cdouble(1, 0), cdouble(1, 0), cdouble(0, 0)};
    SopSignal sig;
    RngStream rng(14, 0);
    sig.h_stream.resize(4096);
    sig.v_stream.resize(4096);
    for (std::size_t t = 0; t < 4096; ++t)
    {
        sig.h_stream[t] = rng.cgaussian(1.0);
        sig.v_stream[t] = rng.cgaussian(1.0);
    }
    const auto bundle = transmit_receive(h, sig, 0.0, rng);
    const auto soft = mitigate_depolarization(bundle, h, sig, 0.1);
    double before = 0.0, after = 0.0;
    for (std::size_t t = 0; t < 4096; ++t)
    {
        before += std::norm(bundle.y_v[t]);
        after += std::norm(soft.y_v[t]);
    }
    const double drop_db = 10.0 * std::log10(before / after);
    CHECK(drop_db == doctest::Approx(20.0).epsilon(0.025));
}

TEST_CASE("mitigated power is zero cross-term energy at residual 0")
{
    ChannelMatrix h = ChannelMatrix::zeros(1);
    h.block(0) = {cdouble(1, 0), cdouble(0.6, 0.2), cdouble(-0.3, 0.4), cdouble(1, 0)};
    SopSignal sig;
    RngStream rng(15, 0);
    sig.h_stream.resize(256);
    sig.v_stream.resize(256);
    for (std::size_t t = 0; t < 256; ++t)
    {
        sig.h_stream[t] = rng.cgaussian(1.0);
        sig.v_stream[t] = rng.cgaussian(1.0);
    }
    const auto bundle = transmit_receive(h, sig, 0.0, rng);
    const auto clean = mitigate_depolarization(bundle, h, sig, 0.0);
    double residual_energy = 0.0, reference = 0.0;
    for (std::size_t t = 0; t < 256; ++t)
    {
        residual_energy += std::norm(clean.y_v[t] - h.block(0).a * sig.v_stream[t]);
        reference += std::norm(clean.y_v[t]);
    }
    CHECK(residual_energy <= 1e-20 * reference);
}

TEST_CASE("MRC combining and demodulation over a clean multi-antenna channel")
{
    OfdmParams params;
    RngStream rng(16, 0);
    const auto frame = ofdm_random_frame(params, 4, rng);
    SopSignal sig = make_sop(0.0, 0.0, frame.stream, ones(frame.stream.size()));

    ChannelMatrix h = ChannelMatrix::zeros(3);
    h.block(0) = {cdouble(1, 0), {}, {}, cdouble(0.9, 0.3)};
    h.block(1) = {cdouble(1, 0), {}, {}, cdouble(-0.2, 0.8)};
    h.block(2) = {cdouble(1, 0), {}, {}, cdouble(0.1, -0.1)};

    const auto bundle = transmit_receive(h, sig, 0.0, rng);
    std::vector<cdouble> coeffs = {h.block(0).d, h.block(1).d, h.block(2).d};
    std::vector<bool> mask = {true, true, true};
    const auto comb = mrc_combine(bundle.y_h, 3, bundle.n_samples, coeffs, mask);
    const auto res = ofdm_demodulate(comb.stream, comb.gain * sig.h_weight(), frame);
    CHECK(res.symbol_errors == 0);

    // selecting only zero-channel antennas must be flagged
    std::vector<cdouble> zero_coeffs = {cdouble{}, cdouble{}, cdouble{}};
    const auto zero_comb = mrc_combine(bundle.y_h, 3, bundle.n_samples, zero_coeffs, mask);
    CHECK_THROWS_AS(ofdm_demodulate(zero_comb.stream, zero_comb.gain, frame),
                    std::invalid_argument);
}

TEST_CASE("delay-Doppler map localizes synthetic targets")
{
    const auto chirp = chirp_generate(8e6, 32e-6, 16e6); // 512 samples
    const int pulses = 8;
    const std::size_t p = chirp.samples.size();

    auto target_stream = [&](std::size_t delay, double a, int doppler_bin) {
        std::vector<cdouble> z(p * pulses);
        for (int r = 0; r < pulses; ++r)
            for (std::size_t t = 0; t < p; ++t)
            {
                const std::size_t idx = (t + p - delay % p) % p;
                const double ang = TWO_PI * doppler_bin * r / static_cast<double>(pulses);
                z[static_cast<std::size_t>(r) * p + t] += a * chirp.samples[idx] * std::polar(1.0, ang);
            }
        return z;
    };

    SUBCASE("single static target peaks at (delay, 0)")
    {
        const auto z = target_stream(40, 1.0, 0);
        const auto map = delay_doppler_map(z, chirp, pulses);
        int best_r = -1, best_d = -1;
        double best = -1.0;
        for (int d = 0; d < map.n_doppler; ++d)
            for (int r = 0; r < map.n_range; ++r)
                if (map.at(d, r) > best)
                {
                    best = map.at(d, r);
                    best_d = d;
                    best_r = r;
                }
        CHECK(best_r == 40);
        CHECK(best_d == 0);
    }

    SUBCASE("moving target lands in its Doppler bin")
    {
        const auto z = target_stream(100, 1.0, 3);
        const auto map = delay_doppler_map(z, chirp, pulses);
        int best_r = -1, best_d = -1;
        double best = -1.0;
        for (int d = 0; d < map.n_doppler; ++d)
            for (int r = 0; r < map.n_range; ++r)
                if (map.at(d, r) > best)
                {
                    best = map.at(d, r);
                    best_d = d;
                    best_r = r;
                }
        CHECK(best_r == 100);
        CHECK(best_d == 3);
    }

    SUBCASE("two separated targets give two local maxima")
    {
        auto z = target_stream(60, 1.0, 0);
        const auto z2 = target_stream(200, 0.8, 0);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] += z2[i];
        const auto map = delay_doppler_map(z, chirp, pulses);
        CHECK(map.at(0, 60) > 0.5 * map.at(0, 200));
        const double floor_between = map.at(0, 130);
        CHECK(map.at(0, 60) > 10.0 * floor_between);
        CHECK(map.at(0, 200) > 10.0 * floor_between);
    }

    SUBCASE("peak location is invariant to a constant phase offset")
    {
        auto z = target_stream(77, 1.0, 0);
        auto z_rot = z;
        for (auto &x : z_rot)
            x *= std::polar(1.0, 1.234);
        const auto m1 = delay_doppler_map(z, chirp, pulses);
        const auto m2 = delay_doppler_map(z_rot, chirp, pulses);
        for (std::size_t i = 0; i < m1.mag.size(); ++i)
            CHECK(m1.mag[i] == doctest::Approx(m2.mag[i]).epsilon(1e-9));
    }

    SUBCASE("fewer than two pulses is an error")
    {
        const auto z = target_stream(10, 1.0, 0);
        CHECK_THROWS_AS(delay_doppler_map(z, chirp, 1), std::invalid_argument);
    }
}
