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

#include "waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace xljrc
{
    SopSignal make_sop(double delta, double theta, std::vector<cdouble> h_stream,
                       std::vector<cdouble> v_stream)
    {
        if (delta < 0.0 || delta > PI / 2.0)
            throw std::domain_error("make_sop: delta must be in [0, pi/2]");
        SopSignal s;
        s.delta = delta;
        s.theta = theta;
        s.h_stream = std::move(h_stream);
        s.v_stream = std::move(v_stream);
        const cdouble wh = s.h_weight();
        const cdouble wv = s.v_weight();
        for (auto &x : s.h_stream)
            x *= wh;
        for (auto &x : s.v_stream)
            x *= wv;
        return s;
    }

    int bits_per_symbol(Constellation c) { return c == Constellation::Qpsk ? 2 : 4; }

    namespace
    {
        // Gray-coded PAM level for a 16QAM axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
        double qam16_level(std::uint8_t b0, std::uint8_t b1)
        {
            const double mag = b1 ? 1.0 : 3.0;
            return b0 ? mag : -mag;
        }

        void qam16_unlevel(double v, std::uint8_t *b0, std::uint8_t *b1)
        {
            *b0 = v >= 0.0 ? 1 : 0;
            *b1 = std::abs(v) < 2.0 ? 1 : 0;
        }
    }

    cdouble map_symbol(Constellation c, const std::uint8_t *bits)
    {
        if (c == Constellation::Qpsk)
        {
            const double s = 1.0 / std::sqrt(2.0);
            return {bits[0] ? -s : s, bits[1] ? -s : s};
        }
        const double s = 1.0 / std::sqrt(10.0);
        return {s * qam16_level(bits[0], bits[1]), s * qam16_level(bits[2], bits[3])};
    }

    namespace
    {
        void unmap_symbol(Constellation c, cdouble sym, std::uint8_t *bits)
        {
            if (c == Constellation::Qpsk)
            {
                bits[0] = sym.real() < 0.0 ? 1 : 0;
                bits[1] = sym.imag() < 0.0 ? 1 : 0;
                return;
            }
            const double s = std::sqrt(10.0);
            qam16_unlevel(sym.real() * s, &bits[0], &bits[1]);
            qam16_unlevel(sym.imag() * s, &bits[2], &bits[3]);
        }
    }

    OfdmFrame ofdm_modulate(const std::vector<std::uint8_t> &bits, const OfdmParams &params)
    {
        const int nsub = params.n_subcarriers;
        const int bps = bits_per_symbol(params.constellation);
        const std::size_t bits_per_ofdm_symbol = static_cast<std::size_t>(bps) * nsub;
        if (bits.empty() || bits.size() % bits_per_ofdm_symbol != 0)
            throw std::invalid_argument("ofdm_modulate: bit count must be a positive multiple of "
                                        "bits_per_symbol * n_subcarriers");

        OfdmFrame frame;
        frame.params = params;
        frame.n_symbols = static_cast<int>(bits.size() / bits_per_ofdm_symbol);
        frame.bits = bits;
        frame.symbols.resize(static_cast<std::size_t>(frame.n_symbols) * nsub);

        const double ortho = std::sqrt(static_cast<double>(nsub));
        std::vector<cdouble> block(static_cast<std::size_t>(nsub));
        frame.stream.reserve(static_cast<std::size_t>(frame.n_symbols) * (nsub + params.cp_length));
        for (int s = 0; s < frame.n_symbols; ++s)
        {
            for (int k = 0; k < nsub; ++k)
            {
                const std::size_t bit_idx =
                    (static_cast<std::size_t>(s) * nsub + k) * static_cast<std::size_t>(bps);
                const cdouble sym = map_symbol(params.constellation, &bits[bit_idx]);
                frame.symbols[static_cast<std::size_t>(s) * nsub + k] = sym;
                block[static_cast<std::size_t>(k)] = sym;
            }
            ifft(block);
            for (auto &x : block)
                x *= ortho; // orthonormal IFFT keeps unit average power
            for (int t = nsub - params.cp_length; t < nsub; ++t)
                frame.stream.push_back(block[static_cast<std::size_t>(t)]);
            frame.stream.insert(frame.stream.end(), block.begin(), block.end());
        }
        return frame;
    }

    OfdmFrame ofdm_random_frame(const OfdmParams &params, int n_symbols, RngStream &rng)
    {
        const std::size_t n_bits = static_cast<std::size_t>(n_symbols) * params.n_subcarriers *
                                   static_cast<std::size_t>(bits_per_symbol(params.constellation));
        std::vector<std::uint8_t> bits(n_bits);
        for (auto &b : bits)
            b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
        return ofdm_modulate(bits, params);
    }

    ChirpSignal chirp_generate(double bandwidth, double duration, double sample_rate)
    {
        if (bandwidth < 0.0 || duration <= 0.0)
            throw std::invalid_argument("chirp_generate: bandwidth >= 0 and duration > 0 required");
        if (sample_rate < 2.0 * bandwidth || sample_rate <= 0.0)
            throw std::invalid_argument("chirp_generate: sample_rate must be >= 2 x bandwidth");

        ChirpSignal c;
        c.bandwidth = bandwidth;
        c.duration = duration;
        c.sample_rate = sample_rate;
        const auto n = static_cast<std::size_t>(std::llround(duration * sample_rate));
        c.samples.resize(std::max<std::size_t>(n, 1));
        const double slope = bandwidth / duration;
        for (std::size_t i = 0; i < c.samples.size(); ++i)
        {
            const double t = static_cast<double>(i) / sample_rate;
            // instantaneous frequency slope*t - B/2 sweeps -B/2 .. +B/2
            const double phase = PI * slope * t * t - PI * bandwidth * t;
            c.samples[i] = std::polar(1.0, phase);
        }
        return c;
    }

    std::vector<cdouble> repeat_pulses(const ChirpSignal &chirp, int n_pulses)
    {
        std::vector<cdouble> out;
        out.reserve(chirp.samples.size() * static_cast<std::size_t>(n_pulses));
        for (int r = 0; r < n_pulses; ++r)
            out.insert(out.end(), chirp.samples.begin(), chirp.samples.end());
        return out;
    }

    ReceivedBundle transmit_receive(const ChannelMatrix &h, const SopSignal &sig,
                                    double noise_variance, RngStream &rng)
    {
        if (sig.h_stream.size() != sig.v_stream.size())
            throw std::invalid_argument("transmit_receive: H and V streams must have equal length");
        if (noise_variance < 0.0)
            throw std::invalid_argument("transmit_receive: noise variance must be >= 0");

        const std::size_t nt = sig.h_stream.size();
        ReceivedBundle out;
        out.n_antennas = h.n_antennas;
        out.n_samples = nt;
        out.y_v.resize(static_cast<std::size_t>(h.n_antennas) * nt);
        out.y_h.resize(static_cast<std::size_t>(h.n_antennas) * nt);

        for (int n = 0; n < h.n_antennas; ++n)
        {
            const CMat2 &b = h.block(n);
            cdouble *yv = out.v_row(n);
            cdouble *yh = out.h_row(n);
            for (std::size_t t = 0; t < nt; ++t)
            {
                yv[t] = b.a * sig.v_stream[t] + b.b * sig.h_stream[t];
                yh[t] = b.c * sig.v_stream[t] + b.d * sig.h_stream[t];
            }
            if (noise_variance > 0.0)
            {
                for (std::size_t t = 0; t < nt; ++t)
                    yv[t] += rng.cgaussian(noise_variance);
                for (std::size_t t = 0; t < nt; ++t)
                    yh[t] += rng.cgaussian(noise_variance);
            }
        }
        return out;
    }

    ReceivedBundle mitigate_depolarization(const ReceivedBundle &bundle, const ChannelMatrix &h,
                                           const SopSignal &sig, double residual)
    {
        if (residual < 0.0 || residual > 1.0)
            throw std::domain_error("mitigate_depolarization: residual must be in [0,1]");
        ReceivedBundle out = bundle;
        const double cancel = 1.0 - residual;
        if (cancel == 0.0)
            return out;
        for (int n = 0; n < bundle.n_antennas; ++n)
        {
            const CMat2 &b = h.block(n);
            cdouble *yv = out.v_row(n);
            cdouble *yh = out.h_row(n);
            for (std::size_t t = 0; t < bundle.n_samples; ++t)
            {
                yv[t] -= cancel * b.b * sig.h_stream[t];
                yh[t] -= cancel * b.c * sig.v_stream[t];
            }
        }
        return out;
    }

    CombinedStream mrc_combine(const std::vector<cdouble> &rows, int n_antennas, std::size_t n_samples,
                               const std::vector<cdouble> &coeffs, const std::vector<bool> &mask)
    {
        if (coeffs.size() != static_cast<std::size_t>(n_antennas) ||
            mask.size() != static_cast<std::size_t>(n_antennas))
            throw std::invalid_argument("mrc_combine: coefficient/mask length mismatch");

        CombinedStream out;
        out.stream.assign(n_samples, cdouble{0.0, 0.0});
        for (int n = 0; n < n_antennas; ++n)
        {
            if (!mask[static_cast<std::size_t>(n)])
                continue;
            const cdouble w = std::conj(coeffs[static_cast<std::size_t>(n)]);
            const cdouble *row = rows.data() + static_cast<std::size_t>(n) * n_samples;
            for (std::size_t t = 0; t < n_samples; ++t)
                out.stream[t] += w * row[t];
            out.gain += w * coeffs[static_cast<std::size_t>(n)];
            out.noise_scale += std::norm(coeffs[static_cast<std::size_t>(n)]);
        }
        return out;
    }

    DemodResult ofdm_demodulate(const std::vector<cdouble> &combined, cdouble combined_gain,
                                const OfdmFrame &reference)
    {
        const int nsub = reference.params.n_subcarriers;
        const int cp = reference.params.cp_length;
        const int bps = bits_per_symbol(reference.params.constellation);
        const std::size_t sym_len = static_cast<std::size_t>(nsub + cp);
        if (std::abs(combined_gain) <= 0.0)
            throw std::invalid_argument("ofdm_demodulate: empty selection (zero combined channel)");
        if (combined.size() < sym_len * static_cast<std::size_t>(reference.n_symbols))
            throw std::invalid_argument("ofdm_demodulate: stream shorter than the reference frame");

        DemodResult res;
        res.total_symbols = static_cast<std::size_t>(reference.n_symbols) * nsub;
        res.bits.resize(res.total_symbols * static_cast<std::size_t>(bps));

        const double ortho = 1.0 / std::sqrt(static_cast<double>(nsub));
        std::vector<cdouble> block(static_cast<std::size_t>(nsub));
        for (int s = 0; s < reference.n_symbols; ++s)
        {
            const std::size_t base = static_cast<std::size_t>(s) * sym_len + cp;
            for (int k = 0; k < nsub; ++k)
                block[static_cast<std::size_t>(k)] = combined[base + static_cast<std::size_t>(k)];
            fft(block);
            for (int k = 0; k < nsub; ++k)
            {
                const cdouble est = block[static_cast<std::size_t>(k)] * ortho / combined_gain;
                std::uint8_t decided[4] = {0, 0, 0, 0};
                unmap_symbol(reference.params.constellation, est, decided);
                const std::size_t sym_idx = static_cast<std::size_t>(s) * nsub + k;
                bool err = false;
                for (int b = 0; b < bps; ++b)
                {
                    res.bits[sym_idx * bps + static_cast<std::size_t>(b)] = decided[b];
                    err |= decided[b] != reference.bits[sym_idx * bps + static_cast<std::size_t>(b)];
                }
                res.symbol_errors += err ? 1 : 0;
            }
        }
        return res;
    }

    DelayDopplerMap delay_doppler_map(const std::vector<cdouble> &v_stream, const ChirpSignal &chirp,
                                      int n_pulses, bool window)
    {
        const std::size_t p = chirp.samples.size();
        if (n_pulses < 2)
            throw std::invalid_argument("delay_doppler_map: at least 2 pulses required for the "
                                        "velocity axis");
        if (v_stream.size() < p * static_cast<std::size_t>(n_pulses))
            throw std::invalid_argument("delay_doppler_map: stream shorter than n_pulses pulses");

        // windowed matched-filter reference
        std::vector<cdouble> ref(p);
        for (std::size_t t = 0; t < p; ++t)
        {
            const double w =
                window ? 0.5 * (1.0 - std::cos(TWO_PI * static_cast<double>(t) / static_cast<double>(p - 1)))
                       : 1.0;
            ref[t] = std::conj(chirp.samples[t]) * w;
        }

        // circular correlation per pulse (the transmit train is pulse-periodic)
        std::vector<cdouble> fast(static_cast<std::size_t>(n_pulses) * p);
        for (int r = 0; r < n_pulses; ++r)
        {
            const cdouble *seg = v_stream.data() + static_cast<std::size_t>(r) * p;
            cdouble *row = fast.data() + static_cast<std::size_t>(r) * p;
            for (std::size_t lag = 0; lag < p; ++lag)
            {
                cdouble acc{0.0, 0.0};
                for (std::size_t t = 0; t < p; ++t)
                {
                    const std::size_t idx = lag + t < p ? lag + t : lag + t - p;
                    acc += seg[idx] * ref[t];
                }
                row[lag] = acc;
            }
        }

        // slow-time DFT per range bin
        DelayDopplerMap map;
        map.n_range = static_cast<int>(p);
        map.n_doppler = n_pulses;
        map.mag.resize(static_cast<std::size_t>(n_pulses) * p);
        for (std::size_t lag = 0; lag < p; ++lag)
        {
            for (int d = 0; d < n_pulses; ++d)
            {
                cdouble acc{0.0, 0.0};
                for (int r = 0; r < n_pulses; ++r)
                {
                    const double ang = -TWO_PI * d * r / static_cast<double>(n_pulses);
                    acc += fast[static_cast<std::size_t>(r) * p + lag] * std::polar(1.0, ang);
                }
                map.mag[static_cast<std::size_t>(d) * p + lag] = std::abs(acc);
            }
        }
        return map;
    }
}
