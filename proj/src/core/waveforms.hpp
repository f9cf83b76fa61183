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
// Transmit waveforms (OFDM on the H branch, LFM chirp on the V branch), the
// dual-polarized per-antenna receive model, the idealized depolarization
// mitigation step, MRC combining, OFDM demodulation and delay-Doppler
// processing.

#ifndef XLJRC_CORE_WAVEFORMS_HPP
#define XLJRC_CORE_WAVEFORMS_HPP

#include <cstdint>
#include <vector>

#include "channel.hpp"
#include "common.hpp"
#include "rng.hpp"

namespace xljrc
{
    // ------------------------------------------------------------------
    // Transmit side
    // ------------------------------------------------------------------

    // Dual-polarized transmit signal with state of polarization (delta,
    // theta); weights (cos delta, sin delta e^{j theta}) on (H, V).
    struct SopSignal
    {
        double delta = 0.0;
        double theta = 0.0;
        std::vector<cdouble> h_stream; // E^H(t), weight already applied
        std::vector<cdouble> v_stream; // E^V(t), weight already applied

        cdouble h_weight() const { return {std::cos(delta), 0.0}; }
        cdouble v_weight() const { return std::polar(std::sin(delta), theta); }
    };

    SopSignal make_sop(double delta, double theta, std::vector<cdouble> h_stream,
                       std::vector<cdouble> v_stream);

    enum class Constellation
    {
        Qpsk,
        Qam16
    };

    struct OfdmParams
    {
        int n_subcarriers = 64;
        int cp_length = 16;
        Constellation constellation = Constellation::Qpsk;
    };

    struct OfdmFrame
    {
        OfdmParams params;
        int n_symbols = 0;
        std::vector<std::uint8_t> bits;  // source bits
        std::vector<cdouble> symbols;    // subcarrier-major: [sym * n_sub + k]
        std::vector<cdouble> stream;     // time-domain samples with CP, unit average power
    };

    int bits_per_symbol(Constellation c);
    cdouble map_symbol(Constellation c, const std::uint8_t *bits);

    // bits.size() must be divisible by bits_per_symbol * n_subcarriers.
    OfdmFrame ofdm_modulate(const std::vector<std::uint8_t> &bits, const OfdmParams &params);

    // Random-payload frame of `n_symbols` OFDM symbols.
    OfdmFrame ofdm_random_frame(const OfdmParams &params, int n_symbols, RngStream &rng);

    struct ChirpSignal
    {
        double bandwidth = 0.0;   // [Hz]
        double duration = 0.0;    // [s]
        double sample_rate = 0.0; // [Hz]
        std::vector<cdouble> samples; // one pulse, constant envelope
    };

    // Linear FM pulse sweeping -B/2..B/2 over [0, T). sample_rate must be
    // >= 2 * bandwidth (Nyquist with margin).
    ChirpSignal chirp_generate(double bandwidth, double duration, double sample_rate);

    // Repeats a pulse back to back (slow-time axis for Doppler processing).
    std::vector<cdouble> repeat_pulses(const ChirpSignal &chirp, int n_pulses);

    // ------------------------------------------------------------------
    // Receive side
    // ------------------------------------------------------------------

    // Per-antenna receive matrices, antenna-major.
    struct ReceivedBundle
    {
        int n_antennas = 0;
        std::size_t n_samples = 0;
        std::vector<cdouble> y_v; // [antenna * n_samples + t]
        std::vector<cdouble> y_h;

        cdouble *v_row(int n) { return y_v.data() + static_cast<std::size_t>(n) * n_samples; }
        cdouble *h_row(int n) { return y_h.data() + static_cast<std::size_t>(n) * n_samples; }
        const cdouble *v_row(int n) const { return y_v.data() + static_cast<std::size_t>(n) * n_samples; }
        const cdouble *h_row(int n) const { return y_h.data() + static_cast<std::size_t>(n) * n_samples; }
    };

    // y_V,n = h_VrVt E^V + h_VrHt E^H + w, y_H,n = h_HrHt E^H + h_HrVt E^V + w,
    // with w ~ CN(0, noise_variance) per sample and branch.
    ReceivedBundle transmit_receive(const ChannelMatrix &h, const SopSignal &sig,
                                    double noise_variance, RngStream &rng);

    // Scales the cross-polarization terms by `residual` (amplitude) using the
    // known channel and transmit streams; residual = 0 removes them entirely,
    // residual = 1 is the identity.
    ReceivedBundle mitigate_depolarization(const ReceivedBundle &bundle, const ChannelMatrix &h,
                                           const SopSignal &sig, double residual);

    // ------------------------------------------------------------------
    // Combining and demodulation
    // ------------------------------------------------------------------

    // MRC over the selected antennas with the given per-antenna co-pol
    // coefficients: z(t) = sum_n conj(c_n) y_n(t). Also returns the combined
    // co-pol gain sum |c_n|^2.
    struct CombinedStream
    {
        std::vector<cdouble> stream;
        cdouble gain{0.0, 0.0};
        double noise_scale = 0.0; // sum |c_n|^2 (noise power multiplier)
    };

    CombinedStream mrc_combine(const std::vector<cdouble> &rows, int n_antennas, std::size_t n_samples,
                               const std::vector<cdouble> &coeffs, const std::vector<bool> &mask);

    struct DemodResult
    {
        std::vector<std::uint8_t> bits;
        std::size_t symbol_errors = 0;
        std::size_t total_symbols = 0;
    };

    // Single-tap equalization by `combined_gain` after combining, FFT per
    // symbol, nearest-point slicing against the reference frame.
    DemodResult ofdm_demodulate(const std::vector<cdouble> &combined, cdouble combined_gain,
                                const OfdmFrame &reference);

    // ------------------------------------------------------------------
    // Radar processing
    // ------------------------------------------------------------------

    struct DelayDopplerMap
    {
        int n_range = 0;   // fast-time bins (pulse length)
        int n_doppler = 0; // slow-time bins (pulse count)
        std::vector<double> mag; // [doppler * n_range + range]

        double at(int doppler, int range) const
        {
            return mag[static_cast<std::size_t>(doppler) * n_range + range];
        }
    };

    // Matched filter per pulse (circular, FFT-based, Hann-weighted reference
    // if `window`), then FFT across pulses per range bin. Needs >= 2 pulses.
    DelayDopplerMap delay_doppler_map(const std::vector<cdouble> &v_stream, const ChirpSignal &chirp,
                                      int n_pulses, bool window = true);
}

#endif
