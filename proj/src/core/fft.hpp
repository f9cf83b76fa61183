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

#ifndef XLJRC_CORE_FFT_HPP
#define XLJRC_CORE_FFT_HPP

#include <vector>

#include "common.hpp"

namespace xljrc
{
    // In-place iterative radix-2 FFT. Sizes are powers of two (all waveform
    // numerology in this library is power-of-two by construction).
    // inverse == true applies the 1/N scaling.
    void fft_radix2(std::vector<cdouble> &x, bool inverse);

    inline void fft(std::vector<cdouble> &x) { fft_radix2(x, false); }
    inline void ifft(std::vector<cdouble> &x) { fft_radix2(x, true); }

    bool is_power_of_two(std::size_t n);
    std::size_t next_power_of_two(std::size_t n);
}

#endif
