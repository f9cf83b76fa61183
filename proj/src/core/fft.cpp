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

#include "fft.hpp"

#include <stdexcept>

namespace xljrc
{
    bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

    std::size_t next_power_of_two(std::size_t n)
    {
        std::size_t p = 1;
        while (p < n)
            p <<= 1;
        return p;
    }

    void fft_radix2(std::vector<cdouble> &x, bool inverse)
    {
        const std::size_t n = x.size();
        if (n == 0)
            return;
        if (!is_power_of_two(n))
            throw std::invalid_argument("fft_radix2: size must be a power of two");

        // bit-reversal permutation
        for (std::size_t i = 1, j = 0; i < n; ++i)
        {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1)
                j ^= bit;
            j ^= bit;
            if (i < j)
                std::swap(x[i], x[j]);
        }

        for (std::size_t len = 2; len <= n; len <<= 1)
        {
            const double ang = (inverse ? TWO_PI : -TWO_PI) / static_cast<double>(len);
            const cdouble wlen(std::cos(ang), std::sin(ang));
            for (std::size_t i = 0; i < n; i += len)
            {
                cdouble w(1.0, 0.0);
                for (std::size_t k = 0; k < len / 2; ++k)
                {
                    const cdouble u = x[i + k];
                    const cdouble v = x[i + k + len / 2] * w;
                    x[i + k] = u + v;
                    x[i + k + len / 2] = u - v;
                    w *= wlen;
                }
            }
        }

        if (inverse)
        {
            const double inv_n = 1.0 / static_cast<double>(n);
            for (auto &v : x)
                v *= inv_n;
        }
    }
}
