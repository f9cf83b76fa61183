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

#ifndef XLJRC_CORE_MAT2_HPP
#define XLJRC_CORE_MAT2_HPP

#include "common.hpp"

namespace xljrc
{
    // Complex 2x2 matrix, row-major [[a, b], [c, d]].
    // Polarization convention throughout: row/column 0 is V, row/column 1 is H,
    // i.e. a block maps [E_V; E_H] on the transmit side to [y_V; y_H].
    struct CMat2
    {
        cdouble a{0.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{0.0, 0.0};

        CMat2 operator+(const CMat2 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
        CMat2 &operator+=(const CMat2 &o)
        {
            a += o.a;
            b += o.b;
            c += o.c;
            d += o.d;
            return *this;
        }
        CMat2 operator*(const CMat2 &o) const
        {
            return {a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d};
        }
        CMat2 operator*(cdouble s) const { return {a * s, b * s, c * s, d * s}; }

        CMat2 transpose() const { return {a, c, b, d}; }

        double frobenius_sq() const
        {
            return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
        }

        static CMat2 identity() { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }
    };

    inline CMat2 operator*(cdouble s, const CMat2 &m) { return m * s; }
}

#endif
