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

#ifndef XLJRC_CORE_COMMON_HPP
#define XLJRC_CORE_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace xljrc
{
    using cdouble = std::complex<double>;

    inline constexpr const char *XLJRC_VERSION = "0.1.0";

    constexpr double SPEED_OF_LIGHT = 299792458.0; // m/s
    constexpr double PI = 3.141592653589793238462643383279502884;
    constexpr double TWO_PI = 2.0 * PI;

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

    // Wraps an angle into [0, 2*pi)
    inline double wrap_angle(double a)
    {
        double r = std::fmod(a, TWO_PI);
        if (r < 0.0)
            r += TWO_PI;
        return r;
    }

    // Thrown when a scenario document cannot be parsed
    class parse_error : public std::runtime_error
    {
    public:
        explicit parse_error(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Thrown when a named configuration invariant is violated
    class constraint_error : public std::runtime_error
    {
    public:
        explicit constraint_error(const std::string &msg) : std::runtime_error(msg) {}
    };
}

#endif
