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

#include "xljrc/xljrc.h"

#include <cstring>
#include <sstream>
#include <string>

#include "core/harness.hpp"
#include "core/scenario.hpp"

struct xljrc_scenario
{
    xljrc::ScenarioConfig config;
};

namespace
{
    thread_local std::string g_last_error;

    void set_error(const std::string &msg) { g_last_error = msg; }

    template <typename Fn>
    xljrc_status guarded(Fn &&fn)
    {
        try
        {
            fn();
            g_last_error.clear();
            return XLJRC_OK;
        }
        catch (const xljrc::parse_error &e)
        {
            set_error(e.what());
            return XLJRC_ERR_PARSE;
        }
        catch (const xljrc::constraint_error &e)
        {
            set_error(e.what());
            return XLJRC_ERR_CONSTRAINT;
        }
        catch (const std::invalid_argument &e)
        {
            set_error(e.what());
            return XLJRC_ERR_INVALID_ARG;
        }
        catch (const std::domain_error &e)
        {
            set_error(e.what());
            return XLJRC_ERR_INVALID_ARG;
        }
        catch (const std::exception &e)
        {
            set_error(e.what());
            return XLJRC_ERR_INTERNAL;
        }
    }

    char *dup_string(const std::string &s)
    {
        char *out = new char[s.size() + 1];
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    std::vector<double> parse_csv_doubles(const char *csv)
    {
        std::vector<double> out;
        if (!csv)
            return out;
        std::stringstream ss(csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
        {
            if (tok.empty())
                continue;
            std::size_t pos = 0;
            const double v = std::stod(tok, &pos);
            if (pos != tok.size())
                throw std::invalid_argument("malformed numeric list entry '" + tok + "'");
            out.push_back(v);
        }
        return out;
    }

    std::vector<int> parse_csv_ints(const char *csv)
    {
        std::vector<int> out;
        for (double v : parse_csv_doubles(csv))
            out.push_back(static_cast<int>(v));
        return out;
    }
}

extern "C"
{
    const char *xljrc_version(void) { return xljrc::XLJRC_VERSION; }

    const char *xljrc_last_error(void) { return g_last_error.c_str(); }

    xljrc_status xljrc_scenario_load_file(const char *path, xljrc_scenario **out)
    {
        if (!path || !out)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] {
            auto *s = new xljrc_scenario{xljrc::load_scenario_file(path)};
            *out = s;
        });
    }

    xljrc_status xljrc_scenario_load_string(const char *text, xljrc_scenario **out)
    {
        if (!text || !out)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] {
            auto *s = new xljrc_scenario{xljrc::load_scenario(text)};
            *out = s;
        });
    }

    void xljrc_scenario_free(xljrc_scenario *scenario) { delete scenario; }

    xljrc_status xljrc_scenario_set(xljrc_scenario *scenario, const char *key, const char *value)
    {
        if (!scenario || !key || !value)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] { xljrc::apply_override(scenario->config, key, value); });
    }

    xljrc_status xljrc_scenario_to_string(const xljrc_scenario *scenario, char **out)
    {
        if (!scenario || !out)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] { *out = dup_string(xljrc::serialize_scenario(scenario->config)); });
    }

    void xljrc_string_free(char *text) { delete[] text; }

    xljrc_status xljrc_near_field_report(const xljrc_scenario *scenario, char **out)
    {
        if (!scenario || !out)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded(
            [&] { *out = dup_string(xljrc::near_field_check(scenario->config).to_text()); });
    }

    xljrc_status xljrc_run_sweep(const xljrc_scenario *scenario, const char *axis,
                                 const char *axis_csv, const char *arms_csv, int trials,
                                 const char *out_dir, const char *format)
    {
        if (!scenario || !out_dir)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] {
            xljrc::SweepSpec spec;
            spec.scenario = scenario->config;
            spec.axis = xljrc::axis_from_name(axis && *axis ? axis : "snr");
            if (axis_csv && *axis_csv)
                spec.axis_values = parse_csv_doubles(axis_csv);
            if (arms_csv && *arms_csv)
            {
                spec.arms.clear();
                std::stringstream ss(arms_csv);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty())
                        spec.arms.push_back(xljrc::arm_from_name(tok));
            }
            spec.trials_per_point = trials;
            const auto records = xljrc::run_sweep(spec);
            xljrc::emit_results(records, spec, format && *format ? format : "csv", out_dir);
        });
    }

    xljrc_status xljrc_dump_channel(const xljrc_scenario *scenario, uint64_t seed, int trial,
                                    const char *out_path)
    {
        if (!scenario || !out_path)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] { xljrc::dump_channel(scenario->config, seed, trial, out_path); });
    }

    xljrc_status xljrc_figure_data(const xljrc_scenario *scenario, const char *kind,
                                   const char *out_dir)
    {
        if (!scenario || !kind || !out_dir)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] { xljrc::figure_data(kind, scenario->config, out_dir); });
    }

    xljrc_status xljrc_bench_complexity(const char *n_grid_csv, const char *k_grid_csv,
                                        const char *l_grid_csv, uint64_t seed, const char *out_path)
    {
        if (!n_grid_csv || !out_path)
        {
            set_error("null argument");
            return XLJRC_ERR_INVALID_ARG;
        }
        return guarded([&] {
            const auto rows = xljrc::complexity_benchmark(
                parse_csv_ints(n_grid_csv),
                k_grid_csv && *k_grid_csv ? parse_csv_ints(k_grid_csv) : std::vector<int>{1},
                l_grid_csv && *l_grid_csv ? parse_csv_ints(l_grid_csv) : std::vector<int>{1}, seed);
            xljrc::write_complexity_table(rows, out_path);
        });
    }
}
