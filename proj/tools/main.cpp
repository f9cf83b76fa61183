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
// Command-line front end; drives the shared library through its C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "xljrc/xljrc.h"

namespace
{
    struct ScenarioDeleter
    {
        void operator()(xljrc_scenario *s) const { xljrc_scenario_free(s); }
    };
    using ScenarioPtr = std::unique_ptr<xljrc_scenario, ScenarioDeleter>;

    int fail(const char *what)
    {
        std::fprintf(stderr, "xljrc: %s: %s\n", what, xljrc_last_error());
        return 1;
    }

    ScenarioPtr load_scenario(const std::string &path, const std::string &seed,
                              const std::string &trials, int &rc)
    {
        xljrc_scenario *raw = nullptr;
        if (xljrc_scenario_load_file(path.c_str(), &raw) != XLJRC_OK)
        {
            rc = fail("scenario");
            return nullptr;
        }
        ScenarioPtr scenario(raw);
        if (!seed.empty() && xljrc_scenario_set(scenario.get(), "seed", seed.c_str()) != XLJRC_OK)
        {
            rc = fail("--seed");
            return nullptr;
        }
        if (!trials.empty() &&
            xljrc_scenario_set(scenario.get(), "trials", trials.c_str()) != XLJRC_OK)
        {
            rc = fail("--trials");
            return nullptr;
        }
        rc = 0;
        return scenario;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{std::string("xljrc ") + xljrc_version() +
                 " - dual-polarized XL-MIMO joint radar and communication simulator"};
    app.require_subcommand(1);

    // ---- simulate ----
    auto *sim = app.add_subcommand("simulate", "Run a Monte Carlo sweep");
    std::string sim_scenario, sim_sweep = "snr", sim_axis_values, sim_arms, sim_seed, sim_trials;
    std::string sim_out = "out", sim_format = "csv";
    bool sim_dump_channel = false, sim_dump_ddmap = false;
    sim->add_option("--scenario", sim_scenario, "Scenario file")->required();
    sim->add_option("--sweep", sim_sweep, "Sweep axis: snr | pol_shift | n_elements | chi");
    sim->add_option("--axis-values", sim_axis_values, "Comma-separated axis values");
    sim->add_option("--arms", sim_arms,
                    "Comma-separated arms (proposed_as,all_on,random_k,top_power_k,no_mitigation)");
    sim->add_option("--trials", sim_trials, "Trials per axis point");
    sim->add_option("--seed", sim_seed, "Master seed override");
    sim->add_option("--out", sim_out, "Output directory");
    sim->add_option("--format", sim_format, "csv | json | both");
    sim->add_flag("--dump-channel", sim_dump_channel, "Also dump one channel realization");
    sim->add_flag("--dump-ddmap", sim_dump_ddmap, "Also write delay-Doppler demo maps");

    // ---- bench-complexity ----
    auto *bench = app.add_subcommand("bench-complexity", "Selection complexity benchmark");
    std::string bench_n = "64,128,256,512,1024,2048,4096", bench_k = "1", bench_l = "1";
    std::string bench_out = "complexity.csv";
    std::uint64_t bench_seed = 1;
    bench->add_option("--n-grid", bench_n, "Comma-separated antenna counts");
    bench->add_option("--k-grid", bench_k, "Comma-separated user counts");
    bench->add_option("--l-grid", bench_l, "Comma-separated path counts");
    bench->add_option("--seed", bench_seed, "Profile generator seed");
    bench->add_option("--out", bench_out, "Output CSV path");

    // ---- figure ----
    auto *fig = app.add_subcommand("figure", "Emit plot-ready figure data");
    std::string fig_scenario, fig_kind, fig_seed, fig_trials, fig_out = "figures";
    fig->add_option("--scenario", fig_scenario, "Scenario file")->required();
    fig->add_option("--kind", fig_kind,
                    "pol_heatmap | power_imbalance | sinr_vs_snr | se | ser | pd | roc | ddmap")
        ->required();
    fig->add_option("--seed", fig_seed, "Master seed override");
    fig->add_option("--trials", fig_trials, "Trials override");
    fig->add_option("--out", fig_out, "Output directory");

    // ---- inspect ----
    auto *ins = app.add_subcommand("inspect", "Resolve, validate and print a scenario");
    std::string ins_scenario, ins_seed, ins_trials;
    ins->add_option("--scenario", ins_scenario, "Scenario file")->required();
    ins->add_option("--seed", ins_seed, "Master seed override");
    ins->add_option("--trials", ins_trials, "Trials override");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed())
    {
        int rc = 0;
        ScenarioPtr scenario = load_scenario(sim_scenario, sim_seed, sim_trials, rc);
        if (!scenario)
            return rc;

        char *nf = nullptr;
        if (xljrc_near_field_report(scenario.get(), &nf) == XLJRC_OK)
        {
            std::fputs(nf, stderr);
            xljrc_string_free(nf);
        }

        if (xljrc_run_sweep(scenario.get(), sim_sweep.c_str(), sim_axis_values.c_str(),
                            sim_arms.c_str(), 0, sim_out.c_str(), sim_format.c_str()) != XLJRC_OK)
            return fail("simulate");
        if (sim_dump_channel &&
            xljrc_dump_channel(scenario.get(), 0, 0, (sim_out + "/channel.txt").c_str()) != XLJRC_OK)
            return fail("--dump-channel");
        if (sim_dump_ddmap &&
            xljrc_figure_data(scenario.get(), "ddmap", sim_out.c_str()) != XLJRC_OK)
            return fail("--dump-ddmap");
        std::printf("results written to %s\n", sim_out.c_str());
        return 0;
    }

    if (bench->parsed())
    {
        if (xljrc_bench_complexity(bench_n.c_str(), bench_k.c_str(), bench_l.c_str(), bench_seed,
                                   bench_out.c_str()) != XLJRC_OK)
            return fail("bench-complexity");
        std::printf("complexity table written to %s\n", bench_out.c_str());
        return 0;
    }

    if (fig->parsed())
    {
        int rc = 0;
        ScenarioPtr scenario = load_scenario(fig_scenario, fig_seed, fig_trials, rc);
        if (!scenario)
            return rc;
        if (xljrc_figure_data(scenario.get(), fig_kind.c_str(), fig_out.c_str()) != XLJRC_OK)
            return fail("figure");
        std::printf("figure data written to %s\n", fig_out.c_str());
        return 0;
    }

    if (ins->parsed())
    {
        int rc = 0;
        ScenarioPtr scenario = load_scenario(ins_scenario, ins_seed, ins_trials, rc);
        if (!scenario)
            return rc;
        char *text = nullptr;
        if (xljrc_scenario_to_string(scenario.get(), &text) != XLJRC_OK)
            return fail("inspect");
        std::fputs(text, stdout);
        xljrc_string_free(text);
        char *nf = nullptr;
        if (xljrc_near_field_report(scenario.get(), &nf) != XLJRC_OK)
            return fail("near-field report");
        std::printf("# near-field report\n%s", nf);
        xljrc_string_free(nf);
        return 0;
    }

    return 0;
}
