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
// Monte Carlo sweep orchestration: per-trial channel / selection / metrics
// pipeline, deterministic multi-threaded execution, CSV/JSON persistence,
// complexity benchmarking and figure-data generation.

#ifndef XLJRC_CORE_HARNESS_HPP
#define XLJRC_CORE_HARNESS_HPP

#include <functional>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "scenario.hpp"
#include "selection.hpp"

namespace xljrc
{
    enum class SweepAxis
    {
        Snr,       // axis values in dB; noise variance derived per trial
        PolShift,  // per-element polarization deviation half-width [deg]
        NElements, // array size
        Chi        // depolarization leakage fraction
    };

    enum class Arm
    {
        ProposedAs,   // greedy + VR fairness + mitigation
        AllOn,        // every antenna active, no mitigation
        RandomK,      // k = N/2 random antennas, no mitigation
        TopPowerK,    // k = N/2 highest-power antennas, no mitigation
        NoMitigation  // greedy + VR fairness, cross-terms untouched
    };

    std::string axis_name(SweepAxis axis);
    SweepAxis axis_from_name(const std::string &name);
    std::string arm_name(Arm arm);
    Arm arm_from_name(const std::string &name);

    struct SweepSpec
    {
        ScenarioConfig scenario;
        SweepAxis axis = SweepAxis::Snr;
        std::vector<double> axis_values; // empty = scenario.snr_grid_db (Snr axis only)
        std::vector<Arm> arms = {Arm::ProposedAs, Arm::AllOn, Arm::RandomK};
        int trials_per_point = 0; // 0 = scenario.trials

        std::vector<double> resolved_axis() const;
        int resolved_trials() const { return trials_per_point > 0 ? trials_per_point : scenario.trials; }
    };

    struct SelectionSummary
    {
        int n_comm = 0;
        int n_sense = 0;
        int n_discarded = 0;
        OpCounters counters;
    };

    struct TrialRecord
    {
        int axis_index = 0;
        double axis_value = 0.0;
        Arm arm = Arm::ProposedAs;
        int trial = 0;
        std::uint64_t seed = 0; // master seed of the sweep
        MetricsReport metrics;
        SelectionSummary selection;
        std::string error; // empty = success
        double wall_ms = 0.0;
    };

    using RecordSink = std::function<void(const TrialRecord &)>;

    // Runs every (axis value x arm x trial) cell. Trials of the same axis
    // point share the channel realization across arms (paired comparison);
    // noise and payloads are per-arm streams. Failed trials carry an error
    // tag instead of aborting the sweep. The sink, when given, receives
    // records in deterministic (axis, arm, trial) order as they complete.
    std::vector<TrialRecord> run_sweep(const SweepSpec &spec, const RecordSink &sink = nullptr);

    // trials.csv (+ trials.json), aggregate.csv and roc.csv under out_dir.
    // Every file carries the tool version and the full resolved scenario in
    // its header. format: "csv", "json" or "both".
    void emit_results(const std::vector<TrialRecord> &records, const SweepSpec &spec,
                      const std::string &format, const std::string &out_dir);

    struct ComplexityRow
    {
        int n = 0, k = 0, l = 0;
        OpCounters measured; // greedy + fairness counters, summed over k users
        double model_proposed = 0.0;
        double model_hrnp = 0.0;
        double model_ls = 0.0;
        double model_ga = 0.0;
        double model_pso = 0.0;
    };

    // Measures selection operation counts on synthetic profiles against the
    // analytic models for every (n, k, l) grid point.
    std::vector<ComplexityRow> complexity_benchmark(const std::vector<int> &n_grid,
                                                    const std::vector<int> &k_grid,
                                                    const std::vector<int> &l_grid,
                                                    std::uint64_t seed);

    void write_complexity_table(const std::vector<ComplexityRow> &rows, const std::string &path);

    // Figure-data kinds: pol_heatmap | power_imbalance | sinr_vs_snr | se |
    // ser | pd | roc | ddmap. Writes plot-ready CSV files under out_dir.
    void figure_data(const std::string &kind, const ScenarioConfig &scenario,
                     const std::string &out_dir);

    // One channel realization in column text (antenna index + the four
    // complex block entries).
    void dump_channel(const ScenarioConfig &scenario, std::uint64_t seed, int trial,
                      const std::string &path);

    // Delay-Doppler demo shared by figure_data("ddmap") and the acceptance
    // suite: combined radar stream with per-path true delays, with/without
    // selection and mitigation.
    struct DdmapDemo
    {
        DelayDopplerMap with_as;
        DelayDopplerMap without_as;
        std::vector<int> true_delay_bins;
    };

    DdmapDemo ddmap_demo(const ScenarioConfig &scenario, std::uint64_t seed);
}

#endif
