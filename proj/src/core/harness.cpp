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

#include "harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace xljrc
{
    namespace
    {
        // rng stream domains; channel realizations are shared across arms of
        // the same (axis, trial) cell, everything arm-specific is not
        constexpr std::uint64_t kChannelDomain = 0xC0;
        constexpr std::uint64_t kArmDomain = 0xA0;

        const std::vector<double> kRocGrid = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1};

        constexpr std::size_t kPdMcTrialsPerRecord = 20000;

        std::string fmt(double x)
        {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.10g", x);
            return buf;
        }
    }

    std::string axis_name(SweepAxis axis)
    {
        switch (axis)
        {
        case SweepAxis::Snr:
            return "snr";
        case SweepAxis::PolShift:
            return "pol_shift";
        case SweepAxis::NElements:
            return "n_elements";
        case SweepAxis::Chi:
            return "chi";
        }
        return "snr";
    }

    SweepAxis axis_from_name(const std::string &name)
    {
        if (name == "snr")
            return SweepAxis::Snr;
        if (name == "pol_shift")
            return SweepAxis::PolShift;
        if (name == "n_elements")
            return SweepAxis::NElements;
        if (name == "chi")
            return SweepAxis::Chi;
        throw std::invalid_argument("unknown sweep axis '" + name + "'");
    }

    std::string arm_name(Arm arm)
    {
        switch (arm)
        {
        case Arm::ProposedAs:
            return "proposed_as";
        case Arm::AllOn:
            return "all_on";
        case Arm::RandomK:
            return "random_k";
        case Arm::TopPowerK:
            return "top_power_k";
        case Arm::NoMitigation:
            return "no_mitigation";
        }
        return "proposed_as";
    }

    Arm arm_from_name(const std::string &name)
    {
        if (name == "proposed_as")
            return Arm::ProposedAs;
        if (name == "all_on")
            return Arm::AllOn;
        if (name == "random_k")
            return Arm::RandomK;
        if (name == "top_power_k")
            return Arm::TopPowerK;
        if (name == "no_mitigation")
            return Arm::NoMitigation;
        throw std::invalid_argument("unknown arm '" + name + "'");
    }

    std::vector<double> SweepSpec::resolved_axis() const
    {
        if (!axis_values.empty())
            return axis_values;
        if (axis == SweepAxis::Snr)
            return scenario.snr_grid_db;
        throw std::invalid_argument("sweep axis '" + axis_name(axis) + "' needs explicit axis values");
    }

    namespace
    {
        void apply_axis(ScenarioConfig &sc, SweepAxis axis, double value)
        {
            switch (axis)
            {
            case SweepAxis::Snr:
                break; // noise variance derived per trial from the received power
            case SweepAxis::PolShift:
                sc.pol_deviation = value * PI / 180.0;
                break;
            case SweepAxis::NElements:
                sc.array.n_elements = static_cast<int>(value);
                break;
            case SweepAxis::Chi:
                sc.chi = value;
                for (auto &p : sc.paths)
                    p.chi.reset();
                break;
            }
        }

        // Proposed-scheme selection: greedy pass plus VR fairness. Sweeps use
        // the relaxed quota variant so that a draw whose eligible pool falls
        // short of a quota still yields the best feasible split.
        SelectionResult proposed_selection(const ScenarioConfig &sc, const PowerProfile &profile,
                                           const std::vector<PathConfig> &paths, double eps,
                                           const SelectionThresholds &thr)
        {
            std::vector<std::vector<bool>> vrs;
            vrs.reserve(paths.size());
            for (const auto &p : paths)
                vrs.push_back(p.visibility);
            const SelectionResult sel = greedy_select(profile, eps, thr);
            return enforce_vr_fairness_relaxed(sel, profile, vrs, sc.selection_mode,
                                               sc.adaptive_lambda, thr, sc.n_comm_cap(),
                                               sc.n_sense_cap());
        }

        TrialRecord run_one_trial(const SweepSpec &spec, int axis_index, double axis_value,
                                  int arm_index, Arm arm, int trial)
        {
            const auto t0 = std::chrono::steady_clock::now();
            TrialRecord rec;
            rec.axis_index = axis_index;
            rec.axis_value = axis_value;
            rec.arm = arm;
            rec.trial = trial;
            rec.seed = spec.scenario.seed;

            try
            {
                ScenarioConfig sc = spec.scenario;
                apply_axis(sc, spec.axis, axis_value);
                if (spec.axis != SweepAxis::Snr)
                    validate_scenario(sc);

                RngStream rng_chan(sc.seed, {kChannelDomain, static_cast<std::uint64_t>(axis_index),
                                             static_cast<std::uint64_t>(trial)});
                RngStream rng_arm(sc.seed, {kArmDomain, static_cast<std::uint64_t>(axis_index),
                                            static_cast<std::uint64_t>(arm_index),
                                            static_cast<std::uint64_t>(trial)});

                const auto paths = realize_paths(sc, rng_chan);
                const ChannelMatrix h = assemble_channel(sc, paths, rng_chan);
                const auto [hc, hx] = split_copol_crosspol(h);

                OfdmParams op;
                op.n_subcarriers = sc.ofdm_subcarriers;
                op.cp_length = sc.ofdm_cp;
                op.constellation =
                    sc.constellation == "16qam" ? Constellation::Qam16 : Constellation::Qpsk;
                const OfdmFrame frame = ofdm_random_frame(op, sc.ofdm_symbols, rng_arm);
                const ChirpSignal chirp =
                    chirp_generate(sc.chirp_bandwidth, sc.chirp_duration, sc.sample_rate_effective());
                const SopSignal sop = make_sop(sc.sop_delta, sc.sop_theta, frame.stream, chirp.samples);

                const PowerProfile profile = power_profile(h, sop);

                const int n = sc.array.n_elements;
                double p_ref = 0.0;
                for (int i = 0; i < n; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    p_ref += profile.p_h[k] + profile.p_v[k] + profile.px_h_to_v[k] +
                             profile.px_v_to_h[k];
                }
                p_ref /= static_cast<double>(n);

                double sigma2 = sc.noise_variance;
                if (spec.axis == SweepAxis::Snr && p_ref > 0.0)
                    sigma2 = p_ref / db_to_linear(axis_value);
                const double eps = sc.epsilon < 0.0 ? 1e-3 * p_ref : sc.epsilon;

                // --- selection ---
                const SelectionThresholds thr{sc.gamma_comm, sc.gamma_radar};
                SelectionResult sel;
                double residual = 1.0;
                switch (arm)
                {
                case Arm::ProposedAs:
                case Arm::NoMitigation:
                    sel = proposed_selection(sc, profile, paths, eps, thr);
                    residual = arm == Arm::ProposedAs ? sc.mitigation_residual : 1.0;
                    break;
                case Arm::AllOn:
                    sel = baseline_select(BaselineKind::AllOn, profile, n, rng_arm);
                    break;
                case Arm::RandomK:
                    sel = baseline_select(BaselineKind::RandomK, profile, std::max(1, n / 2), rng_arm);
                    break;
                case Arm::TopPowerK:
                    sel = baseline_select(BaselineKind::TopPowerK, profile, std::max(1, n / 2),
                                          rng_arm);
                    break;
                }

                rec.selection.n_comm = sel.n_comm();
                rec.selection.n_sense = sel.n_sense();
                rec.selection.n_discarded =
                    static_cast<int>(std::count(sel.discarded.begin(), sel.discarded.end(), true));
                rec.selection.counters = sel.counters;

                // --- metrics ---
                const double res2 = residual * residual;

                std::vector<bool> active(static_cast<std::size_t>(n), false);
                bool any_active = false;
                for (int i = 0; i < n; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    active[k] = sel.comm_mask[k] || sel.sense_mask[k];
                    any_active |= active[k];
                }

                // an all-discarded selection is a legitimate degenerate
                // outcome: zero signal, detection at chance level
                if (any_active)
                {
                    ChannelMatrix hx_eff = hx;
                    for (auto &b : hx_eff.blocks)
                        b = b * cdouble(residual, 0.0);
                    const double sinr = sinr_post_selection(active, hc, hx_eff, sop, sigma2);
                    rec.metrics.sinr_db = linear_to_db(sinr);
                }
                else
                {
                    rec.metrics.sinr_db = -std::numeric_limits<double>::infinity();
                }

                // communication side
                std::vector<double> sinr_n(static_cast<std::size_t>(n), 0.0);
                double comm_useful = 0.0, comm_leak = 0.0;
                for (int i = 0; i < n; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    sinr_n[k] = profile.p_h[k] / (res2 * profile.px_v_to_h[k] + sigma2);
                    if (sel.comm_mask[k])
                    {
                        comm_useful += profile.p_h[k];
                        comm_leak += res2 * profile.px_v_to_h[k];
                    }
                }
                rec.metrics.se = evaluate_se_objective(sel.comm_mask, sinr_n);

                const bool any_comm = rec.selection.n_comm > 0;
                rec.metrics.chi_as = (any_comm && comm_useful > 0.0) ? comm_leak / comm_useful : 0.0;
                rec.metrics.ser_analytic =
                    any_comm ? ser_with_as(comm_useful / sigma2, rec.metrics.chi_as)
                             : std::nan("");

                if (any_comm)
                {
                    // MRC over the selected communication antennas on the H branch
                    cdouble g_x{0.0, 0.0};
                    double g_c = 0.0, noise_scale = 0.0;
                    for (int i = 0; i < n; ++i)
                    {
                        const std::size_t k = static_cast<std::size_t>(i);
                        if (!sel.comm_mask[k])
                            continue;
                        const CMat2 &b = h.block(i);
                        g_c += std::norm(b.d);
                        g_x += std::conj(b.d) * b.c;
                        noise_scale += std::norm(b.d);
                    }
                    if (g_c > 0.0)
                    {
                        const std::size_t nt = sop.h_stream.size();
                        std::vector<cdouble> combined(nt);
                        const cdouble leak = g_x * residual;
                        for (std::size_t t = 0; t < nt; ++t)
                        {
                            const cdouble v = sop.v_stream[t % sop.v_stream.size()];
                            combined[t] = g_c * sop.h_stream[t] + leak * v +
                                          rng_arm.cgaussian(sigma2 * noise_scale);
                        }
                        const DemodResult dem =
                            ofdm_demodulate(combined, g_c * sop.h_weight(), frame);
                        rec.metrics.ser_mc = static_cast<double>(dem.symbol_errors) /
                                             static_cast<double>(dem.total_symbols);
                        rec.metrics.ser_mc_ci =
                            1.96 * std::sqrt(rec.metrics.ser_mc * (1.0 - rec.metrics.ser_mc) /
                                             static_cast<double>(dem.total_symbols));
                    }
                    else
                    {
                        rec.metrics.ser_mc = std::nan("");
                        rec.metrics.ser_mc_ci = std::nan("");
                    }
                }
                else
                {
                    rec.metrics.ser_mc = std::nan("");
                    rec.metrics.ser_mc_ci = std::nan("");
                }

                // radar side
                double radar_useful = 0.0, radar_interf = 0.0, all_useful = 0.0, all_interf = 0.0;
                for (int i = 0; i < n; ++i)
                {
                    const std::size_t k = static_cast<std::size_t>(i);
                    all_useful += profile.p_v[k];
                    all_interf += profile.px_h_to_v[k];
                    if (sel.sense_mask[k])
                    {
                        radar_useful += profile.p_v[k];
                        radar_interf += res2 * profile.px_h_to_v[k];
                    }
                }
                const double sigma_phi2 = sigma2 + radar_interf;
                rec.metrics.radar_sinr = radar_useful / sigma_phi2;
                const double denom_all = all_useful + all_interf;
                rec.metrics.snr_improvement = denom_all > 0.0 ? radar_useful / denom_all : 0.0;
                rec.metrics.pd_analytic = pd_analytic(rec.metrics.radar_sinr, sc.pfa);
                const MonteCarloEstimate pd_est = pd_monte_carlo(
                    std::sqrt(radar_useful), sigma_phi2, sc.pfa, kPdMcTrialsPerRecord, rng_arm);
                rec.metrics.pd_mc = pd_est.value;
                rec.metrics.pd_mc_ci = pd_est.ci_half_width;
                rec.metrics.roc = roc_curve(rec.metrics.radar_sinr, kRocGrid);
            }
            catch (const std::exception &e)
            {
                rec.error = e.what();
            }

            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            return rec;
        }
    }

    std::vector<TrialRecord> run_sweep(const SweepSpec &spec, const RecordSink &sink)
    {
        const auto axis_values = spec.resolved_axis();
        const int trials = spec.resolved_trials();
        const int n_arms = static_cast<int>(spec.arms.size());
        if (spec.arms.empty())
            throw std::invalid_argument("run_sweep: no arms");
        if (trials < 1)
            throw std::invalid_argument("run_sweep: trials must be >= 1");

        const std::size_t total =
            axis_values.size() * static_cast<std::size_t>(n_arms) * static_cast<std::size_t>(trials);
        std::vector<TrialRecord> records(total);

        auto cell = [&](std::size_t g) {
            const int trial = static_cast<int>(g % static_cast<std::size_t>(trials));
            const std::size_t rest = g / static_cast<std::size_t>(trials);
            const int arm_index = static_cast<int>(rest % static_cast<std::size_t>(n_arms));
            const int axis_index = static_cast<int>(rest / static_cast<std::size_t>(n_arms));
            return run_one_trial(spec, axis_index, axis_values[static_cast<std::size_t>(axis_index)],
                                 arm_index, spec.arms[static_cast<std::size_t>(arm_index)], trial);
        };

        int n_threads = spec.scenario.threads;
        if (n_threads <= 0)
            n_threads = static_cast<int>(std::min<unsigned>(std::thread::hardware_concurrency(), 8));
        n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(total)));

        if (n_threads == 1)
        {
            for (std::size_t g = 0; g < total; ++g)
            {
                records[g] = cell(g);
                if (sink)
                    sink(records[g]);
            }
            return records;
        }

        // worker pool with an ordered streaming flush
        std::atomic<std::size_t> next{0};
        std::vector<char> done(total, 0);
        std::mutex flush_mutex;
        std::size_t flushed = 0;

        auto worker = [&] {
            for (;;)
            {
                const std::size_t g = next.fetch_add(1);
                if (g >= total)
                    return;
                records[g] = cell(g);
                std::lock_guard<std::mutex> lock(flush_mutex);
                done[g] = 1;
                while (flushed < total && done[flushed])
                {
                    if (sink)
                        sink(records[flushed]);
                    ++flushed;
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        return records;
    }

    namespace
    {
        void write_header(std::ostream &os, const SweepSpec &spec)
        {
            os << "# xljrc " << XLJRC_VERSION << "\n";
            os << "# axis = " << axis_name(spec.axis) << "\n";
            os << "# arms =";
            for (Arm a : spec.arms)
                os << " " << arm_name(a);
            os << "\n# trials_per_point = " << spec.resolved_trials() << "\n";
            os << "# scenario:\n";
            std::istringstream cfg(serialize_scenario(spec.scenario));
            std::string line;
            while (std::getline(cfg, line))
                os << "#   " << line << "\n";
        }

        struct ColumnStats
        {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t n = 0;
            void add(double v)
            {
                if (!std::isfinite(v)) // degenerate trials report nan/inf
                    return;
                sum += v;
                sum_sq += v * v;
                ++n;
            }
            double mean() const { return n ? sum / static_cast<double>(n) : std::nan(""); }
            double ci() const
            {
                if (n < 2)
                    return std::nan("");
                const double m = mean();
                const double var = std::max(0.0, sum_sq / static_cast<double>(n) - m * m);
                return 1.96 * std::sqrt(var / static_cast<double>(n));
            }
        };
    }

    void emit_results(const std::vector<TrialRecord> &records, const SweepSpec &spec,
                      const std::string &format, const std::string &out_dir)
    {
        if (format != "csv" && format != "json" && format != "both")
            throw std::invalid_argument("emit_results: format must be csv | json | both");
        std::filesystem::create_directories(out_dir);
        const bool want_csv = format == "csv" || format == "both";
        const bool want_json = format == "json" || format == "both";

        const char *columns =
            "axis_value,arm,trial,seed,n_comm,n_sense,n_discarded,comparisons,sorts,divisions,"
            "sinr_db,se,ser_analytic,ser_mc,ser_mc_ci,pd_analytic,pd_mc,pd_mc_ci,"
            "snr_improvement,radar_sinr,chi_as,error,wall_ms";

        if (want_csv)
        {
            std::ofstream f(std::filesystem::path(out_dir) / "trials.csv");
            if (!f)
                throw std::runtime_error("emit_results: cannot write to '" + out_dir + "'");
            write_header(f, spec);
            f << columns << "\n";
            for (const auto &r : records)
            {
                f << fmt(r.axis_value) << "," << arm_name(r.arm) << "," << r.trial << "," << r.seed
                  << "," << r.selection.n_comm << "," << r.selection.n_sense << ","
                  << r.selection.n_discarded << "," << r.selection.counters.comparisons << ","
                  << r.selection.counters.sorts << "," << r.selection.counters.divisions << ","
                  << fmt(r.metrics.sinr_db) << "," << fmt(r.metrics.se) << ","
                  << fmt(r.metrics.ser_analytic) << "," << fmt(r.metrics.ser_mc) << ","
                  << fmt(r.metrics.ser_mc_ci) << "," << fmt(r.metrics.pd_analytic) << ","
                  << fmt(r.metrics.pd_mc) << "," << fmt(r.metrics.pd_mc_ci) << ","
                  << fmt(r.metrics.snr_improvement) << "," << fmt(r.metrics.radar_sinr) << ","
                  << fmt(r.metrics.chi_as) << "," << r.error << "," << fmt(r.wall_ms) << "\n";
            }
        }

        if (want_json)
        {
            nlohmann::json doc;
            doc["tool"] = std::string("xljrc ") + XLJRC_VERSION;
            doc["axis"] = axis_name(spec.axis);
            doc["trials_per_point"] = spec.resolved_trials();
            doc["scenario"] = serialize_scenario(spec.scenario);
            auto &arr = doc["records"] = nlohmann::json::array();
            auto num = [](double v) -> nlohmann::json {
                if (std::isnan(v))
                    return nullptr;
                if (std::isinf(v))
                    return v > 0 ? "inf" : "-inf";
                return v;
            };
            for (const auto &r : records)
            {
                nlohmann::json j;
                j["axis_value"] = r.axis_value;
                j["arm"] = arm_name(r.arm);
                j["trial"] = r.trial;
                j["seed"] = r.seed;
                j["n_comm"] = r.selection.n_comm;
                j["n_sense"] = r.selection.n_sense;
                j["n_discarded"] = r.selection.n_discarded;
                j["comparisons"] = r.selection.counters.comparisons;
                j["sorts"] = r.selection.counters.sorts;
                j["divisions"] = r.selection.counters.divisions;
                j["sinr_db"] = num(r.metrics.sinr_db);
                j["se"] = num(r.metrics.se);
                j["ser_analytic"] = num(r.metrics.ser_analytic);
                j["ser_mc"] = num(r.metrics.ser_mc);
                j["ser_mc_ci"] = num(r.metrics.ser_mc_ci);
                j["pd_analytic"] = num(r.metrics.pd_analytic);
                j["pd_mc"] = num(r.metrics.pd_mc);
                j["pd_mc_ci"] = num(r.metrics.pd_mc_ci);
                j["snr_improvement"] = num(r.metrics.snr_improvement);
                j["radar_sinr"] = num(r.metrics.radar_sinr);
                j["chi_as"] = num(r.metrics.chi_as);
                j["error"] = r.error;
                j["wall_ms"] = r.wall_ms;
                arr.push_back(std::move(j));
            }
            std::ofstream f(std::filesystem::path(out_dir) / "trials.json");
            if (!f)
                throw std::runtime_error("emit_results: cannot write to '" + out_dir + "'");
            f << doc.dump(1) << "\n";
        }

        // aggregates (mean and 95% CI per axis point per arm, error trials skipped)
        {
            std::ofstream f(std::filesystem::path(out_dir) / "aggregate.csv");
            write_header(f, spec);
            f << "axis_value,arm,n_ok,n_error,se_mean,se_ci,ser_analytic_mean,ser_mc_mean,ser_mc_ci,"
                 "pd_analytic_mean,pd_mc_mean,pd_ci,sinr_db_mean,radar_sinr_mean,"
                 "snr_improvement_mean,comparisons_mean,n_comm_mean,n_sense_mean\n";
            const auto axis_values = spec.resolved_axis();
            for (std::size_t a = 0; a < axis_values.size(); ++a)
            {
                for (std::size_t m = 0; m < spec.arms.size(); ++m)
                {
                    ColumnStats se, ser_an, ser_mc, ser_mc_hw, pd_an, pd_mc, sinr_db, radar, impr,
                        comps, ncomm, nsense;
                    std::size_t n_err = 0;
                    for (const auto &r : records)
                    {
                        if (r.axis_index != static_cast<int>(a) || r.arm != spec.arms[m])
                            continue;
                        if (!r.error.empty())
                        {
                            ++n_err;
                            continue;
                        }
                        se.add(r.metrics.se);
                        ser_an.add(r.metrics.ser_analytic);
                        ser_mc.add(r.metrics.ser_mc);
                        ser_mc_hw.add(r.metrics.ser_mc_ci);
                        pd_an.add(r.metrics.pd_analytic);
                        pd_mc.add(r.metrics.pd_mc);
                        sinr_db.add(r.metrics.sinr_db);
                        radar.add(r.metrics.radar_sinr);
                        impr.add(r.metrics.snr_improvement);
                        comps.add(static_cast<double>(r.selection.counters.comparisons));
                        ncomm.add(r.selection.n_comm);
                        nsense.add(r.selection.n_sense);
                    }
                    f << fmt(axis_values[a]) << "," << arm_name(spec.arms[m]) << "," << se.n << ","
                      << n_err << "," << fmt(se.mean()) << "," << fmt(se.ci()) << ","
                      << fmt(ser_an.mean()) << "," << fmt(ser_mc.mean()) << "," << fmt(ser_mc.ci())
                      << "," << fmt(pd_an.mean()) << "," << fmt(pd_mc.mean()) << ","
                      << fmt(pd_an.ci()) << "," << fmt(sinr_db.mean()) << "," << fmt(radar.mean())
                      << "," << fmt(impr.mean()) << "," << fmt(comps.mean()) << ","
                      << fmt(ncomm.mean()) << "," << fmt(nsense.mean()) << "\n";
                }
            }
        }

        // ROC lists
        {
            std::ofstream f(std::filesystem::path(out_dir) / "roc.csv");
            write_header(f, spec);
            f << "axis_value,arm,pfa,pd_mean\n";
            const auto axis_values = spec.resolved_axis();
            for (std::size_t a = 0; a < axis_values.size(); ++a)
            {
                for (std::size_t m = 0; m < spec.arms.size(); ++m)
                {
                    std::vector<ColumnStats> stats(kRocGrid.size());
                    for (const auto &r : records)
                    {
                        if (r.axis_index != static_cast<int>(a) || r.arm != spec.arms[m] ||
                            !r.error.empty())
                            continue;
                        for (std::size_t j = 0; j < r.metrics.roc.size() && j < stats.size(); ++j)
                            stats[j].add(r.metrics.roc[j].second);
                    }
                    for (std::size_t j = 0; j < kRocGrid.size(); ++j)
                        f << fmt(axis_values[a]) << "," << arm_name(spec.arms[m]) << ","
                          << fmt(kRocGrid[j]) << "," << fmt(stats[j].mean()) << "\n";
                }
            }
        }
    }

    std::vector<ComplexityRow> complexity_benchmark(const std::vector<int> &n_grid,
                                                    const std::vector<int> &k_grid,
                                                    const std::vector<int> &l_grid,
                                                    std::uint64_t seed)
    {
        if (n_grid.empty() || k_grid.empty() || l_grid.empty())
            throw std::invalid_argument("complexity_benchmark: empty grid");

        std::vector<ComplexityRow> rows;
        for (int l : l_grid)
        {
            for (int k : k_grid)
            {
                for (int n : n_grid)
                {
                    ComplexityRow row;
                    row.n = n;
                    row.k = k;
                    row.l = l;

                    // contiguous visibility regions covering the array
                    std::vector<std::vector<bool>> vrs;
                    const int width = std::max(1, n / l);
                    for (int v = 0; v < l; ++v)
                    {
                        std::vector<bool> vr(static_cast<std::size_t>(n), false);
                        const int lo = v * width;
                        const int hi = (v == l - 1) ? n : std::min(n, lo + width);
                        for (int i = lo; i < hi; ++i)
                            vr[static_cast<std::size_t>(i)] = true;
                        vrs.push_back(std::move(vr));
                    }

                    const SelectionThresholds thr{};
                    for (int user = 0; user < k; ++user)
                    {
                        RngStream rng(seed, {static_cast<std::uint64_t>(n),
                                             static_cast<std::uint64_t>(l),
                                             static_cast<std::uint64_t>(user)});
                        PowerProfile profile;
                        profile.p_h.resize(static_cast<std::size_t>(n));
                        profile.p_v.resize(static_cast<std::size_t>(n));
                        profile.px_h_to_v.resize(static_cast<std::size_t>(n));
                        profile.px_v_to_h.resize(static_cast<std::size_t>(n));
                        for (int i = 0; i < n; ++i)
                        {
                            const std::size_t q = static_cast<std::size_t>(i);
                            profile.p_h[q] = rng.uniform();
                            profile.p_v[q] = rng.uniform();
                            profile.px_h_to_v[q] = 0.3 * rng.uniform();
                            profile.px_v_to_h[q] = 0.3 * rng.uniform();
                        }

                        SelectionResult sel = greedy_select(profile, 1e-4, thr);
                        try
                        {
                            sel = enforce_vr_fairness(sel, profile, vrs, SelectionMode::Fairness, 0.5,
                                                      thr, n, n);
                        }
                        catch (const std::exception &)
                        {
                            // quota infeasible on this draw; the greedy counters still count
                        }
                        row.measured.comparisons += sel.counters.comparisons;
                        row.measured.sorts += sel.counters.sorts;
                        row.measured.divisions += sel.counters.divisions;
                    }

                    row.model_proposed = complexity_counts(n, k, l, ComplexityScheme::Proposed);
                    row.model_hrnp = complexity_counts(n, k, l, ComplexityScheme::Hrnp);
                    row.model_ls = complexity_counts(n, k, l, ComplexityScheme::Ls);
                    row.model_ga = complexity_counts(n, k, l, ComplexityScheme::Ga);
                    row.model_pso = complexity_counts(n, k, l, ComplexityScheme::Pso);
                    rows.push_back(row);
                }
            }
        }
        return rows;
    }

    void write_complexity_table(const std::vector<ComplexityRow> &rows, const std::string &path)
    {
        std::ofstream f(path);
        if (!f)
            throw std::runtime_error("write_complexity_table: cannot write '" + path + "'");
        f << "# xljrc " << XLJRC_VERSION << " complexity benchmark\n";
        f << "n,k,l,measured_comparisons,measured_sorts,measured_divisions,"
             "model_proposed,model_hrnp,model_ls,model_ga,model_pso\n";
        for (const auto &r : rows)
            f << r.n << "," << r.k << "," << r.l << "," << r.measured.comparisons << ","
              << r.measured.sorts << "," << r.measured.divisions << "," << fmt(r.model_proposed)
              << "," << fmt(r.model_hrnp) << "," << fmt(r.model_ls) << "," << fmt(r.model_ga) << ","
              << fmt(r.model_pso) << "\n";
    }

    void dump_channel(const ScenarioConfig &scenario, std::uint64_t seed, int trial,
                      const std::string &path)
    {
        RngStream rng(seed, {kChannelDomain, 0, static_cast<std::uint64_t>(trial)});
        const ChannelMatrix h = assemble_channel(scenario, rng);
        std::ofstream f(path);
        if (!f)
            throw std::runtime_error("dump_channel: cannot write '" + path + "'");
        f << "# xljrc " << XLJRC_VERSION << " channel realization (seed " << seed << ", trial "
          << trial << ")\n";
        f << "# antenna h_vv_re h_vv_im h_vh_re h_vh_im h_hv_re h_hv_im h_hh_re h_hh_im\n";
        for (int i = 0; i < h.n_antennas; ++i)
        {
            const CMat2 &b = h.block(i);
            f << (i + 1) << " " << fmt(b.a.real()) << " " << fmt(b.a.imag()) << " "
              << fmt(b.b.real()) << " " << fmt(b.b.imag()) << " " << fmt(b.c.real()) << " "
              << fmt(b.c.imag()) << " " << fmt(b.d.real()) << " " << fmt(b.d.imag()) << "\n";
        }
    }

    DdmapDemo ddmap_demo(const ScenarioConfig &scenario, std::uint64_t seed)
    {
        ScenarioConfig sc = scenario;
        RngStream rng_chan(seed, {kChannelDomain, 0, 0});
        RngStream rng_arm(seed, {kArmDomain, 0, 0, 0});

        const auto paths = realize_paths(sc, rng_chan);

        // per-path channels (the sum is the full channel the selector sees)
        std::vector<ChannelMatrix> per_path;
        per_path.reserve(paths.size());
        for (const auto &p : paths)
            per_path.push_back(assemble_channel(sc, {p}, rng_chan));
        ChannelMatrix h = ChannelMatrix::zeros(sc.array.n_elements);
        for (const auto &hp : per_path)
            for (int i = 0; i < h.n_antennas; ++i)
                h.block(i) += hp.block(i);

        const double fs = sc.sample_rate_effective();
        const ChirpSignal chirp = chirp_generate(sc.chirp_bandwidth, sc.chirp_duration, fs);
        const std::size_t p_len = chirp.samples.size();
        const std::size_t total = p_len * static_cast<std::size_t>(sc.chirp_pulses);

        OfdmParams op;
        op.n_subcarriers = sc.ofdm_subcarriers;
        op.cp_length = sc.ofdm_cp;
        op.constellation = sc.constellation == "16qam" ? Constellation::Qam16 : Constellation::Qpsk;
        const std::size_t sym_len = static_cast<std::size_t>(op.n_subcarriers + op.cp_length);
        const int n_sym = static_cast<int>((total + sym_len - 1) / sym_len);
        const OfdmFrame frame = ofdm_random_frame(op, n_sym, rng_arm);
        const SopSignal sop = make_sop(sc.sop_delta, sc.sop_theta, frame.stream, chirp.samples);

        const PowerProfile profile = power_profile(h, sop);
        const int n = sc.array.n_elements;

        double p_ref = 0.0;
        for (int i = 0; i < n; ++i)
            p_ref += profile.p_h[static_cast<std::size_t>(i)] + profile.p_v[static_cast<std::size_t>(i)] +
                     profile.px_h_to_v[static_cast<std::size_t>(i)] +
                     profile.px_v_to_h[static_cast<std::size_t>(i)];
        p_ref /= static_cast<double>(n);
        const double eps = sc.epsilon < 0.0 ? 1e-3 * p_ref : sc.epsilon;

        const SelectionThresholds thr{sc.gamma_comm, sc.gamma_radar};
        const SelectionResult proposed = proposed_selection(sc, profile, paths, eps, thr);

        DdmapDemo demo;
        for (const auto &p : paths)
        {
            const double delay_s = 2.0 * p.scatterer_distance / SPEED_OF_LIGHT;
            demo.true_delay_bins.push_back(
                static_cast<int>(std::llround(delay_s * fs)) % static_cast<int>(p_len));
        }

        auto synthesize = [&](const std::vector<bool> &mask, double residual, RngStream &rng) {
            // MRC weights from the total co-pol V coefficient
            std::vector<cdouble> gains(per_path.size(), cdouble{0.0, 0.0});
            cdouble leak{0.0, 0.0};
            double noise_scale = 0.0;
            for (int i = 0; i < n; ++i)
            {
                if (!mask[static_cast<std::size_t>(i)])
                    continue;
                const cdouble w = std::conj(h.block(i).a);
                for (std::size_t q = 0; q < per_path.size(); ++q)
                    gains[q] += w * per_path[q].block(i).a;
                leak += w * h.block(i).b;
                noise_scale += std::norm(h.block(i).a);
            }
            leak *= residual;

            const cdouble wv = sop.v_weight();
            std::vector<cdouble> z(total);
            for (std::size_t t = 0; t < total; ++t)
            {
                cdouble acc = leak * sop.h_stream[t % sop.h_stream.size()];
                for (std::size_t q = 0; q < per_path.size(); ++q)
                {
                    const std::size_t tau = static_cast<std::size_t>(demo.true_delay_bins[q]);
                    const std::size_t idx = (t % p_len + p_len - tau % p_len) % p_len;
                    acc += gains[q] * wv * chirp.samples[idx];
                }
                if (sc.noise_variance > 0.0 && noise_scale > 0.0)
                    acc += rng.cgaussian(sc.noise_variance * noise_scale);
                z[t] = acc;
            }
            return delay_doppler_map(z, chirp, sc.chirp_pulses);
        };

        std::vector<bool> all_mask(static_cast<std::size_t>(n), true);
        demo.without_as = synthesize(all_mask, 1.0, rng_arm);
        demo.with_as = synthesize(proposed.sense_mask, sc.mitigation_residual, rng_arm);
        return demo;
    }

    namespace
    {
        void write_matrix_csv(const std::string &path, const DelayDopplerMap &map,
                              const std::string &title)
        {
            std::ofstream f(path);
            if (!f)
                throw std::runtime_error("figure_data: cannot write '" + path + "'");
            f << "# xljrc " << XLJRC_VERSION << " " << title << "\n";
            f << "# rows: doppler bins, cols: range bins\n";
            for (int d = 0; d < map.n_doppler; ++d)
            {
                for (int r = 0; r < map.n_range; ++r)
                    f << (r ? "," : "") << fmt(map.at(d, r));
                f << "\n";
            }
        }
    }

    void figure_data(const std::string &kind, const ScenarioConfig &scenario,
                     const std::string &out_dir)
    {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);

        if (kind == "pol_heatmap")
        {
            const ArrayConfig &array = scenario.array;
            const auto offsets = element_offsets(array);
            const double spacing = array.element_spacing();
            const double lambda = array.wavelength();

            // polarization angle over (distance, element)
            {
                std::ofstream f(dir / "fig_pol_heatmap_distance.csv");
                f << "# xljrc " << XLJRC_VERSION
                  << " polarization angle [deg] vs (distance, element); broadside path\n";
                f << "# col 1: distance [m], cols 2..: elements 1.." << array.n_elements << "\n";
                for (int step = 0; step < 100; ++step)
                {
                    const double d = 1.0 + 99.0 * step / 99.0;
                    f << fmt(d);
                    for (int i = 0; i < array.n_elements; ++i)
                    {
                        const double off = offsets[static_cast<std::size_t>(i)] * spacing;
                        const double delta_d = std::sqrt(d * d + off * off) - d;
                        const double ang = wrap_angle(TWO_PI / lambda * delta_d);
                        f << "," << fmt(ang * 180.0 / PI);
                    }
                    f << "\n";
                }
            }

            // polarization angle over (angle of arrival, element) at fixed distance
            {
                std::ofstream f(dir / "fig_pol_heatmap_angle.csv");
                f << "# xljrc " << XLJRC_VERSION
                  << " polarization angle [deg] vs (aoa, element); d = 30 m\n";
                f << "# col 1: aoa [rad], cols 2..: elements 1.." << array.n_elements << "\n";
                const double d = 30.0;
                for (int step = 0; step < 100; ++step)
                {
                    const double aoa = -PI / 2.0 + PI * step / 99.0;
                    f << fmt(aoa);
                    for (int i = 0; i < array.n_elements; ++i)
                    {
                        const double dist = element_distance(
                            d, aoa, offsets[static_cast<std::size_t>(i)], spacing);
                        const double ang = wrap_angle(TWO_PI / lambda * (dist - d));
                        f << "," << fmt(ang * 180.0 / PI);
                    }
                    f << "\n";
                }
            }
            return;
        }

        if (kind == "power_imbalance")
        {
            RngStream rng_chan(scenario.seed, {kChannelDomain, 0, 0});
            RngStream rng_arm(scenario.seed, {kArmDomain, 0, 0, 0});
            const ChannelMatrix h = assemble_channel(scenario, rng_chan);
            OfdmParams op;
            op.n_subcarriers = scenario.ofdm_subcarriers;
            op.cp_length = scenario.ofdm_cp;
            const OfdmFrame frame = ofdm_random_frame(op, scenario.ofdm_symbols, rng_arm);
            const ChirpSignal chirp = chirp_generate(scenario.chirp_bandwidth,
                                                     scenario.chirp_duration,
                                                     scenario.sample_rate_effective());
            const SopSignal sop =
                make_sop(scenario.sop_delta, scenario.sop_theta, frame.stream, chirp.samples);
            const PowerProfile profile = power_profile(h, sop);
            const auto gamma = imbalance_factor(profile);

            std::ofstream f(dir / "fig_power_imbalance.csv");
            f << "# xljrc " << XLJRC_VERSION << " per-antenna polarization powers\n";
            f << "antenna,p_h,p_v,px_h_to_v,px_v_to_h,imbalance\n";
            for (int i = 0; i < h.n_antennas; ++i)
            {
                const std::size_t k = static_cast<std::size_t>(i);
                f << (i + 1) << "," << fmt(profile.p_h[k]) << "," << fmt(profile.p_v[k]) << ","
                  << fmt(profile.px_h_to_v[k]) << "," << fmt(profile.px_v_to_h[k]) << ","
                  << fmt(gamma[k]) << "\n";
            }
            return;
        }

        if (kind == "sinr_vs_snr")
        {
            std::ofstream f(dir / "fig_sinr_vs_snr.csv");
            f << "# xljrc " << XLJRC_VERSION << " mean SINR vs SNR per polarization deviation\n";
            f << "pol_shift_deg,snr_db,arm,sinr_db_mean\n";
            for (double shift_deg : {0.0, 30.0, 60.0, 80.0})
            {
                SweepSpec spec;
                spec.scenario = scenario;
                spec.scenario.pol_deviation = shift_deg * PI / 180.0;
                spec.axis = SweepAxis::Snr;
                spec.arms = {Arm::ProposedAs, Arm::AllOn};
                const auto records = run_sweep(spec);
                const auto axis_values = spec.resolved_axis();
                for (std::size_t a = 0; a < axis_values.size(); ++a)
                {
                    for (Arm arm : spec.arms)
                    {
                        ColumnStats st;
                        for (const auto &r : records)
                            if (r.axis_index == static_cast<int>(a) && r.arm == arm &&
                                r.error.empty() && !std::isinf(r.metrics.sinr_db))
                                st.add(r.metrics.sinr_db);
                        f << fmt(shift_deg) << "," << fmt(axis_values[a]) << "," << arm_name(arm)
                          << "," << fmt(st.mean()) << "\n";
                    }
                }
            }
            return;
        }

        if (kind == "se" || kind == "ser" || kind == "pd" || kind == "roc")
        {
            SweepSpec spec;
            spec.scenario = scenario;
            spec.axis = SweepAxis::Snr;
            spec.arms = {Arm::ProposedAs, Arm::AllOn, Arm::RandomK};
            const auto records = run_sweep(spec);
            emit_results(records, spec, "csv", (dir / ("fig_" + kind)).string());
            return;
        }

        if (kind == "ddmap")
        {
            const DdmapDemo demo = ddmap_demo(scenario, scenario.seed);
            write_matrix_csv((dir / "fig_ddmap_no_as.csv").string(), demo.without_as,
                             "delay-Doppler map, all antennas, no mitigation");
            write_matrix_csv((dir / "fig_ddmap_proposed.csv").string(), demo.with_as,
                             "delay-Doppler map, proposed selection + mitigation");
            std::ofstream f(dir / "fig_ddmap_truth.csv");
            f << "# true target delay bins\n";
            for (std::size_t i = 0; i < demo.true_delay_bins.size(); ++i)
                f << (i ? "," : "") << demo.true_delay_bins[i];
            f << "\n";
            return;
        }

        throw std::invalid_argument("figure_data: unknown kind '" + kind + "'");
    }
}
