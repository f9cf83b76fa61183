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

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fft.hpp"

namespace xljrc
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string::npos)
                return "";
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        std::string where(int line, const std::string &key)
        {
            std::ostringstream os;
            if (line > 0)
                os << "line " << line << ", ";
            os << "key '" << key << "'";
            return os.str();
        }

        double parse_double(const std::string &v, int line, const std::string &key)
        {
            char *end = nullptr;
            const double x = std::strtod(v.c_str(), &end);
            if (end == v.c_str() || *end != '\0')
                throw parse_error(where(line, key) + ": expected a number, got '" + v + "'");
            return x;
        }

        long long parse_int(const std::string &v, int line, const std::string &key)
        {
            char *end = nullptr;
            const long long x = std::strtoll(v.c_str(), &end, 10);
            if (end == v.c_str() || *end != '\0')
                throw parse_error(where(line, key) + ": expected an integer, got '" + v + "'");
            return x;
        }

        std::uint64_t parse_u64(const std::string &v, int line, const std::string &key)
        {
            char *end = nullptr;
            const std::uint64_t x = std::strtoull(v.c_str(), &end, 10);
            if (end == v.c_str() || *end != '\0')
                throw parse_error(where(line, key) + ": expected an unsigned integer, got '" + v + "'");
            return x;
        }

        std::vector<double> parse_double_list(const std::string &v, int line, const std::string &key)
        {
            std::vector<double> out;
            std::istringstream is(v);
            std::string tok;
            while (is >> tok)
                out.push_back(parse_double(tok, line, key));
            return out;
        }

        std::string fmt(double x)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            return buf;
        }

        // Dispatches one key/value onto the config. `line` is 0 for overrides.
        void apply_kv(ScenarioConfig &c, const std::string &key, const std::string &value, int line)
        {
            auto num = [&] { return parse_double(value, line, key); };
            auto integer = [&] { return parse_int(value, line, key); };

            // --- array ---
            if (key == "n_elements")
                c.array.n_elements = static_cast<int>(integer());
            else if (key == "spacing")
                c.array.spacing = (value == "half_wavelength") ? 0.0 : num();
            else if (key == "carrier_freq")
                c.array.carrier_freq = num();
            else if (key == "max_gain")
                c.array.max_gain = num();
            else if (key == "xpd_db")
                c.array.xpd_db = num();
            else if (key == "pattern")
            {
                if (value == "isotropic")
                    c.array.pattern = ElementPattern::Isotropic;
                else if (value == "dipole")
                    c.array.pattern = ElementPattern::Dipole;
                else if (value.rfind("patch:", 0) == 0)
                {
                    c.array.pattern = ElementPattern::Patch;
                    c.array.patch_exponent = parse_double(value.substr(6), line, key);
                }
                else
                    throw parse_error(where(line, key) + ": expected isotropic | dipole | patch:<k>");
            }
            // --- path generation ---
            else if (key == "num_paths")
            {
                const auto dots = value.find("..");
                if (dots == std::string::npos)
                    c.num_paths_min = c.num_paths_max = static_cast<int>(integer());
                else
                {
                    c.num_paths_min = static_cast<int>(parse_int(value.substr(0, dots), line, key));
                    c.num_paths_max = static_cast<int>(parse_int(value.substr(dots + 2), line, key));
                }
            }
            else if (key == "path_distance")
            {
                const auto v = parse_double_list(value, line, key);
                if (v.size() == 1)
                    c.path_distance_min = c.path_distance_max = v[0];
                else if (v.size() == 2)
                {
                    c.path_distance_min = v[0];
                    c.path_distance_max = v[1];
                }
                else
                    throw parse_error(where(line, key) + ": expected '<d>' or '<min> <max>'");
            }
            else if (key == "path_aoa")
            {
                const auto v = parse_double_list(value, line, key);
                if (v.size() == 1)
                    c.path_aoa_min = c.path_aoa_max = v[0];
                else if (v.size() == 2)
                {
                    c.path_aoa_min = v[0];
                    c.path_aoa_max = v[1];
                }
                else
                    throw parse_error(where(line, key) + ": expected '<phi>' or '<min> <max>'");
            }
            else if (key == "path_gain_mag")
                c.path_gain_mag = num();
            else if (key == "chi")
                c.chi = num();
            else if (key == "vr_mode")
            {
                if (value == "full")
                {
                    c.vr_full = true;
                }
                else if (value.rfind("random:", 0) == 0)
                {
                    c.vr_full = false;
                    c.vr_fraction = parse_double(value.substr(7), line, key);
                }
                else
                    throw parse_error(where(line, key) + ": expected full | random:<fraction>");
            }
            // --- signal / noise ---
            else if (key == "noise_variance")
                c.noise_variance = num();
            else if (key == "pol_deviation")
                c.pol_deviation = num();
            else if (key == "pol_gradient")
            {
                if (value == "on")
                    c.pol_gradient = true;
                else if (value == "off")
                    c.pol_gradient = false;
                else
                    throw parse_error(where(line, key) + ": expected on | off");
            }
            else if (key == "sop_delta")
                c.sop_delta = num();
            else if (key == "sop_theta")
                c.sop_theta = num();
            // --- selection ---
            else if (key == "gamma_comm")
                c.gamma_comm = num();
            else if (key == "gamma_radar")
                c.gamma_radar = num();
            else if (key == "epsilon")
                c.epsilon = (value == "auto") ? -1.0 : num();
            else if (key == "selection_mode")
            {
                if (value == "fairness")
                    c.selection_mode = SelectionMode::Fairness;
                else if (value.rfind("adaptive:", 0) == 0)
                {
                    c.selection_mode = SelectionMode::Adaptive;
                    c.adaptive_lambda = parse_double(value.substr(9), line, key);
                }
                else
                    throw parse_error(where(line, key) + ": expected fairness | adaptive:<lambda>");
            }
            else if (key == "max_comm_antennas")
                c.max_comm_antennas = static_cast<int>(integer());
            else if (key == "max_sense_antennas")
                c.max_sense_antennas = static_cast<int>(integer());
            else if (key == "mitigation_residual")
                c.mitigation_residual = num();
            // --- detection ---
            else if (key == "pfa")
                c.pfa = num();
            else if (key == "ref_cells")
                c.ref_cells = static_cast<int>(integer());
            else if (key == "p2_tau")
                c.p2_tau = (value == "auto") ? -1.0 : num();
            else if (key == "p2_sigma")
                c.p2_sigma = (value == "auto") ? -1.0 : num();
            // --- experiment ---
            else if (key == "snr_grid_db")
                c.snr_grid_db = parse_double_list(value, line, key);
            else if (key == "seed")
                c.seed = parse_u64(value, line, key);
            else if (key == "trials")
                c.trials = static_cast<int>(integer());
            else if (key == "threads")
                c.threads = static_cast<int>(integer());
            // --- waveforms ---
            else if (key == "ofdm_subcarriers")
                c.ofdm_subcarriers = static_cast<int>(integer());
            else if (key == "ofdm_cp")
                c.ofdm_cp = static_cast<int>(integer());
            else if (key == "ofdm_symbols")
                c.ofdm_symbols = static_cast<int>(integer());
            else if (key == "constellation")
                c.constellation = value;
            else if (key == "chirp_bandwidth")
                c.chirp_bandwidth = num();
            else if (key == "chirp_duration")
                c.chirp_duration = num();
            else if (key == "chirp_pulses")
                c.chirp_pulses = static_cast<int>(integer());
            else if (key == "sample_rate")
                c.sample_rate = (value == "auto") ? 0.0 : num();
            // --- explicit paths: path.<i>.<field> ---
            else if (key.rfind("path.", 0) == 0)
            {
                const auto rest = key.substr(5);
                const auto dot = rest.find('.');
                if (dot == std::string::npos)
                    throw parse_error(where(line, key) + ": expected path.<index>.<field>");
                const long long idx = parse_int(rest.substr(0, dot), line, key);
                if (idx < 1 || idx > 4096)
                    throw parse_error(where(line, key) + ": path index must be in 1..4096");
                const std::string field = rest.substr(dot + 1);
                if (c.paths.size() < static_cast<std::size_t>(idx))
                    c.paths.resize(static_cast<std::size_t>(idx));
                PathTemplate &p = c.paths[static_cast<std::size_t>(idx - 1)];

                if (field == "aoa")
                    p.aoa = num();
                else if (field == "distance")
                    p.distance = num();
                else if (field == "gain_mag")
                    p.gain_mag = num();
                else if (field == "gain_phase")
                {
                    if (value == "random")
                        p.gain_phase.reset();
                    else
                        p.gain_phase = num();
                }
                else if (field == "pol_angle0")
                {
                    if (value == "random")
                        p.pol_angle0.reset();
                    else
                        p.pol_angle0 = num();
                }
                else if (field == "chi")
                    p.chi = num();
                else if (field == "depol_phases")
                {
                    if (value == "random")
                        p.depol_phases.reset();
                    else
                    {
                        const auto v = parse_double_list(value, line, key);
                        if (v.size() != 4)
                            throw parse_error(where(line, key) + ": expected 4 phases (HH HV VH VV) or 'random'");
                        p.depol_phases = std::array<double, 4>{v[0], v[1], v[2], v[3]};
                    }
                }
                else if (field == "visibility")
                {
                    if (value == "all")
                    {
                        p.visibility_all = true;
                        p.visibility.reset();
                    }
                    else
                    {
                        const auto dash = value.find('-');
                        if (dash == std::string::npos)
                            throw parse_error(where(line, key) + ": expected '<lo>-<hi>' (1-based) or 'all'");
                        const int lo = static_cast<int>(parse_int(trim(value.substr(0, dash)), line, key));
                        const int hi = static_cast<int>(parse_int(trim(value.substr(dash + 1)), line, key));
                        // documents are 1-based; internal indices 0-based
                        p.visibility = std::make_pair(lo - 1, hi - 1);
                        p.visibility_all = false;
                    }
                }
                else
                    throw parse_error(where(line, key) + ": unknown path field '" + field + "'");
            }
            else
                throw parse_error(where(line, key) + ": unknown key");
        }

        void fail(const std::string &invariant)
        {
            throw constraint_error("constraint violation: " + invariant);
        }

        // Deterministic width of a random contiguous VR window.
        int random_vr_width(const ScenarioConfig &c)
        {
            return std::max(1, static_cast<int>(std::floor(c.vr_fraction * c.array.n_elements)));
        }

        // Smallest VR size over all paths (explicit windows or the random
        // window width), used by the fairness floor check.
        int min_vr_size(const ScenarioConfig &c)
        {
            const int n = c.array.n_elements;
            int s_min = n;
            bool any_random = c.paths.empty();
            for (const auto &p : c.paths)
            {
                if (p.visibility_all)
                    s_min = std::min(s_min, n);
                else if (p.visibility)
                    s_min = std::min(s_min, p.visibility->second - p.visibility->first + 1);
                else
                    any_random = true;
            }
            if (any_random && !c.vr_full)
                s_min = std::min(s_min, random_vr_width(c));
            return s_min;
        }
    }

    void validate_scenario(const ScenarioConfig &c)
    {
        if (c.array.n_elements < 1)
            fail("n_elements >= 1");
        if (c.array.spacing < 0.0)
            fail("spacing > 0");
        if (c.array.carrier_freq <= 0.0)
            fail("carrier_freq > 0");
        if (c.array.max_gain <= 0.0)
            fail("max_gain > 0");
        if (c.array.pattern == ElementPattern::Patch && c.array.patch_exponent <= 0.0)
            fail("patch exponent k > 0");
        if (c.array.wavelength() <= 0.0)
            fail("wavelength > 0");

        if (c.num_paths_min < 1 || c.num_paths_max < c.num_paths_min)
            fail("num_paths range: 1 <= min <= max");
        if (c.path_distance_min <= 0.0 || c.path_distance_max < c.path_distance_min)
            fail("path_distance: 0 < min <= max");
        if (c.path_aoa_max < c.path_aoa_min)
            fail("path_aoa: min <= max");
        if (c.path_gain_mag < 0.0)
            fail("path_gain_mag >= 0");
        if (c.chi < 0.0 || c.chi > 1.0)
            fail("chi in [0,1]");
        if (!c.vr_full && (c.vr_fraction <= 0.0 || c.vr_fraction > 1.0))
            fail("vr_fraction in (0,1]");

        for (std::size_t i = 0; i < c.paths.size(); ++i)
        {
            const auto &p = c.paths[i];
            const std::string tag = "path." + std::to_string(i + 1) + " ";
            if (p.distance && *p.distance <= 0.0)
                fail(tag + "scatterer_distance > 0");
            if (p.chi && (*p.chi < 0.0 || *p.chi > 1.0))
                fail(tag + "chi in [0,1]");
            if (p.gain_mag && *p.gain_mag < 0.0)
                fail(tag + "gain_mag >= 0");
            if (p.visibility)
            {
                if (p.visibility->first < 0 || p.visibility->second < p.visibility->first ||
                    p.visibility->second >= c.array.n_elements)
                    fail(tag + "visibility within 1..n_elements and non-empty");
            }
        }

        if (c.noise_variance <= 0.0)
            fail("noise_variance > 0");
        if (c.pol_deviation < 0.0)
            fail("pol_deviation >= 0");
        if (c.sop_delta < 0.0 || c.sop_delta > PI / 2.0)
            fail("sop_delta in [0, pi/2]");
        if (c.sop_theta < 0.0 || c.sop_theta >= TWO_PI)
            fail("sop_theta in [0, 2pi)");

        if (c.gamma_comm <= 0.0)
            fail("gamma_comm > 0");
        if (c.gamma_radar <= 0.0)
            fail("gamma_radar > 0");
        if (c.epsilon < 0.0 && c.epsilon != -1.0)
            fail("epsilon >= 0 or auto");
        if (c.selection_mode == SelectionMode::Adaptive &&
            (c.adaptive_lambda <= 0.0 || c.adaptive_lambda >= 1.0))
            fail("adaptive lambda in (0,1)");
        if (c.max_comm_antennas < 0 || c.max_sense_antennas < 0)
            fail("antenna caps >= 0");
        if (c.mitigation_residual < 0.0 || c.mitigation_residual > 1.0)
            fail("mitigation_residual in [0,1]");

        if (c.pfa <= 0.0 || c.pfa >= 1.0)
            fail("pfa in (0,1)");
        if (c.ref_cells < 1)
            fail("ref_cells >= 1");
        if (c.p2_tau < 0.0 && c.p2_tau != -1.0)
            fail("p2_tau >= 0 or auto");
        if (c.p2_sigma <= 0.0 && c.p2_sigma != -1.0)
            fail("p2_sigma > 0 or auto");

        if (c.snr_grid_db.empty())
            fail("snr_grid_db non-empty");
        if (c.trials < 1)
            fail("trials >= 1");
        if (c.threads < 0)
            fail("threads >= 0");

        if (c.ofdm_subcarriers < 2 || !is_power_of_two(static_cast<std::size_t>(c.ofdm_subcarriers)))
            fail("ofdm_subcarriers power of two >= 2");
        if (c.ofdm_cp < 0 || c.ofdm_cp >= c.ofdm_subcarriers)
            fail("ofdm_cp in [0, ofdm_subcarriers)");
        if (c.ofdm_symbols < 1)
            fail("ofdm_symbols >= 1");
        if (c.constellation != "qpsk" && c.constellation != "16qam")
            fail("constellation qpsk | 16qam");
        if (c.chirp_bandwidth <= 0.0)
            fail("chirp_bandwidth > 0");
        if (c.chirp_duration <= 0.0)
            fail("chirp_duration > 0");
        if (c.chirp_pulses < 1)
            fail("chirp_pulses >= 1");
        if (c.sample_rate != 0.0 && c.sample_rate < 2.0 * c.chirp_bandwidth)
            fail("sample_rate >= 2 x chirp_bandwidth");

        // fairness floor: S_min must be coverable by both role caps
        const int s_min = min_vr_size(c);
        if (s_min > c.n_comm_cap())
            fail("fairness floor S_min <= max_comm_antennas");
        if (s_min > c.n_sense_cap())
            fail("fairness floor S_min <= max_sense_antennas");
    }

    ScenarioConfig load_scenario(const std::string &text)
    {
        ScenarioConfig c;
        std::istringstream is(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(is, raw))
        {
            ++line_no;
            const auto hash = raw.find('#');
            std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (l.empty())
                continue;
            const auto eq = l.find('=');
            if (eq == std::string::npos)
                throw parse_error("line " + std::to_string(line_no) + ": expected 'key = value'");
            const std::string key = trim(l.substr(0, eq));
            const std::string value = trim(l.substr(eq + 1));
            if (key.empty())
                throw parse_error("line " + std::to_string(line_no) + ": empty key");
            if (value.empty())
                throw parse_error("line " + std::to_string(line_no) + ", key '" + key + "': empty value");
            apply_kv(c, key, value, line_no);
        }
        validate_scenario(c);
        return c;
    }

    ScenarioConfig load_scenario_file(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw parse_error("cannot open scenario file '" + path + "'");
        std::ostringstream os;
        os << f.rdbuf();
        return load_scenario(os.str());
    }

    void apply_override(ScenarioConfig &config, const std::string &key, const std::string &value)
    {
        apply_kv(config, key, value, 0);
        validate_scenario(config);
    }

    std::string serialize_scenario(const ScenarioConfig &c)
    {
        std::ostringstream os;
        os << "# xljrc scenario (canonical serialization)\n";
        os << "n_elements = " << c.array.n_elements << "\n";
        if (c.array.spacing > 0.0)
            os << "spacing = " << fmt(c.array.spacing) << "\n";
        else
            os << "spacing = half_wavelength\n";
        os << "carrier_freq = " << fmt(c.array.carrier_freq) << "\n";
        os << "max_gain = " << fmt(c.array.max_gain) << "\n";
        switch (c.array.pattern)
        {
        case ElementPattern::Isotropic:
            os << "pattern = isotropic\n";
            break;
        case ElementPattern::Dipole:
            os << "pattern = dipole\n";
            break;
        case ElementPattern::Patch:
            os << "pattern = patch:" << fmt(c.array.patch_exponent) << "\n";
            break;
        }
        os << "xpd_db = " << fmt(c.array.xpd_db) << "\n";

        if (c.num_paths_min == c.num_paths_max)
            os << "num_paths = " << c.num_paths_min << "\n";
        else
            os << "num_paths = " << c.num_paths_min << ".." << c.num_paths_max << "\n";
        os << "path_distance = " << fmt(c.path_distance_min) << " " << fmt(c.path_distance_max) << "\n";
        os << "path_aoa = " << fmt(c.path_aoa_min) << " " << fmt(c.path_aoa_max) << "\n";
        os << "path_gain_mag = " << fmt(c.path_gain_mag) << "\n";
        os << "chi = " << fmt(c.chi) << "\n";
        if (c.vr_full)
            os << "vr_mode = full\n";
        else
            os << "vr_mode = random:" << fmt(c.vr_fraction) << "\n";

        for (std::size_t i = 0; i < c.paths.size(); ++i)
        {
            const auto &p = c.paths[i];
            const std::string k = "path." + std::to_string(i + 1) + ".";
            if (p.aoa)
                os << k << "aoa = " << fmt(*p.aoa) << "\n";
            if (p.distance)
                os << k << "distance = " << fmt(*p.distance) << "\n";
            if (p.gain_mag)
                os << k << "gain_mag = " << fmt(*p.gain_mag) << "\n";
            if (p.gain_phase)
                os << k << "gain_phase = " << fmt(*p.gain_phase) << "\n";
            if (p.pol_angle0)
                os << k << "pol_angle0 = " << fmt(*p.pol_angle0) << "\n";
            if (p.chi)
                os << k << "chi = " << fmt(*p.chi) << "\n";
            if (p.depol_phases)
                os << k << "depol_phases = " << fmt((*p.depol_phases)[0]) << " "
                   << fmt((*p.depol_phases)[1]) << " " << fmt((*p.depol_phases)[2]) << " "
                   << fmt((*p.depol_phases)[3]) << "\n";
            if (p.visibility_all)
                os << k << "visibility = all\n";
            else if (p.visibility)
                os << k << "visibility = " << (p.visibility->first + 1) << "-"
                   << (p.visibility->second + 1) << "\n";
        }

        os << "noise_variance = " << fmt(c.noise_variance) << "\n";
        os << "pol_deviation = " << fmt(c.pol_deviation) << "\n";
        os << "pol_gradient = " << (c.pol_gradient ? "on" : "off") << "\n";
        os << "sop_delta = " << fmt(c.sop_delta) << "\n";
        os << "sop_theta = " << fmt(c.sop_theta) << "\n";
        os << "gamma_comm = " << fmt(c.gamma_comm) << "\n";
        os << "gamma_radar = " << fmt(c.gamma_radar) << "\n";
        os << "epsilon = " << (c.epsilon < 0.0 ? std::string("auto") : fmt(c.epsilon)) << "\n";
        if (c.selection_mode == SelectionMode::Fairness)
            os << "selection_mode = fairness\n";
        else
            os << "selection_mode = adaptive:" << fmt(c.adaptive_lambda) << "\n";
        os << "max_comm_antennas = " << c.max_comm_antennas << "\n";
        os << "max_sense_antennas = " << c.max_sense_antennas << "\n";
        os << "mitigation_residual = " << fmt(c.mitigation_residual) << "\n";
        os << "pfa = " << fmt(c.pfa) << "\n";
        os << "ref_cells = " << c.ref_cells << "\n";
        os << "p2_tau = " << (c.p2_tau < 0.0 ? std::string("auto") : fmt(c.p2_tau)) << "\n";
        os << "p2_sigma = " << (c.p2_sigma < 0.0 ? std::string("auto") : fmt(c.p2_sigma)) << "\n";
        os << "snr_grid_db =";
        for (double v : c.snr_grid_db)
            os << " " << fmt(v);
        os << "\n";
        os << "seed = " << c.seed << "\n";
        os << "trials = " << c.trials << "\n";
        os << "threads = " << c.threads << "\n";
        os << "ofdm_subcarriers = " << c.ofdm_subcarriers << "\n";
        os << "ofdm_cp = " << c.ofdm_cp << "\n";
        os << "ofdm_symbols = " << c.ofdm_symbols << "\n";
        os << "constellation = " << c.constellation << "\n";
        os << "chirp_bandwidth = " << fmt(c.chirp_bandwidth) << "\n";
        os << "chirp_duration = " << fmt(c.chirp_duration) << "\n";
        os << "chirp_pulses = " << c.chirp_pulses << "\n";
        os << "sample_rate = " << (c.sample_rate == 0.0 ? std::string("auto") : fmt(c.sample_rate)) << "\n";
        return os.str();
    }

    std::string NearFieldReport::to_text() const
    {
        std::ostringstream os;
        for (const auto &e : entries)
        {
            os << e.label << ": d = " << e.distance << " m, 2D^2/lambda = " << e.fraunhofer
               << " m -> " << (e.near_field ? "near-field" : "far-field") << "\n";
        }
        return os.str();
    }

    NearFieldReport near_field_check(const ScenarioConfig &c)
    {
        const double d_aperture = c.array.aperture();
        const double fraunhofer = 2.0 * d_aperture * d_aperture / c.array.wavelength();

        NearFieldReport report;
        auto add = [&](const std::string &label, double dist) {
            NearFieldEntry e;
            e.label = label;
            e.distance = dist;
            e.fraunhofer = fraunhofer;
            e.near_field = dist < fraunhofer; // strict: the boundary itself is far-field
            report.entries.push_back(e);
        };

        bool any_random_distance = c.paths.empty();
        for (std::size_t i = 0; i < c.paths.size(); ++i)
        {
            if (c.paths[i].distance)
                add("path " + std::to_string(i + 1), *c.paths[i].distance);
            else
                any_random_distance = true;
        }
        if (any_random_distance)
        {
            add("distance range lo", c.path_distance_min);
            add("distance range hi", c.path_distance_max);
        }
        return report;
    }

    std::vector<PathConfig> realize_paths(const ScenarioConfig &c, RngStream &rng)
    {
        const int n = c.array.n_elements;
        std::size_t count;
        if (!c.paths.empty())
            count = c.paths.size();
        else if (c.num_paths_min == c.num_paths_max)
            count = static_cast<std::size_t>(c.num_paths_min);
        else
            count = static_cast<std::size_t>(
                c.num_paths_min +
                static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(c.num_paths_max - c.num_paths_min + 1))));

        static const PathTemplate kEmpty{};
        std::vector<PathConfig> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const PathTemplate &t = (i < c.paths.size()) ? c.paths[i] : kEmpty;
            PathConfig p;
            const double mag = t.gain_mag.value_or(c.path_gain_mag);
            const double phase = t.gain_phase ? *t.gain_phase : rng.uniform(0.0, TWO_PI);
            p.gain = std::polar(mag, phase);
            p.aoa = t.aoa ? *t.aoa : rng.uniform(c.path_aoa_min, c.path_aoa_max);
            p.scatterer_distance =
                t.distance ? *t.distance : rng.uniform(c.path_distance_min, c.path_distance_max);
            p.pol_angle0 = t.pol_angle0 ? *t.pol_angle0 : rng.uniform(0.0, TWO_PI);
            p.chi = t.chi.value_or(c.chi);
            if (t.depol_phases)
                p.depol_phases = *t.depol_phases;
            else
                for (auto &a : p.depol_phases)
                    a = rng.uniform(0.0, TWO_PI);

            p.visibility.assign(static_cast<std::size_t>(n), false);
            if (t.visibility_all || (c.vr_full && !t.visibility))
            {
                p.visibility.assign(static_cast<std::size_t>(n), true);
            }
            else if (t.visibility)
            {
                for (int a = t.visibility->first; a <= t.visibility->second; ++a)
                    p.visibility[static_cast<std::size_t>(a)] = true;
            }
            else
            {
                const int width = random_vr_width(c);
                const int start = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - width + 1)));
                for (int a = start; a < start + width; ++a)
                    p.visibility[static_cast<std::size_t>(a)] = true;
            }
            out.push_back(std::move(p));
        }
        return out;
    }
}
