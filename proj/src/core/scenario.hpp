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

#ifndef XLJRC_CORE_SCENARIO_HPP
#define XLJRC_CORE_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace xljrc
{
    // ---------------------------------------------------------------------
    // Array geometry and element pattern
    // ---------------------------------------------------------------------

    enum class ElementPattern
    {
        Isotropic, // f_co = 1
        Dipole,    // f_co = sin(phi)
        Patch      // f_co = cos^k(phi)
    };

    struct ArrayConfig
    {
        int n_elements = 256;       // receive elements in the ULA
        double spacing = 0.0;       // inter-element spacing [m]; 0 = half wavelength
        double carrier_freq = 28e9; // [Hz]
        double max_gain = 1.0;      // peak co-pol element gain (linear)
        ElementPattern pattern = ElementPattern::Dipole;
        double patch_exponent = 2.0; // k for the patch pattern
        double xpd_db = 10.0;        // per-element cross-pol discrimination [dB]

        double wavelength() const { return SPEED_OF_LIGHT / carrier_freq; }
        double element_spacing() const { return spacing > 0.0 ? spacing : 0.5 * wavelength(); }
        double xpd_linear() const { return db_to_linear(xpd_db); }
        // aperture D = (N-1) * spacing
        double aperture() const { return (n_elements - 1) * element_spacing(); }
    };

    // ---------------------------------------------------------------------
    // Propagation paths
    // ---------------------------------------------------------------------

    // Concrete per-path parameters of one channel realization.
    struct PathConfig
    {
        cdouble gain{1.0, 0.0};          // complex path gain beta
        double aoa = 0.0;                // angle of arrival [rad]
        double scatterer_distance = 0.0; // distance of the scatterer to the array center [m]
        double pol_angle0 = 0.0;         // polarization angle at the array center [rad]
        double chi = 0.1;                // depolarization leakage fraction (inverse XPD), in [0,1]
        std::array<double, 4> depol_phases{0, 0, 0, 0}; // alpha HH, HV, VH, VV
        std::vector<bool> visibility;    // one flag per antenna; true = inside the VR
    };

    // Declarative template from which per-trial paths are drawn. Fields left
    // unset in the scenario document are drawn from the trial's rng stream.
    struct PathTemplate
    {
        std::optional<double> gain_mag;   // |beta|; default 1
        std::optional<double> gain_phase; // default: uniform [0, 2pi)
        std::optional<double> aoa;
        std::optional<double> distance;
        std::optional<double> pol_angle0; // default: uniform [0, 2pi)
        std::optional<double> chi;
        std::optional<std::array<double, 4>> depol_phases; // default: iid uniform [0, 2pi)
        std::optional<std::pair<int, int>> visibility;     // 0-based inclusive window; unset = random
        bool visibility_all = false;
    };

    enum class SelectionMode
    {
        Fairness,
        Adaptive
    };

    // ---------------------------------------------------------------------
    // Full experiment description
    // ---------------------------------------------------------------------

    struct ScenarioConfig
    {
        ArrayConfig array;

        // Path generation. If `paths` is non-empty the document enumerated
        // explicit paths; otherwise `num_paths_min..max` random paths are
        // drawn per trial.
        std::vector<PathTemplate> paths;
        int num_paths_min = 1;
        int num_paths_max = 3;
        double path_distance_min = 5.0;  // [m]
        double path_distance_max = 50.0; // [m]
        double path_aoa_min = PI / 6.0;
        double path_aoa_max = 5.0 * PI / 6.0;
        double path_gain_mag = 1.0;
        double chi = 0.1;          // default per-path leakage fraction
        double vr_fraction = 0.5;  // width of random contiguous VR windows
        bool vr_full = false;      // true = every path sees the whole array

        double noise_variance = 1e-3; // sigma_c^2 [W]
        double pol_deviation = 0.0;   // per-element random polarization deviation half-width [rad]
        bool pol_gradient = true;     // apply the geometric near-field polarization gradient
        double sop_delta = PI / 4.0;  // transmit SOP amplitude ratio
        double sop_theta = 0.0;       // transmit SOP phase difference

        double gamma_comm = 0.5;  // cross/co power ratio ceiling for communication antennas
        double gamma_radar = 2.0; // co/cross power ratio floor for sensing antennas
        double epsilon = -1.0;    // near-equal power threshold [W]; -1 = auto (1e-3 x mean antenna power)
        SelectionMode selection_mode = SelectionMode::Fairness;
        double adaptive_lambda = 0.5;
        int max_comm_antennas = 0;  // N_c; 0 = n_elements
        int max_sense_antennas = 0; // N_s; 0 = n_elements
        double mitigation_residual = 0.1; // cross-term amplitude scale after mitigation

        double pfa = 1e-2;
        int ref_cells = 16;
        double p2_tau = -1.0;   // P2 power threshold; -1 = auto (total mean radar power)
        double p2_sigma = -1.0; // P2 noise std; -1 = auto (noise_variance)

        std::vector<double> snr_grid_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
        std::uint64_t seed = 1;
        int trials = 500;
        int threads = 0; // 0 = hardware concurrency

        // Waveform numerology
        int ofdm_subcarriers = 64;
        int ofdm_cp = 16;
        int ofdm_symbols = 16;
        std::string constellation = "qpsk"; // qpsk | 16qam
        double chirp_bandwidth = 100e6;     // [Hz]
        double chirp_duration = 10e-6;      // [s]
        int chirp_pulses = 8;
        double sample_rate = 0.0; // 0 = 2 x chirp_bandwidth

        double sample_rate_effective() const
        {
            return sample_rate > 0.0 ? sample_rate : 2.0 * chirp_bandwidth;
        }
        int n_comm_cap() const { return max_comm_antennas > 0 ? max_comm_antennas : array.n_elements; }
        int n_sense_cap() const { return max_sense_antennas > 0 ? max_sense_antennas : array.n_elements; }
    };

    // ---------------------------------------------------------------------
    // Loading / validation / serialization
    // ---------------------------------------------------------------------

    // Parses the flat key-value scenario document (see docs/scenario_format.md),
    // applies defaults and validates every invariant. Unknown keys are
    // rejected. Throws parse_error / constraint_error.
    ScenarioConfig load_scenario(const std::string &text);
    ScenarioConfig load_scenario_file(const std::string &path);

    // Applies a single "key = value" override on an already-loaded config and
    // re-validates.
    void apply_override(ScenarioConfig &config, const std::string &key, const std::string &value);

    // Canonical serialization; load_scenario(serialize_scenario(c)) == c.
    std::string serialize_scenario(const ScenarioConfig &config);

    // Re-checks every invariant on an assembled config (used after overrides).
    void validate_scenario(const ScenarioConfig &config);

    // ---------------------------------------------------------------------
    // Near-field report
    // ---------------------------------------------------------------------

    struct NearFieldEntry
    {
        std::string label;
        double distance = 0.0;   // scatterer distance probed [m]
        double fraunhofer = 0.0; // 2 D^2 / lambda [m]
        bool near_field = false; // distance < fraunhofer (strict)
    };

    struct NearFieldReport
    {
        std::vector<NearFieldEntry> entries;
        std::string to_text() const;
    };

    // Flags each (explicit or range-endpoint) path distance against the
    // Fraunhofer limit 2 D^2 / lambda. Warns only; never rejects.
    NearFieldReport near_field_check(const ScenarioConfig &config);

    // ---------------------------------------------------------------------
    // Per-trial path realization
    // ---------------------------------------------------------------------

    // Draws the concrete paths of one channel realization. Explicit template
    // fields are kept; unset fields are drawn from `rng`.
    std::vector<PathConfig> realize_paths(const ScenarioConfig &config, RngStream &rng);
}

#endif
