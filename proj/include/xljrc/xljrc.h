/* SPDX-License-Identifier: Apache-2.0
 *
 * xljrc - dual-polarized XL-MIMO joint radar and communication simulator
 * Copyright (C) 2025-2026 the xljrc developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the xljrc shared library. All simulation state lives
 * behind the opaque scenario handle; every entry point returns a status
 * code and leaves a thread-local diagnostic retrievable with
 * xljrc_last_error().
 */

#ifndef XLJRC_H
#define XLJRC_H

#include <stdint.h>

#if defined _WIN32
#define XLJRC_API __declspec(dllexport)
#else
#define XLJRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C"
{
#endif

    typedef struct xljrc_scenario xljrc_scenario; /* opaque */

    typedef enum xljrc_status
    {
        XLJRC_OK = 0,
        XLJRC_ERR_PARSE = 1,      /* malformed scenario document */
        XLJRC_ERR_CONSTRAINT = 2, /* named configuration invariant violated */
        XLJRC_ERR_INVALID_ARG = 3,
        XLJRC_ERR_IO = 4,
        XLJRC_ERR_INTERNAL = 5
    } xljrc_status;

    /* Library version, e.g. "0.1.0". */
    XLJRC_API const char *xljrc_version(void);

    /* Diagnostic text of the last failing call on this thread ("" if none). */
    XLJRC_API const char *xljrc_last_error(void);

    /* --- scenario lifecycle ------------------------------------------- */

    XLJRC_API xljrc_status xljrc_scenario_load_file(const char *path, xljrc_scenario **out);
    XLJRC_API xljrc_status xljrc_scenario_load_string(const char *text, xljrc_scenario **out);
    XLJRC_API void xljrc_scenario_free(xljrc_scenario *scenario);

    /* Applies one "key" / "value" override (same grammar as the document)
     * and re-validates. */
    XLJRC_API xljrc_status xljrc_scenario_set(xljrc_scenario *scenario, const char *key,
                                              const char *value);

    /* Canonical serialization of the resolved configuration. The returned
     * buffer is owned by the library; free with xljrc_string_free. */
    XLJRC_API xljrc_status xljrc_scenario_to_string(const xljrc_scenario *scenario, char **out);
    XLJRC_API void xljrc_string_free(char *text);

    /* Near-field classification of every configured path distance. */
    XLJRC_API xljrc_status xljrc_near_field_report(const xljrc_scenario *scenario, char **out);

    /* --- simulation --------------------------------------------------- */

    /* Runs the Monte Carlo sweep and writes trials/aggregate/roc files.
     *   axis:     "snr" | "pol_shift" | "n_elements" | "chi"
     *   axis_csv: comma-separated axis values; NULL or "" uses the
     *             scenario's SNR grid (snr axis only)
     *   arms_csv: comma-separated subset of proposed_as, all_on, random_k,
     *             top_power_k, no_mitigation
     *   trials:   trials per axis point; 0 uses the scenario value
     *   format:   "csv" | "json" | "both"
     */
    XLJRC_API xljrc_status xljrc_run_sweep(const xljrc_scenario *scenario, const char *axis,
                                           const char *axis_csv, const char *arms_csv, int trials,
                                           const char *out_dir, const char *format);

    /* One channel realization in column text (antenna index, four complex
     * block entries). */
    XLJRC_API xljrc_status xljrc_dump_channel(const xljrc_scenario *scenario, uint64_t seed,
                                              int trial, const char *out_path);

    /* Figure data generators: pol_heatmap | power_imbalance | sinr_vs_snr |
     * se | ser | pd | roc | ddmap. */
    XLJRC_API xljrc_status xljrc_figure_data(const xljrc_scenario *scenario, const char *kind,
                                             const char *out_dir);

    /* Selection complexity benchmark over comma-separated grids. */
    XLJRC_API xljrc_status xljrc_bench_complexity(const char *n_grid_csv, const char *k_grid_csv,
                                                  const char *l_grid_csv, uint64_t seed,
                                                  const char *out_path);

#ifdef __cplusplus
}
#endif

#endif /* XLJRC_H */
