/*
 * Copyright 2026 The dmkt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the data-market entry game solver.
 *
 * Conventions:
 *  - Every fallible call returns a dmkt_status. On failure a message is
 *    available from dmkt_last_error() on the calling thread until the next
 *    failing call; configuration failures also set dmkt_last_error_key().
 *  - Objects are opaque handles created by dmkt_*_create / dmkt_*_run /
 *    dmkt_solve_* and released with the matching dmkt_*_destroy. Destroy
 *    functions accept NULL.
 *  - Results are copied into caller-owned plain structs.
 *  - Handles are immutable after creation except dmkt_params; distinct
 *    handles may be used from different threads concurrently.
 */

#ifndef DMKT_H
#define DMKT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DMKT_BUILDING)
#    define DMKT_API __declspec(dllexport)
#  else
#    define DMKT_API __declspec(dllimport)
#  endif
#else
#  define DMKT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmkt_status {
  DMKT_OK = 0,
  DMKT_ERR_ARGUMENT = 1,      /* null pointer, index out of range */
  DMKT_ERR_DOMAIN = 2,        /* argument outside a function's domain */
  DMKT_ERR_CONFIG = 3,        /* invalid or unknown parameter / setting */
  DMKT_ERR_SOLVER = 4,        /* numerical failure, no feasible branch */
  DMKT_ERR_INDETERMINATE = 5, /* classification inside the dead-band */
  DMKT_ERR_IO = 6,
  DMKT_ERR_INTERNAL = 99
} dmkt_status;

typedef enum dmkt_regime {
  DMKT_REGIME_NONE = -1,
  DMKT_REGIME_BLOCKADE = 0,
  DMKT_REGIME_DETER = 1,
  DMKT_REGIME_ACCOMMODATE = 2
} dmkt_regime;

typedef enum dmkt_mode {
  DMKT_MODE_DETER = 0,
  DMKT_MODE_ACCOMMODATE = 1
} dmkt_mode;

typedef enum dmkt_taxonomy {
  DMKT_TAXONOMY_INDETERMINATE = -1,
  DMKT_TAXONOMY_TOP_DOG = 0,
  DMKT_TAXONOMY_PUPPY_DOG = 1,
  DMKT_TAXONOMY_LEAN_AND_HUNGRY = 2,
  DMKT_TAXONOMY_FAT_CAT = 3
} dmkt_taxonomy;

DMKT_API const char* dmkt_version(void);
DMKT_API const char* dmkt_status_string(dmkt_status status);
DMKT_API const char* dmkt_last_error(void);
DMKT_API const char* dmkt_last_error_key(void);
DMKT_API const char* dmkt_regime_name(int regime);
DMKT_API const char* dmkt_taxonomy_name(int taxonomy);

/* ---- parameters ------------------------------------------------------- */

/* Market constants (eta_max, eta_0, k, delta, c, c0, F) plus solver settings
 * (grid_n, stage0_grid_n, tol_x, tol_fp, max_iter, damping, hi_factor,
 * eps_det, fd_step, dead_band), all addressed by name. Values are stored as
 * given and validated as a whole by dmkt_params_validate and by every solve
 * call, so fields may be set in any order. */
typedef struct dmkt_params dmkt_params;

DMKT_API dmkt_status dmkt_params_create(dmkt_params** out);
DMKT_API dmkt_status dmkt_params_clone(const dmkt_params* p, dmkt_params** out);
DMKT_API void dmkt_params_destroy(dmkt_params* p);
DMKT_API dmkt_status dmkt_params_set(dmkt_params* p, const char* key,
                                     double value);
DMKT_API dmkt_status dmkt_params_get(const dmkt_params* p, const char* key,
                                     double* out);
DMKT_API dmkt_status dmkt_params_validate(const dmkt_params* p);
DMKT_API size_t dmkt_params_key_count(void);
DMKT_API const char* dmkt_params_key(size_t index);

/* ---- closed-form primitives ------------------------------------------ */

typedef struct dmkt_profits {
  double pi1;
  double pi2;
  double pi_p1;
  double pi_p0;
  double sw;
} dmkt_profits;

DMKT_API dmkt_status dmkt_derive_dm(const dmkt_params* p, double* out);
DMKT_API dmkt_status dmkt_scale_value(const dmkt_params* p, double d,
                                      double* out);
DMKT_API dmkt_status dmkt_scope_value(const dmkt_params* p, double d1,
                                      double d2, double* out);
DMKT_API dmkt_status dmkt_aggregator_profits(const dmkt_params* p, double d0,
                                             double d1, double d2, int entered,
                                             dmkt_profits* out);

/* ---- stage 2 / stage 1 ------------------------------------------------ */

typedef struct dmkt_fixed_point_report {
  int converged;
  int iterations;
  double residual;
} dmkt_fixed_point_report;

typedef struct dmkt_monopsony {
  double d1m;
  double w;
  double pi1;
} dmkt_monopsony;

typedef struct dmkt_duopsony {
  double d1;
  double d2;
  double w;
  double pi1;
  double pi2;
  dmkt_fixed_point_report report;
} dmkt_duopsony;

DMKT_API dmkt_status dmkt_solve_monopsony(const dmkt_params* p, double d0,
                                          dmkt_monopsony* out);
/* A non-converged fixed point is not an error; check out->report. */
DMKT_API dmkt_status dmkt_solve_duopsony(const dmkt_params* p, double d0,
                                         dmkt_duopsony* out);
/* 1 if the challenger enters at this equilibrium (pi2 >= 0), else 0. */
DMKT_API int dmkt_entry_decision(const dmkt_duopsony* eq);

/* ---- stage 0 / full equilibrium -------------------------------------- */

typedef struct dmkt_outcome dmkt_outcome;

typedef struct dmkt_spne_summary {
  int regime; /* dmkt_regime */
  double d0;
  double w0;
  int entered;
  double d1;
  double d2;
  double w;
  dmkt_profits profits;
  dmkt_fixed_point_report downstream_report; /* trivial for monopsony */

  int deter_feasible;
  double d0_det;
  double pi1_det;
  int blockaded;
  double pi2_counterfactual; /* duopsony pi2 at d0_det */

  int accommodate_feasible;
  double d0_acc;
  double pi1_acc;
  double pi2_acc;

  double d0_monopsony; /* unconstrained optimum */
  int invalid_points;
  size_t warning_count;
} dmkt_spne_summary;

DMKT_API dmkt_status dmkt_solve_spne(const dmkt_params* p, dmkt_outcome** out);
DMKT_API void dmkt_outcome_destroy(dmkt_outcome* o);
DMKT_API dmkt_status dmkt_outcome_summary(const dmkt_outcome* o,
                                          dmkt_spne_summary* out);
/* NULL when index is out of range. Owned by the outcome. */
DMKT_API const char* dmkt_outcome_warning(const dmkt_outcome* o, size_t index);

/* ---- strategic effects ------------------------------------------------ */

typedef struct dmkt_diagnostics {
  double d0;
  double d1;
  double d2;
  double sed;
  double sea;
  double direct_effect;
  double slope_br2;
  double slope_br1;
  double dpi2_dd1;
  double dpi1_dd2;
  double dd1_dd0;
  double dd2_dd0;
  double pi1_direct_effect;
  double pi1_total_derivative;
  int substitutes;
  int consistency_ok;
  int ill_conditioned;
  int taxonomy; /* dmkt_taxonomy */
  int mode;     /* dmkt_mode */
} dmkt_diagnostics;

/* h <= 0 uses the fd_step setting. */
DMKT_API dmkt_status dmkt_strategic_effects(const dmkt_params* p, double d0,
                                            double h, int mode,
                                            dmkt_diagnostics* out);
/* DMKT_ERR_INDETERMINATE inside the dead-band; *taxonomy is then
 * DMKT_TAXONOMY_INDETERMINATE. */
DMKT_API dmkt_status dmkt_classify_strategy(const dmkt_diagnostics* d,
                                            int mode, double dead_band,
                                            int* taxonomy);

/* ---- comparative statics --------------------------------------------- */

typedef struct dmkt_sweep dmkt_sweep;

typedef struct dmkt_sweep_row {
  double param_value;
  double F;
  int regime; /* DMKT_REGIME_NONE when the row failed */

  int deter_feasible;
  double d0_det;
  double pi1_det;
  int blockaded;
  int accommodate_feasible;
  double d0_acc;
  double pi1_acc;
  double d0_mon;

  double d0;
  double d1;
  double d2;
  double w;
  double w0;
  dmkt_profits profits;

  int has_profits_det;
  dmkt_profits profits_det;
  int has_profits_acc;
  dmkt_profits profits_acc;

  int has_diagnostics;
  double sed;
  double sea;
  double slope_br1;
  double slope_br2;
  double direct_effect;
  int invalid_points;
} dmkt_sweep_row;

typedef struct dmkt_welfare_finding {
  int applicable;
  double sw_deter;
  double sw_accommodate;
  double sw_difference;
  int d2_prefers_accommodation;
  int p1_prefers_accommodation;
  int p0_prefers_deterrence;
  int d1_prefers_deterrence;
} dmkt_welfare_finding;

/* parameter is "c0", "delta" or "F". f_levels is ignored for an F sweep.
 * threads <= 0 uses the hardware concurrency. */
DMKT_API dmkt_status dmkt_sweep_run(const dmkt_params* base,
                                    const char* parameter, const double* grid,
                                    size_t grid_size, const double* f_levels,
                                    size_t f_level_count, int threads,
                                    dmkt_sweep** out);
DMKT_API void dmkt_sweep_destroy(dmkt_sweep* s);
DMKT_API size_t dmkt_sweep_row_count(const dmkt_sweep* s);
DMKT_API dmkt_status dmkt_sweep_row_get(const dmkt_sweep* s, size_t index,
                                        dmkt_sweep_row* out);
/* Empty string when the row solved; NULL when index is out of range. */
DMKT_API const char* dmkt_sweep_row_error(const dmkt_sweep* s, size_t index);
DMKT_API dmkt_status dmkt_sweep_welfare(const dmkt_sweep* s, size_t index,
                                        dmkt_welfare_finding* out);

/* One CSV file per F level (a single file for an F sweep). */
DMKT_API size_t dmkt_sweep_file_count(const dmkt_sweep* s);
/* Copies the file name (NUL-terminated) into buf when it fits; *needed
 * receives the required size including the terminator. */
DMKT_API dmkt_status dmkt_sweep_file_name(const dmkt_sweep* s, size_t index,
                                          char* buf, size_t capacity,
                                          size_t* needed);
DMKT_API dmkt_status dmkt_sweep_file_contents(const dmkt_sweep* s,
                                              size_t index, char* buf,
                                              size_t capacity, size_t* needed);
/* Writes every file into an existing directory. */
DMKT_API dmkt_status dmkt_sweep_write_csv(const dmkt_sweep* s,
                                          const char* directory);

/* Default grid for a parameter; dense >= 2 asks for that many points. */
DMKT_API dmkt_status dmkt_default_grid(const char* parameter, int dense,
                                       double* buf, size_t capacity,
                                       size_t* count);
DMKT_API dmkt_status dmkt_default_f_levels(double* buf, size_t capacity,
                                           size_t* count);

/* ---- oracle self-test ------------------------------------------------- */

typedef struct dmkt_selftest_report {
  size_t draws;
  size_t passed;
  double max_monopsony_gap;
  double max_duopsony_gap;
  double tolerance;
  int pass;
} dmkt_selftest_report;

/* Solver settings are taken from p; market constants are drawn at random. */
DMKT_API dmkt_status dmkt_selftest(const dmkt_params* p, uint64_t seed,
                                   int draws, dmkt_selftest_report* out);

#ifdef __cplusplus
}
#endif

#endif /* DMKT_H */
