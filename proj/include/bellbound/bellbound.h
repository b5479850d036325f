/* Copyright 2026 The bellbound Authors
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

/* C interface to bellbound: CHSH bounds for unsharp two-qubit measurements.
 *
 * Every function returns a bb_status. On failure a description of the error
 * is available from bb_last_error() on the calling thread until the next call
 * into the library from that thread. Strings returned through char** out
 * parameters are owned by the caller and must be released with
 * bb_string_free().
 */

#ifndef BELLBOUND_BELLBOUND_H
#define BELLBOUND_BELLBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BB_API __declspec(dllexport)
#else
#define BB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bb_status {
  BB_OK = 0,
  BB_ERR_INVALID_INPUT = 1,
  BB_ERR_CONSTRAINT = 2,    /* strength + |bias| > 1 */
  BB_ERR_UNPHYSICAL = 3,    /* state fails the physicality check */
  BB_ERR_DOMAIN = 4,        /* criterion precondition not met */
  BB_ERR_CONSTRUCTION = 5,  /* achieving configuration fell short */
  BB_ERR_INTERNAL = 6,      /* internal consistency check failed */
  BB_ERR_PARSE = 7,         /* malformed JSON or scenario file */
  BB_ERR_AUDIT_FAILED = 8   /* audit found an overshoot or undershoot */
} bb_status;

typedef enum bb_state_kind {
  BB_STATE_TSTATE = 0,
  BB_STATE_GENERAL = 1,
  BB_STATE_PURE = 2
} bb_state_kind;

typedef struct bb_state bb_state;
typedef struct bb_audit bb_audit;

typedef struct bb_observable {
  double bias;
  double strength;
  double direction[3];
} bb_observable;

typedef struct bb_strengths {
  double sx, sxp, sy, syp;
} bb_strengths;

typedef struct bb_angles {
  double theta, phi;
} bb_angles;

typedef struct bb_bound_report {
  double value;
  int violated;
  int has_angles;
  bb_angles optimal_angles;
  char criterion[24];
} bb_bound_report;

/* Observables in the order x, xp, y, yp. */
typedef struct bb_achieving_config {
  bb_observable observables[4];
  double target_bound;
  double attained_chsh;
  char recipe[16];
} bb_achieving_config;

BB_API const char* bb_version(void);
BB_API const char* bb_last_error(void);
BB_API const char* bb_status_name(bb_status status);
BB_API void bb_string_free(char* s);

/* --- states --------------------------------------------------------------- */

BB_API bb_status bb_state_singlet(bb_state** out);
BB_API bb_status bb_state_werner(double w, bb_state** out);
BB_API bb_status bb_state_bell_diagonal(double t1, double t2, double t3, bb_state** out);
/* t is row-major 3x3. */
BB_API bb_status bb_state_from_fano(const double a[3], const double b[3],
                                    const double t[9], bb_state** out);
BB_API bb_status bb_state_random(uint64_t seed, bb_state_kind kind, bb_state** out);
BB_API void bb_state_free(bb_state* state);
BB_API bb_status bb_state_fano(const bb_state* state, double a[3], double b[3],
                               double t[9]);
BB_API bb_status bb_state_is_t_state(const bb_state* state, int* out);
BB_API bb_status bb_state_singular_values(const bb_state* state, double out[3]);

/* --- evaluation ------------------------------------------------------------- */

/* observables: x, xp, y, yp. out receives the canonical CHSH value. */
BB_API bb_status bb_chsh(const bb_state* state, const bb_observable observables[4],
                         double* out);

/* angles may be NULL for criteria that optimize them. biased selects the
 * T-state variants of thm3 and thm4. sgen is not available here; use
 * bb_sgen with explicit observables. */
BB_API bb_status bb_bound(const bb_state* state, const char* criterion,
                          const bb_strengths* strengths, const bb_angles* angles,
                          int biased, bb_bound_report* out);

BB_API bb_status bb_sgen(const bb_state* state, const bb_observable observables[4],
                         bb_bound_report* out);

BB_API bb_status bb_j_max(const bb_strengths* strengths, double* out);

BB_API bb_status bb_achieve(const bb_state* state, const char* criterion,
                            const bb_strengths* strengths, const bb_angles* angles,
                            int biased, bb_achieving_config* out);

/* Compatibility verdicts for a pair of observables. busch is -1 for biased
 * pairs, otherwise 0 or 1. */
BB_API bb_status bb_compat(const bb_observable* x, const bb_observable* xp, int* busch,
                           int* necessary, int* full);

/* --- audits ------------------------------------------------------------------ */

BB_API bb_status bb_audit_run(const char* criterion, int trials, uint64_t seed,
                              double tolerance, int restarts, bb_audit** out);
BB_API void bb_audit_free(bb_audit* audit);
BB_API bb_status bb_audit_summary(const bb_audit* audit, int* passed,
                                  double* max_overshoot, double* max_undershoot);
BB_API bb_status bb_audit_row_count(const bb_audit* audit, size_t* out);
BB_API bb_status bb_audit_row(const bb_audit* audit, size_t index, uint64_t* seed,
                              double* bound, double* oracle);
BB_API bb_status bb_audit_failing_seeds(const bb_audit* audit, uint64_t* seeds,
                                        size_t capacity, size_t* count);

/* --- JSON commands ------------------------------------------------------------ */

/* criterion may be NULL (all criteria). */
BB_API bb_status bb_cmd_bound(const char* scenario_json, const char* criterion,
                              char** out_json);
/* criterion may be NULL (chosen from the scenario). */
BB_API bb_status bb_cmd_achieve(const char* scenario_json, const char* criterion,
                                int biased, char** out_json);
BB_API bb_status bb_cmd_compat(const char* pair_json, char** out_json);
/* params_json: {"family", "from", "to", "steps", "strength"?, "state"?}.
 * format: "csv" or "json". */
BB_API bb_status bb_cmd_scan(const char* params_json, const char* format, char** out);
/* Returns BB_ERR_AUDIT_FAILED with the report still written to out when the
 * audit fails; bb_last_error() then lists the failing seeds. */
BB_API bb_status bb_cmd_verify(const char* criterion, int trials, uint64_t seed,
                               double tolerance, int restarts, const char* format,
                               char** out);

#ifdef __cplusplus
}
#endif

#endif /* BELLBOUND_BELLBOUND_H */
