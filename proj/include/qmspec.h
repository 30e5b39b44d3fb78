/* Copyright 2026 the qmspec authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the qmspec shared library.
 *
 * All functions returning qms_status never throw; on failure they return a
 * nonzero status and qms_last_error() describes the problem (thread-local).
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with qms_string_free().  Points are passed as arrays of 2*d
 * doubles, re/im interleaved: (re z1, im z1, ..., re zd, im zd).
 */

#ifndef QMSPEC_H
#define QMSPEC_H

#if defined(_WIN32)
#if defined(QMSPEC_BUILD)
#define QMS_API __declspec(dllexport)
#else
#define QMS_API __declspec(dllimport)
#endif
#else
#define QMS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qms_status {
  QMS_OK = 0,
  QMS_ERR_INVALID_ARGUMENT = 1, /* malformed or degenerate input */
  QMS_ERR_PARSE = 2,            /* malformed JSON */
  QMS_ERR_IO = 3,               /* file open/read/write failure */
  QMS_ERR_DOMAIN = 4,  /* outside the mathematical domain of the call */
  QMS_ERR_NUMERICAL = 5, /* numerical breakdown during the computation */
  QMS_ERR_INTERNAL = 6
} qms_status;

/* Opaque handle: a validated kernel model with its quotient tuple, defect
 * data, characteristic-function evaluator, grid, and tolerances. */
typedef struct qms_model qms_model;

QMS_API const char* qms_version(void);
QMS_API const char* qms_status_name(qms_status status);

/* Message of the most recent failure on this thread; empty if none. */
QMS_API const char* qms_last_error(void);

QMS_API void qms_string_free(char* s);

/* Accepts either a bare kernel-model document {"d", "m", "nodes": [...]} or
 * a full scenario document {"model": ..., "grid": ..., "tolerances": ...,
 * "checks": [...]}.  A bare model gets the default grid and tolerances. */
QMS_API qms_status qms_model_create_json(const char* json_text,
                                         qms_model** out);
QMS_API qms_status qms_model_create_file(const char* path, qms_model** out);
QMS_API void qms_model_destroy(qms_model* model);

/* Overrides the sampling seed stored in the handle's grid. */
QMS_API qms_status qms_model_set_seed(qms_model* model,
                                      unsigned long long seed);

QMS_API int qms_model_vars(const qms_model* model);            /* d */
QMS_API int qms_model_dim(const qms_model* model);             /* n */
QMS_API int qms_model_defect_dim(const qms_model* model);      /* dim D_T */
QMS_API int qms_model_defect_star_dim(const qms_model* model); /* dim D_T* */

/* Characteristic function at a point of the extension domain: JSON with the
 * matrix (in the pinned defect bases), surjectivity margin, cokernel
 * dimension, dual-identity residual, and conditioning. */
QMS_API qms_status qms_charfn_eval(const qms_model* model, const double* point,
                                   char** json_out);

/* Homology dimensions h_0..h_d of the chain complex at the given shift,
 * with the spectral flags and the surjectivity margin of the shifted row. */
QMS_API qms_status qms_koszul_hvector(const qms_model* model,
                                      const double* point, char** json_out);

/* Joint-eigenvalue candidates with their h-vectors, spectral flags, and
 * characteristic-function margins. */
QMS_API qms_status qms_joint_spectrum(const qms_model* model, char** json_out);

/* Three-way spectrum comparison (candidates, homology-positive subset,
 * margin-zero subset) with symmetric-difference counts. */
QMS_API qms_status qms_compare_spectra(const qms_model* model,
                                       char** json_out);

/* CSV margin scan over the handle's grid: one row per grid point with
 * coordinates, margin, dual residual, and the extension-domain flag. */
QMS_API qms_status qms_scan_margins(const qms_model* model, char** csv_out);

/* Full scenario run.  seed_override < 0 keeps the seed from the document.
 * pass_out receives 1 when every executed check passed, else 0. */
QMS_API qms_status qms_run_scenario_json(const char* json_text,
                                         long long seed_override,
                                         char** report_json_out,
                                         int* pass_out);
QMS_API qms_status qms_run_scenario_file(const char* path,
                                         long long seed_override,
                                         char** report_json_out,
                                         int* pass_out);

#ifdef __cplusplus
}
#endif

#endif /* QMSPEC_H */
