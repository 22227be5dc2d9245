/*
 * Copyright 2026 the finslerfoot authors
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

/* C interface of the finslerfoot shared library: distance-to-boundary fields
 * under Finsler metrics, conjugate-point and cut-locus detection, and the
 * identity-verification pipeline. Sessions are opaque handles created from a
 * JSON configuration; all functions are synchronous. A session may be used
 * from one thread at a time (internal parallelism is configured separately).
 */
#ifndef FINSLERFOOT_H
#define FINSLERFOOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FF_API __declspec(dllexport)
#else
#define FF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ff_status {
    FF_OK = 0,
    FF_CHECKS_FAILED = 1,   /* a verification check failed */
    FF_CONFIG_ERROR = 2,    /* malformed or inconsistent configuration */
    FF_DOMAIN_ERROR = 3,    /* inputs outside the operation's domain */
    FF_NUMERIC_ERROR = 4,   /* a solver diverged */
    FF_IO_ERROR = 5,        /* filesystem failure */
    FF_INVALID_ARGUMENT = 6 /* null handle or bad parameter */
} ff_status;

typedef struct ff_session ff_session;

FF_API const char* ff_version(void);

/* Create a session from JSON configuration text or a file path. On failure
 * returns the status and, when errbuf is non-null, a diagnostic message. */
FF_API ff_status ff_session_open(const char* config_json_text, ff_session** out,
                                 char* errbuf, size_t errbuf_len);
FF_API ff_status ff_session_open_file(const char* config_path, ff_session** out,
                                      char* errbuf, size_t errbuf_len);
FF_API void ff_session_close(ff_session* session);

/* Message of the most recent failure on this session ("" if none). */
FF_API const char* ff_session_error(const ff_session* session);

FF_API int ff_session_dimension(const ff_session* session);
FF_API void ff_session_set_threads(ff_session* session, int threads);
FF_API void ff_session_set_seed(ff_session* session, uint64_t seed);

/* Run a subcommand: "field" | "conjugate" | "cutlocus" | "secondvar" |
 * "verify". Artifacts (CSV, PPM, report.json, summary.txt) are written into
 * out_dir, which is created if needed. FF_CHECKS_FAILED means the run
 * completed but at least one verification check failed. */
FF_API ff_status ff_run(ff_session* session, const char* command, const char* out_dir);

/* phi(xi; v); arrays of length dimension. */
FF_API ff_status ff_metric_eval(ff_session* session, const double* xi, const double* v,
                                double* phi_out);

/* Distance from the boundary to an interior point (dimension 2). Optional
 * outputs: the closest boundary point and the distance gradient. */
FF_API ff_status ff_distance(ff_session* session, const double* point, double* d_out,
                             double* foot_out, double* grad_out);

/* Conjugate distance along the normal geodesic from boundary parameter u;
 * s_star_out is set to +infinity when the geodesic never focuses in range. */
FF_API ff_status ff_conjugate_distance(ff_session* session, double u, double* s_star_out);

#ifdef __cplusplus
}
#endif

#endif
