/*
 * Copyright (c) 2026, the reverb project authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the reverb engines. Everything flows through character
 * buffers: programs and traces go in as text, traces, exploration reports
 * and verdicts come back as text owned by an opaque result handle. Status
 * codes double as the CLI exit codes.
 */

#ifndef REVERB_H_
#define REVERB_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rv_status {
  RV_OK = 0,        /* ran to a terminal / all checks passed */
  RV_VIOLATION = 1, /* a conformance check or verification failed */
  RV_USAGE = 2,     /* bad arguments, unparsable program or trace */
  RV_FAULT = 3      /* the executed program hit a runtime fault */
} rv_status;

/* Opaque result: free with rv_result_free. Every call that takes an
 * rv_result** fills it (also on failure, so the error text is readable)
 * unless the pointer itself is NULL. */
typedef struct rv_result rv_result;

typedef struct rv_run_opts {
  const char* semantics; /* "standard" | "rollback" | "reversible" */
  const char* policy;    /* "default" | "random" | "script:PATH" */
  uint64_t seed;         /* consumed by the random policy */
  size_t max_steps;      /* 0 keeps the built-in bound of 10000 */
  int handler;           /* nonzero resumes after the rollback call */
  int snapshots;         /* nonzero embeds a system snapshot per record */
} rv_run_opts;

typedef struct rv_explore_opts {
  const char* semantics; /* as above */
  size_t depth;
  /* Comma-separated subset of wellformed,conservative,soundness,lemma;
   * NULL or "" requests no checks. */
  const char* checks;
} rv_explore_opts;

/* Runs the program under the chosen engine and policy. The result text is
 * the serialized trace (also when the run faulted; the status code tells).
 * opts may be NULL for rollback semantics with the default policy. */
rv_status rv_run(const char* program_text, const rv_run_opts* opts,
                 rv_result** out);

/* Bounded exhaustive exploration; the result text is the report. Returns
 * RV_VIOLATION when any requested check counted a violation. */
rv_status rv_explore(const char* program_text, const rv_explore_opts* opts,
                     rv_result** out);

/* Replays a serialized trace and re-checks it. RV_USAGE when the text is
 * not a trace at all; RV_VIOLATION when replay or a conformance check
 * disagrees. The result text lists the violations, or "ok". */
rv_status rv_verify(const char* trace_text, rv_result** out);

/* Main payload: trace text, report text, or verdict listing. */
const char* rv_result_text(const rv_result* r);
/* Error message for RV_USAGE results, "" otherwise. */
const char* rv_result_error(const rv_result* r);
/* Terminal status of a run ("final", "deadlock", "max-steps",
 * "stuck-backward", "runtime-fault"), "" for other calls. */
const char* rv_result_status(const rv_result* r);

void rv_result_free(rv_result* r);

const char* rv_version(void);

#ifdef __cplusplus
}
#endif

#endif /* REVERB_H_ */
