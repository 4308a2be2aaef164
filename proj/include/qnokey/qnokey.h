/*
 * Copyright 2026 The qnokey Authors
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
 * C interface to the qnokey simulator.
 *
 * Every call returns a qnk_status. On failure the message is available from
 * qnk_last_error() until the next failing call on the same thread. Objects
 * are opaque handles owned by the caller and released with the matching
 * *_free function; passing NULL to a *_free function is a no-op. Calls that
 * return a new handle set *out to NULL on failure.
 */

#ifndef QNOKEY_QNOKEY_H
#define QNOKEY_QNOKEY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QNK_API __declspec(dllexport)
#else
#define QNK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qnk_status {
    QNK_OK = 0,
    QNK_ERR_USAGE = 1,        /* invalid input or configuration */
    QNK_ERR_CHECK_FAILED = 2, /* a protocol check rejected, or verify mismatch */
    QNK_ERR_INTERNAL = 3      /* internal invariant violated */
} qnk_status;

typedef struct qnk_boolfn qnk_boolfn;
typedef struct qnk_state qnk_state;
typedef struct qnk_result qnk_result;

QNK_API const char *qnk_version(void);
QNK_API const char *qnk_last_error(void);

/* Boolean functions ------------------------------------------------------ */

/* "k:n:e0,e1,..." hex truth table, or 0, 1, x, xbar for one bit. */
QNK_API qnk_status qnk_boolfn_parse(const char *text, qnk_boolfn **out);
QNK_API qnk_status qnk_boolfn_random(unsigned k, unsigned n, uint64_t seed, qnk_boolfn **out);
QNK_API qnk_status qnk_boolfn_xor(const qnk_boolfn *f, const qnk_boolfn *g, qnk_boolfn **out);
QNK_API qnk_status qnk_boolfn_eval(const qnk_boolfn *f, uint64_t input, uint32_t *out);
/* *out is 1 (bijective), 0 (not), or -1 when arity != width. */
QNK_API qnk_status qnk_boolfn_is_permutation(const qnk_boolfn *f, int *out);
/* Copies the serialized form including the terminator; *needed receives the
 * required buffer size. A NULL or short buffer only reports the size. */
QNK_API qnk_status qnk_boolfn_to_string(const qnk_boolfn *f, char *buf, size_t cap, size_t *needed);
QNK_API void qnk_boolfn_free(qnk_boolfn *f);

/* States ----------------------------------------------------------------- */

/* Registers are listed most significant first. `message` holds interleaved
 * (re, im) pairs for the first register, message_len complex entries; the
 * remaining registers start in |0>. */
QNK_API qnk_status qnk_state_create(const char *const *names, const unsigned *widths, size_t n_registers,
                                    const double *message, size_t message_len, qnk_state **out);
QNK_API qnk_status qnk_state_apply_oracle(qnk_state *s, const qnk_boolfn *f, const char *source,
                                          const char *target);
QNK_API qnk_status qnk_state_apply_hadamard(qnk_state *s, const char *reg);
QNK_API qnk_status qnk_state_attach(qnk_state *s, const char *name, unsigned width);
QNK_API qnk_status qnk_state_detach(qnk_state *s, const char *name);
QNK_API qnk_status qnk_state_zero_probability(const qnk_state *s, const char *reg, double *out);
/* Projective measurement of one register; the state collapses in place. */
QNK_API qnk_status qnk_state_measure(qnk_state *s, const char *reg, uint64_t seed, uint64_t *value,
                                     double *probability);
QNK_API qnk_status qnk_state_fidelity(const qnk_state *a, const qnk_state *b, double *out);
QNK_API qnk_status qnk_state_dimension(const qnk_state *s, size_t *out);
/* Copies min(cap, dimension) amplitudes as (re, im) pairs into `out`. */
QNK_API qnk_status qnk_state_amplitudes(const qnk_state *s, double *out, size_t cap);
QNK_API void qnk_state_free(qnk_state *s);

/* Commands --------------------------------------------------------------- */

/* `request` is a JSON object (see README). On QNK_OK and QNK_ERR_CHECK_FAILED
 * *out holds the document and summary; otherwise *out is NULL. */
QNK_API qnk_status qnk_run(const char *request, qnk_result **out);
QNK_API qnk_status qnk_attack(const char *request, qnk_result **out);
QNK_API qnk_status qnk_analyze(const char *request, qnk_result **out);
QNK_API qnk_status qnk_verify(const char *document, qnk_result **out);

/* Canonical JSON of the output file (no trailing newline). */
QNK_API const char *qnk_result_document(const qnk_result *r);
QNK_API const char *qnk_result_summary(const qnk_result *r);
QNK_API qnk_status qnk_result_status(const qnk_result *r);
QNK_API void qnk_result_free(qnk_result *r);

#ifdef __cplusplus
}
#endif

#endif /* QNOKEY_QNOKEY_H */
