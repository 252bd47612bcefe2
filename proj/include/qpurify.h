/* Copyright 2026 The qpurify Authors
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

/* C interface to the qpurify library: qubit density matrices, two
 * entanglement-free purification protocols, post-measurement state
 * reconstruction, Kraus channels with an explicit unitary dilation, and the
 * batch experiment runner behind the qpurify CLI.
 *
 * Conventions:
 *  - density matrix entries are row-major with interleaved real/imaginary
 *    parts: re00, im00, re01, im01, re10, im10, re11, im11;
 *  - pure state amplitudes are re0, im0, re1, im1;
 *  - every handle returned through an out-parameter is owned by the caller
 *    and released with the matching _destroy function;
 *  - functions return QP_OK on success; on failure the out-parameters are
 *    untouched and qp_last_error() describes the problem (thread-local,
 *    valid until the next failing call on the same thread).
 */

#ifndef QPURIFY_H
#define QPURIFY_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qp_status {
  QP_OK = 0,
  QP_ERROR_INVALID_ARGUMENT = 1,
  QP_ERROR_NOT_HERMITIAN = 2,
  QP_ERROR_TRACE_NOT_ONE = 3,
  QP_ERROR_NOT_POSITIVE = 4,
  QP_ERROR_BLOCH_OUT_OF_BALL = 5,
  QP_ERROR_DEGENERATE_PROJECTOR = 6,
  QP_ERROR_MAXENT_NOT_POSITIVE = 7,
  QP_ERROR_INCONSISTENT_RECORD = 8,
  QP_ERROR_CONFIG = 9,
  QP_ERROR_IO = 10,
  QP_ERROR_INTERNAL = 11
} qp_status;

typedef struct qp_density qp_density;
typedef struct qp_pure qp_pure;
typedef struct qp_channel qp_channel;
typedef struct qp_result qp_result;

const char* qp_version(void);
const char* qp_status_name(qp_status status);
const char* qp_last_error(void);

/* --- density matrices ---------------------------------------------------- */

/* Validates Hermiticity, unit trace and positivity. */
qp_status qp_density_create(const double entries[8], qp_density** out);

/* rho = (I + a1*sigma_z + a2*sigma_y + a3*sigma_x)/2, |a| <= 1. */
qp_status qp_density_from_bloch(double a1, double a2, double a3, qp_density** out);

void qp_density_destroy(qp_density* rho);

qp_status qp_density_entries(const qp_density* rho, double entries[8]);
qp_status qp_density_to_bloch(const qp_density* rho, double* a1, double* a2, double* a3);
qp_status qp_density_eigenvalues(const qp_density* rho, double* lambda_plus,
                                 double* lambda_minus);

/* tr(r1 * r2). */
qp_status qp_density_overlap(const qp_density* r1, const qp_density* r2, double* out);

/* von Neumann entropy, natural-log units. */
qp_status qp_density_entropy(const qp_density* rho, double* out);
qp_status qp_density_determinant(const qp_density* rho, double* out);

/* --- pure states ---------------------------------------------------------- */

/* Normalizes the amplitudes and fixes the global phase. */
qp_status qp_pure_create(const double amplitudes[4], qp_pure** out);
void qp_pure_destroy(qp_pure* psi);
qp_status qp_pure_amplitudes(const qp_pure* psi, double amplitudes[4]);
qp_status qp_pure_to_density(const qp_pure* psi, qp_density** out);

/* --- purification --------------------------------------------------------- */

/* Eigenvector of the largest eigenvalue: the pure state of maximal overlap
 * with rho. *degenerate is set to 1 when the spectrum is degenerate and the
 * deterministic tie-breaking state was returned. */
qp_status qp_purify_b(const qp_density* rho, qp_pure** out, int* degenerate);

/* Probability-preserving purification of rho's eigenmixture with the free
 * phase phi: sqrt(p1)|v+> + sqrt(p2) e^{-i phi}|v->. */
qp_status qp_purify_a_phase(const qp_density* rho, double phi, qp_pure** out);

/* --- reconstruction -------------------------------------------------------- */

/* probs lists "+" outcome probabilities along z (k=1), z,y (k=2) or
 * z,y,x (k=3). */
qp_status qp_unbiased_state(const double* probs, int k, qp_density** out);
qp_status qp_maxent_state(const double* probs, int k, qp_density** out);

/* --- Kraus machinery -------------------------------------------------------- */

/* Channel A_0 = |target><b0|, A_1 = |target><b1| where b1 completes b0 to an
 * orthonormal basis; maps every density matrix to |target><target|. */
qp_status qp_purifying_channel(const double b0[4], const double target[4], qp_channel** out);
void qp_channel_destroy(qp_channel* channel);
qp_status qp_channel_apply(const qp_channel* channel, const qp_density* rho, qp_density** out);

/* Entropy bookkeeping of one purification run with purification basis
 * (b0, complement) and input state rho: entropy before, after the dilation
 * unitary, and after the nonselective environment projection, plus the
 * determinant before/after dephasing in the basis. */
qp_status qp_entropy_audit(const double b0[4], const double rho_entries[8], double* s_before,
                           double* s_after_unitary, double* s_env_final, double* det_before,
                           double* det_after);

/* --- batch experiments ------------------------------------------------------ */

/* Runs one experiment described by a JSON config:
 *   {"command": "reconstruct" | "montecarlo" | "entropy-sweep" | "kraus-audit",
 *    "k": 1|2|3, "probs": [...], "psi": [re0, im0, re1, im1],
 *    "samples": n, "seed": n, "phase_grid": n,
 *    "output_path": "...", "format": "json" | "csv"}
 * Unknown keys are rejected. */
qp_status qp_run_json(const char* config_json, qp_result** out);

void qp_result_destroy(qp_result* result);

/* Result document rendered in the config's format; owned by the result. */
const char* qp_result_render(const qp_result* result);

/* Count of failed internal consistency checks (0 on a healthy run). */
long long qp_result_violations(const qp_result* result);

const char* qp_result_command(const qp_result* result);

#ifdef __cplusplus
}
#endif

#endif /* QPURIFY_H */
