// Copyright 2026 The qpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpurify.h"

#include <new>
#include <string>

#include "qpurify/experiments.hpp"

struct qp_density {
  qpurify::DensityMatrix value;
};

struct qp_pure {
  qpurify::PureState value;
};

struct qp_channel {
  qpurify::KrausChannel value;
};

struct qp_result {
  qpurify::ResultRecord record;
  std::string rendered;
  std::string command;
};

namespace {

thread_local std::string g_last_error;

qp_status status_from(qpurify::ErrorCode code) {
  using qpurify::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return QP_ERROR_INVALID_ARGUMENT;
    case ErrorCode::not_hermitian: return QP_ERROR_NOT_HERMITIAN;
    case ErrorCode::trace_not_one: return QP_ERROR_TRACE_NOT_ONE;
    case ErrorCode::not_positive: return QP_ERROR_NOT_POSITIVE;
    case ErrorCode::bloch_out_of_ball: return QP_ERROR_BLOCH_OUT_OF_BALL;
    case ErrorCode::degenerate_projector: return QP_ERROR_DEGENERATE_PROJECTOR;
    case ErrorCode::maxent_not_positive: return QP_ERROR_MAXENT_NOT_POSITIVE;
    case ErrorCode::inconsistent_record: return QP_ERROR_INCONSISTENT_RECORD;
    case ErrorCode::config: return QP_ERROR_CONFIG;
    case ErrorCode::io: return QP_ERROR_IO;
    case ErrorCode::internal: return QP_ERROR_INTERNAL;
  }
  return QP_ERROR_INTERNAL;
}

template <typename Fn>
qp_status guarded(Fn&& fn) {
  try {
    fn();
    return QP_OK;
  } catch (const qpurify::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QP_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QP_ERROR_INTERNAL;
  }
}

qp_status require(bool ok, const char* message) {
  if (ok) return QP_OK;
  g_last_error = message;
  return QP_ERROR_INVALID_ARGUMENT;
}

qpurify::Mat2 mat_from_entries(const double entries[8]) {
  qpurify::Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const int base = 4 * r + 2 * c;
      m(r, c) = qpurify::Complex(entries[base], entries[base + 1]);
    }
  return m;
}

qpurify::PureState pure_from_amplitudes(const double amplitudes[4]) {
  return qpurify::PureState::normalized(qpurify::Complex(amplitudes[0], amplitudes[1]),
                                        qpurify::Complex(amplitudes[2], amplitudes[3]));
}

}  // namespace

extern "C" {

const char* qp_version(void) { return qpurify::library_version(); }

const char* qp_status_name(qp_status status) {
  switch (status) {
    case QP_OK: return "QP_OK";
    case QP_ERROR_INVALID_ARGUMENT: return "QP_ERROR_INVALID_ARGUMENT";
    case QP_ERROR_NOT_HERMITIAN: return "QP_ERROR_NOT_HERMITIAN";
    case QP_ERROR_TRACE_NOT_ONE: return "QP_ERROR_TRACE_NOT_ONE";
    case QP_ERROR_NOT_POSITIVE: return "QP_ERROR_NOT_POSITIVE";
    case QP_ERROR_BLOCH_OUT_OF_BALL: return "QP_ERROR_BLOCH_OUT_OF_BALL";
    case QP_ERROR_DEGENERATE_PROJECTOR: return "QP_ERROR_DEGENERATE_PROJECTOR";
    case QP_ERROR_MAXENT_NOT_POSITIVE: return "QP_ERROR_MAXENT_NOT_POSITIVE";
    case QP_ERROR_INCONSISTENT_RECORD: return "QP_ERROR_INCONSISTENT_RECORD";
    case QP_ERROR_CONFIG: return "QP_ERROR_CONFIG";
    case QP_ERROR_IO: return "QP_ERROR_IO";
    case QP_ERROR_INTERNAL: return "QP_ERROR_INTERNAL";
  }
  return "QP_UNKNOWN";
}

const char* qp_last_error(void) { return g_last_error.c_str(); }

qp_status qp_density_create(const double entries[8], qp_density** out) {
  if (qp_status s = require(entries && out, "null argument")) return s;
  return guarded([&] { *out = new qp_density{qpurify::DensityMatrix::make(mat_from_entries(entries))}; });
}

qp_status qp_density_from_bloch(double a1, double a2, double a3, qp_density** out) {
  if (qp_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new qp_density{qpurify::from_bloch(qpurify::BlochVector{a1, a2, a3})}; });
}

void qp_density_destroy(qp_density* rho) { delete rho; }

qp_status qp_density_entries(const qp_density* rho, double entries[8]) {
  if (qp_status s = require(rho && entries, "null argument")) return s;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const int base = 4 * r + 2 * c;
      entries[base] = std::real(rho->value(r, c));
      entries[base + 1] = std::imag(rho->value(r, c));
    }
  return QP_OK;
}

qp_status qp_density_to_bloch(const qp_density* rho, double* a1, double* a2, double* a3) {
  if (qp_status s = require(rho && a1 && a2 && a3, "null argument")) return s;
  const qpurify::BlochVector b = qpurify::to_bloch(rho->value);
  *a1 = b.a1;
  *a2 = b.a2;
  *a3 = b.a3;
  return QP_OK;
}

qp_status qp_density_eigenvalues(const qp_density* rho, double* lambda_plus,
                                 double* lambda_minus) {
  if (qp_status s = require(rho && lambda_plus && lambda_minus, "null argument")) return s;
  return guarded([&] {
    const qpurify::Spectrum2 sp = qpurify::spectral(rho->value);
    *lambda_plus = sp.lambda_plus;
    *lambda_minus = sp.lambda_minus;
  });
}

qp_status qp_density_overlap(const qp_density* r1, const qp_density* r2, double* out) {
  if (qp_status s = require(r1 && r2 && out, "null argument")) return s;
  *out = qpurify::overlap(r1->value, r2->value);
  return QP_OK;
}

qp_status qp_density_entropy(const qp_density* rho, double* out) {
  if (qp_status s = require(rho && out, "null argument")) return s;
  *out = qpurify::von_neumann_entropy(rho->value);
  return QP_OK;
}

qp_status qp_density_determinant(const qp_density* rho, double* out) {
  if (qp_status s = require(rho && out, "null argument")) return s;
  *out = qpurify::determinant(rho->value);
  return QP_OK;
}

qp_status qp_pure_create(const double amplitudes[4], qp_pure** out) {
  if (qp_status s = require(amplitudes && out, "null argument")) return s;
  return guarded([&] { *out = new qp_pure{pure_from_amplitudes(amplitudes)}; });
}

void qp_pure_destroy(qp_pure* psi) { delete psi; }

qp_status qp_pure_amplitudes(const qp_pure* psi, double amplitudes[4]) {
  if (qp_status s = require(psi && amplitudes, "null argument")) return s;
  amplitudes[0] = std::real(psi->value.amp(0));
  amplitudes[1] = std::imag(psi->value.amp(0));
  amplitudes[2] = std::real(psi->value.amp(1));
  amplitudes[3] = std::imag(psi->value.amp(1));
  return QP_OK;
}

qp_status qp_pure_to_density(const qp_pure* psi, qp_density** out) {
  if (qp_status s = require(psi && out, "null argument")) return s;
  return guarded([&] { *out = new qp_density{psi->value.to_density()}; });
}

qp_status qp_purify_b(const qp_density* rho, qp_pure** out, int* degenerate) {
  if (qp_status s = require(rho && out, "null argument")) return s;
  return guarded([&] {
    const qpurify::PurifyResult r = qpurify::purify_b(rho->value);
    *out = new qp_pure{r.state};
    if (degenerate) *degenerate = r.degenerate ? 1 : 0;
  });
}

qp_status qp_purify_a_phase(const qp_density* rho, double phi, qp_pure** out) {
  if (qp_status s = require(rho && out, "null argument")) return s;
  return guarded([&] {
    const qpurify::OrthogonalMixture mix = qpurify::decompose(rho->value);
    *out = new qp_pure{qpurify::purify_a(mix, qpurify::ProjectionChoice::phase(phi))};
  });
}

qp_status qp_unbiased_state(const double* probs, int k, qp_density** out) {
  if (qp_status s = require(probs && out && k >= 1 && k <= 3, "need 1 to 3 probabilities")) return s;
  return guarded([&] {
    const auto rec = qpurify::MeasurementRecord::make(
        std::span<const double>(probs, static_cast<std::size_t>(k)));
    *out = new qp_density{qpurify::unbiased_state(rec)};
  });
}

qp_status qp_maxent_state(const double* probs, int k, qp_density** out) {
  if (qp_status s = require(probs && out && k >= 1 && k <= 3, "need 1 to 3 probabilities")) return s;
  return guarded([&] {
    const auto rec = qpurify::MeasurementRecord::make(
        std::span<const double>(probs, static_cast<std::size_t>(k)));
    *out = new qp_density{qpurify::maxent_state(rec)};
  });
}

qp_status qp_purifying_channel(const double b0[4], const double target[4], qp_channel** out) {
  if (qp_status s = require(b0 && target && out, "null argument")) return s;
  return guarded([&] {
    const auto pb = qpurify::PurificationBasis::from_b0(pure_from_amplitudes(b0),
                                                        pure_from_amplitudes(target));
    *out = new qp_channel{qpurify::purifying_channel(pb)};
  });
}

void qp_channel_destroy(qp_channel* channel) { delete channel; }

qp_status qp_channel_apply(const qp_channel* channel, const qp_density* rho, qp_density** out) {
  if (qp_status s = require(channel && rho && out, "null argument")) return s;
  return guarded([&] {
    *out = new qp_density{qpurify::apply_channel(channel->value, rho->value).as_density()};
  });
}

qp_status qp_entropy_audit(const double b0[4], const double rho_entries[8], double* s_before,
                           double* s_after_unitary, double* s_env_final, double* det_before,
                           double* det_after) {
  if (qp_status s = require(b0 && rho_entries, "null argument")) return s;
  return guarded([&] {
    const qpurify::PureState basis0 = pure_from_amplitudes(b0);
    const auto pb = qpurify::PurificationBasis::from_b0(basis0, basis0);
    const auto rho = qpurify::DensityMatrix::make(mat_from_entries(rho_entries));
    const qpurify::EntropyAudit audit = qpurify::entropy_audit(pb, rho);
    if (s_before) *s_before = audit.s_before;
    if (s_after_unitary) *s_after_unitary = audit.s_after_unitary;
    if (s_env_final) *s_env_final = audit.s_env_final;
    if (det_before) *det_before = audit.det_before;
    if (det_after) *det_after = audit.det_after;
  });
}

qp_status qp_run_json(const char* config_json, qp_result** out) {
  if (qp_status s = require(config_json && out, "null argument")) return s;
  return guarded([&] {
    const auto cfg = qpurify::ExperimentConfig::from_json_text(config_json);
    qpurify::ResultRecord record = qpurify::run(cfg);
    auto* result = new qp_result;
    result->rendered = record.render(cfg.format);
    result->command = qpurify::command_name(cfg.command);
    result->record = std::move(record);
    *out = result;
  });
}

void qp_result_destroy(qp_result* result) { delete result; }

const char* qp_result_render(const qp_result* result) {
  return result ? result->rendered.c_str() : "";
}

long long qp_result_violations(const qp_result* result) {
  return result ? result->record.violations : -1;
}

const char* qp_result_command(const qp_result* result) {
  return result ? result->command.c_str() : "";
}

}  // extern "C"
