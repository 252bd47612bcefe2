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

#include "qpurify/purification.hpp"

#include <cmath>
#include <cstdio>

namespace qpurify {

OrthogonalMixture OrthogonalMixture::make(double p1, double p2, const PureState& s1,
                                          const PureState& s2) {
  if (p1 < -tol::psd || p2 < -tol::psd) {
    throw Error(ErrorCode::invalid_argument, "mixture weights must be non-negative");
  }
  if (std::abs(p1 + p2 - 1.0) > tol::trace) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "mixture weights do not sum to one: residual %.6g",
                  std::abs(p1 + p2 - 1.0));
    throw Error(ErrorCode::invalid_argument, buf);
  }
  const double ov = std::abs(inner(s1, s2));
  if (ov > tol::orth) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "mixture components not orthogonal: |<s1|s2>| = %.6g", ov);
    throw Error(ErrorCode::invalid_argument, buf);
  }
  return OrthogonalMixture(p1, p2, s1, s2);
}

DensityMatrix OrthogonalMixture::mixture() const {
  return DensityMatrix::make(p1_ * outer(s1_.amplitudes(), s1_.amplitudes()) +
                             p2_ * outer(s2_.amplitudes(), s2_.amplitudes()));
}

OrthogonalMixture decompose(const DensityMatrix& rho) {
  const Spectrum2 s = spectral(rho);
  return OrthogonalMixture::make(s.lambda_plus, s.lambda_minus, s.v_plus, s.v_minus);
}

namespace {

double phase_from_choice(const ProjectionChoice& choice) {
  if (!choice.is_projector()) return choice.phi();
  const Complex mu = choice.chi().amp(0);
  const Complex nu = choice.chi().amp(1);
  if (std::abs(mu) <= tol::phase || std::abs(nu) <= tol::phase) {
    throw Error(ErrorCode::degenerate_projector,
                "projector is orthogonal to one of the mixture components");
  }
  return std::arg(mu * std::conj(nu));
}

}  // namespace

PureState purify_a(const OrthogonalMixture& mix, const ProjectionChoice& choice) {
  const double phi = phase_from_choice(choice);
  const Complex w2 = std::sqrt(mix.p2() < 0.0 ? 0.0 : mix.p2()) * std::polar(1.0, -phi);
  const double w1 = std::sqrt(mix.p1() < 0.0 ? 0.0 : mix.p1());
  const auto& s1 = mix.state1().amplitudes();
  const auto& s2 = mix.state2().amplitudes();
  return PureState(w1 * s1[0] + w2 * s2[0], w1 * s1[1] + w2 * s2[1]);
}

DensityMatrix purify_a_via_projection(const OrthogonalMixture& mix, const ProjectionChoice& pi) {
  if (!pi.is_projector()) {
    throw Error(ErrorCode::invalid_argument,
                "matrix-form purification needs a projector, not a bare phase");
  }
  const Complex mu = pi.chi().amp(0);
  const Complex nu = pi.chi().amp(1);
  if (std::abs(mu) <= tol::phase || std::abs(nu) <= tol::phase) {
    throw Error(ErrorCode::degenerate_projector,
                "projector is orthogonal to one of the mixture components");
  }

  const Mat2 r1 = outer(mix.state1().amplitudes(), mix.state1().amplitudes());
  const Mat2 r2 = outer(mix.state2().amplitudes(), mix.state2().amplitudes());

  // The projector in computational coordinates: chi = mu*s1 + nu*s2.
  const auto& s1 = mix.state1().amplitudes();
  const auto& s2 = mix.state2().amplitudes();
  const std::array<Complex, 2> chi{mu * s1[0] + nu * s2[0], mu * s1[1] + nu * s2[1]};
  const Mat2 proj = outer(chi, chi);

  const double t1 = std::real(trace(r1 * proj));
  const double t2 = std::real(trace(r2 * proj));
  const Mat2 cross = r1 * proj * r2 + r2 * proj * r1;
  const double scale = std::sqrt(mix.p1() * mix.p2()) / std::sqrt(t1 * t2);
  return DensityMatrix::make(mix.p1() * r1 + mix.p2() * r2 + scale * cross);
}

PurifyResult purify_b(const DensityMatrix& rho) {
  const Spectrum2 s = spectral(rho);
  return PurifyResult{s.v_plus, s.degenerate};
}

}  // namespace qpurify
