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

#include "qpurify/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qpurify {

namespace {

std::string describe(const char* what, double residual, double limit) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: residual %.6g exceeds %.3g", what, residual, limit);
  return buf;
}

std::array<Complex, 2> fix_phase(std::array<Complex, 2> a) {
  for (const auto& c : a) {
    const double m = std::abs(c);
    if (m > tol::phase) {
      const Complex ph = std::conj(c) / m;
      return {a[0] * ph, a[1] * ph};
    }
  }
  return a;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::trace_not_one: return "TraceNotOne";
    case ErrorCode::not_positive: return "NotPositive";
    case ErrorCode::bloch_out_of_ball: return "BlochOutOfBall";
    case ErrorCode::degenerate_projector: return "DegenerateProjector";
    case ErrorCode::maxent_not_positive: return "MaxEntNotPositive";
    case ErrorCode::inconsistent_record: return "InconsistentRecord";
    case ErrorCode::config: return "ConfigError";
    case ErrorCode::io: return "IoError";
    case ErrorCode::internal: return "InternalError";
  }
  return "UnknownError";
}

PureState::PureState(Complex a0, Complex a1) : a_{a0, a1} {
  const double n2 = std::norm(a0) + std::norm(a1);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol::norm) {
    throw Error(ErrorCode::invalid_argument,
                describe("pure state not normalized", std::abs(n2 - 1.0), tol::norm));
  }
  a_ = fix_phase(a_);
}

PureState PureState::normalized(Complex a0, Complex a1) {
  const double n = std::sqrt(std::norm(a0) + std::norm(a1));
  if (n < 1e-12) {
    throw Error(ErrorCode::invalid_argument, "cannot normalize a near-zero state vector");
  }
  return PureState(a0 / n, a1 / n);
}

DensityMatrix PureState::to_density() const { return DensityMatrix::make(outer(a_, a_)); }

PureState PureState::orthogonal() const {
  return PureState(-std::conj(a_[1]), std::conj(a_[0]));
}

Complex inner(const PureState& u, const PureState& v) {
  return std::conj(u.amp(0)) * v.amp(0) + std::conj(u.amp(1)) * v.amp(1);
}

double BlochVector::norm() const { return std::sqrt(a1 * a1 + a2 * a2 + a3 * a3); }

DensityMatrix DensityMatrix::make(const Mat2& m) {
  for (const Complex& v : m.e) {
    if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) {
      throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
    }
  }
  const double herm_residual =
      std::max({std::abs(m(0, 1) - std::conj(m(1, 0))), std::abs(std::imag(m(0, 0))),
                std::abs(std::imag(m(1, 1)))});
  if (herm_residual > tol::herm) {
    throw Error(ErrorCode::not_hermitian, describe("matrix not Hermitian", herm_residual, tol::herm));
  }
  const double tr = std::real(m(0, 0)) + std::real(m(1, 1));
  if (std::abs(tr - 1.0) > tol::trace) {
    throw Error(ErrorCode::trace_not_one, describe("trace not one", std::abs(tr - 1.0), tol::trace));
  }
  // Store the exact Hermitian part so downstream closed forms see clean input.
  Mat2 h;
  h(0, 0) = Complex(std::real(m(0, 0)));
  h(1, 1) = Complex(std::real(m(1, 1)));
  h(0, 1) = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  h(1, 0) = std::conj(h(0, 1));
  const double lam_min = min_eigenvalue(h);
  if (lam_min < -tol::psd) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "matrix not positive semidefinite: min eigenvalue %.6g < -%.3g",
                  lam_min, tol::psd);
    throw Error(ErrorCode::not_positive, buf);
  }
  return DensityMatrix(h);
}

bool DensityMatrix::is_pure() const {
  const Mat2 sq = m_ * m_;
  return std::abs(std::real(trace(sq)) - 1.0) <= tol::norm;
}

DensityMatrix from_bloch(const BlochVector& b) {
  const double n = b.norm();
  if (!std::isfinite(n)) {
    throw Error(ErrorCode::invalid_argument, "Bloch components must be finite");
  }
  if (n > 1.0 + tol::norm) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "Bloch vector outside unit ball: |A| = %.12g", n);
    throw Error(ErrorCode::bloch_out_of_ball, buf);
  }
  Mat2 m;
  m(0, 0) = 0.5 * (1.0 + b.a1);
  m(1, 1) = 0.5 * (1.0 - b.a1);
  m(0, 1) = 0.5 * Complex(b.a3, -b.a2);
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix::make(m);
}

BlochVector to_bloch(const DensityMatrix& rho) {
  BlochVector b;
  b.a1 = std::real(rho(0, 0)) - std::real(rho(1, 1));
  b.a3 = 2.0 * std::real(rho(0, 1));
  b.a2 = -2.0 * std::imag(rho(0, 1));
  return b;
}

Spectrum2 spectral(const DensityMatrix& rho) {
  const double a = std::real(rho(0, 0));
  const double d = std::real(rho(1, 1));
  const Complex p = rho(0, 1);
  const double pm = std::abs(p);
  const double gap = std::hypot(a - d, 2.0 * pm);
  const double lam_plus = 0.5 * (a + d + gap);
  // Smaller eigenvalue as det/lambda_plus instead of by subtraction; avoids
  // cancellation when the off-diagonal is tiny.
  const double det = a * d - pm * pm;
  const double lam_minus = lam_plus > 0.0 ? det / lam_plus : 0.5 * (a + d - gap);

  if (gap <= tol::degenerate) {
    return Spectrum2{lam_plus, lam_minus, PureState(1, 0), PureState(0, 1), true};
  }

  // Two algebraically equivalent eigenvector formulas; pick the one with the
  // larger norm for stability.
  const double ra = lam_plus - a;
  const double rd = lam_plus - d;
  std::array<Complex, 2> v;
  if (std::abs(rd) >= std::abs(ra)) {
    v = {Complex(rd), std::conj(p)};
  } else {
    v = {p, Complex(ra)};
  }
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  if (n == 0.0) {
    // Diagonal matrix: gap > 0 came entirely from the diagonal.
    if (a >= d) return Spectrum2{lam_plus, lam_minus, PureState(1, 0), PureState(0, 1), false};
    return Spectrum2{lam_plus, lam_minus, PureState(0, 1), PureState(1, 0), false};
  }
  PureState v_plus(v[0] / n, v[1] / n);
  return Spectrum2{lam_plus, lam_minus, v_plus, v_plus.orthogonal(), false};
}

double overlap(const DensityMatrix& r1, const DensityMatrix& r2) {
  Complex s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s += r1(i, j) * r2(j, i);
  return std::real(s);
}

double overlap(const PureState& psi, const DensityMatrix& rho) {
  Complex s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s += std::conj(psi.amp(i)) * rho(i, j) * psi.amp(j);
  return std::real(s);
}

namespace {

double entropy_term(double lam) {
  return lam > 0.0 ? -lam * std::log(lam) : 0.0;
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const Spectrum2 s = spectral(rho);
  return entropy_term(s.lambda_plus) + entropy_term(s.lambda_minus);
}

double determinant(const DensityMatrix& rho) {
  return std::real(rho(0, 0)) * std::real(rho(1, 1)) - std::norm(rho(0, 1));
}

double min_eigenvalue(const Mat2& hermitian) {
  const double a = std::real(hermitian(0, 0));
  const double d = std::real(hermitian(1, 1));
  const double gap = std::hypot(a - d, 2.0 * std::abs(hermitian(0, 1)));
  return 0.5 * (a + d - gap);
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& hermitian) {
  Mat4 a = hermitian;
  const double scale = std::max(max_abs(a), 1e-300);

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q)
        off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-15 * scale) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const Complex apq = a(p, q);
        const double m = std::abs(apq);
        if (m <= 1e-18 * scale) continue;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        // Phase rotation makes the pivot real, then a real Jacobi rotation
        // annihilates it.
        const Complex phase = apq / m;
        const double theta = 0.5 * std::atan2(2.0 * m, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Mat4 g = Mat4::identity();
        g(p, p) = Complex(c);
        g(p, q) = Complex(-s);
        g(q, p) = std::conj(phase) * s;
        g(q, q) = std::conj(phase) * c;
        a = adjoint(g) * a * g;
      }
    }
  }

  std::array<double, 4> ev{std::real(a(0, 0)), std::real(a(1, 1)), std::real(a(2, 2)),
                           std::real(a(3, 3))};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double entropy_of_determinant(double det) {
  if (!(det >= -tol::psd && det <= 0.25 + tol::norm)) {
    throw Error(ErrorCode::invalid_argument, "determinant outside [0, 1/4]");
  }
  const double x = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
  const double lp = 0.5 * (1.0 + x);
  const double lm = 0.5 * (1.0 - x);
  return entropy_term(lp) + entropy_term(lm);
}

double entropy_derivative_of_determinant(double det) {
  if (!(det > 0.0 && det <= 0.25 + tol::norm)) {
    throw Error(ErrorCode::invalid_argument, "derivative defined on (0, 1/4]");
  }
  const double x = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
  if (x < 1e-4) {
    const double x2 = x * x;
    return 2.0 + 2.0 * x2 / 3.0 + 2.0 * x2 * x2 / 5.0;
  }
  return (std::log1p(x) - std::log1p(-x)) / x;
}

}  // namespace qpurify
