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

#include "qpurify/kraus.hpp"

#include <cmath>
#include <cstdio>

namespace qpurify {

namespace {

bool bounded_by_identity(const Mat2& hermitian) {
  return min_eigenvalue(Mat2::identity() - hermitian) >= -tol::psd;
}

}  // namespace

KrausChannel KrausChannel::make(std::vector<Mat2> operators) {
  if (operators.empty()) {
    throw Error(ErrorCode::invalid_argument, "channel needs at least one Kraus operator");
  }
  Mat2 dag_a = Mat2::zero();
  Mat2 a_dag = Mat2::zero();
  for (const Mat2& op : operators) {
    dag_a = dag_a + adjoint(op) * op;
    a_dag = a_dag + op * adjoint(op);
  }
  const double residual = max_abs(dag_a - Mat2::identity());
  const bool dag_a_ok = bounded_by_identity(dag_a);
  const bool a_dag_ok = bounded_by_identity(a_dag);
  if (residual > tol::recon && !dag_a_ok && !a_dag_ok) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "operators exceed the identity in both orderings; completeness residual %.6g",
                  residual);
    throw Error(ErrorCode::invalid_argument, buf);
  }
  return KrausChannel(std::move(operators), residual, dag_a_ok, a_dag_ok);
}

DensityMatrix ChannelApplication::as_density() const {
  if (!normalized) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "selective channel output has trace %.12g", trace);
    throw Error(ErrorCode::invalid_argument, buf);
  }
  return DensityMatrix::make(output);
}

ChannelApplication apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  Mat2 out = Mat2::zero();
  for (const Mat2& op : channel.operators()) {
    out = out + op * rho.matrix() * adjoint(op);
  }
  const double tr = std::real(trace(out));
  return ChannelApplication{out, tr, std::abs(tr - 1.0) <= tol::trace};
}

PurificationBasis PurificationBasis::make(const PureState& b0, const PureState& b1,
                                          const PureState& target) {
  const double ov = std::abs(inner(b0, b1));
  if (ov > tol::orth) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "basis vectors not orthogonal: |<b0|b1>| = %.6g", ov);
    throw Error(ErrorCode::invalid_argument, buf);
  }
  return PurificationBasis(b0, b1, target, target.orthogonal());
}

PurificationBasis PurificationBasis::from_b0(const PureState& b0, const PureState& target) {
  return make(b0, b0.orthogonal(), target);
}

CompositeState CompositeState::make(const Mat4& m) {
  for (const Complex& v : m.e) {
    if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) {
      throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
    }
  }
  double herm = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c)
      herm = std::max(herm, std::abs(m(r, c) - std::conj(m(c, r))));
  if (herm > tol::herm) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "composite not Hermitian: residual %.6g", herm);
    throw Error(ErrorCode::not_hermitian, buf);
  }
  const double tr = std::real(trace(m));
  if (std::abs(tr - 1.0) > tol::trace) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "composite trace not one: residual %.6g", std::abs(tr - 1.0));
    throw Error(ErrorCode::trace_not_one, buf);
  }
  Mat4 h;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  const auto ev = hermitian_eigenvalues(h);
  if (ev[0] < -tol::psd) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "composite not positive semidefinite: min eigenvalue %.6g",
                  ev[0]);
    throw Error(ErrorCode::not_positive, buf);
  }
  return CompositeState(h);
}

double von_neumann_entropy(const CompositeState& cs) {
  double s = 0.0;
  for (double lam : hermitian_eigenvalues(cs.matrix())) {
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return s;
}

KrausChannel purifying_channel(const PurificationBasis& pb) {
  const auto& psi = pb.target().amplitudes();
  return KrausChannel::make({outer(psi, pb.b0().amplitudes()), outer(psi, pb.b1().amplitudes())});
}

Mat4 dilation_unitary(const PurificationBasis& pb) {
  const auto& psi = pb.target().amplitudes();
  const auto& xi = pb.complement().amplitudes();
  const std::array<const PureState*, 2> basis{&pb.b0(), &pb.b1()};
  Mat4 u = Mat4::zero();
  for (int s = 0; s < 2; ++s) {
    const auto& bs = basis[static_cast<std::size_t>(s)]->amplitudes();
    // |psi, s><b_s, 0e| + |xi, s><b_s, 1e| with system-major indices.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        u(2 * i + s, 2 * j + 0) += psi[static_cast<std::size_t>(i)] * std::conj(bs[static_cast<std::size_t>(j)]);
        u(2 * i + s, 2 * j + 1) += xi[static_cast<std::size_t>(i)] * std::conj(bs[static_cast<std::size_t>(j)]);
      }
  }
  return u;
}

std::array<Mat2, 2> kraus_from_unitary(const Mat4& u) {
  std::array<Mat2, 2> ops;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ops[static_cast<std::size_t>(k)](i, j) = u(2 * i + k, 2 * j + 0);
  return ops;
}

CompositeState evolve_composite(const PurificationBasis& pb, const DensityMatrix& rho0) {
  Mat2 env0 = Mat2::zero();
  env0(0, 0) = Complex(1);  // environment starts in |0e>
  const Mat4 initial = kron(rho0.matrix(), env0);
  const Mat4 u = dilation_unitary(pb);
  return CompositeState::make(u * initial * adjoint(u));
}

DensityMatrix partial_trace_env(const CompositeState& cs) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      Complex s = 0;
      for (int j = 0; j < 2; ++j) s += cs(2 * i + j, 2 * k + j);
      m(i, k) = s;
    }
  return DensityMatrix::make(m);
}

DensityMatrix partial_trace_sys(const CompositeState& cs) {
  Mat2 m;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      Complex s = 0;
      for (int i = 0; i < 2; ++i) s += cs(2 * i + j, 2 * i + l);
      m(j, l) = s;
    }
  return DensityMatrix::make(m);
}

DensityMatrix project_environment(const CompositeState& cs) {
  // Nonselective projection onto the environment basis: kill every entry
  // whose environment indices differ, then trace out the system.
  Mat4 dephased = cs.matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j != l) dephased(2 * i + j, 2 * k + l) = Complex(0);
  return partial_trace_sys(CompositeState::make(dephased));
}

double product_residual(const CompositeState& cs) {
  const DensityMatrix sys = partial_trace_env(cs);
  const DensityMatrix env = partial_trace_sys(cs);
  return max_abs(cs.matrix() - kron(sys.matrix(), env.matrix()));
}

EntropyAudit entropy_audit(const PurificationBasis& pb, const DensityMatrix& rho0) {
  // rho0's matrix elements in the purification basis.
  const auto& b0 = pb.b0().amplitudes();
  const auto& b1 = pb.b1().amplitudes();
  auto element = [&](const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
    Complex s = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        s += std::conj(u[static_cast<std::size_t>(i)]) * rho0(i, j) * v[static_cast<std::size_t>(j)];
    return s;
  };
  const double r00 = std::real(element(b0, b0));
  const double r11 = std::real(element(b1, b1));
  const Complex r01 = element(b0, b1);

  const CompositeState evolved = evolve_composite(pb, rho0);

  EntropyAudit audit{};
  audit.s_before = von_neumann_entropy(rho0);
  audit.s_after_unitary = von_neumann_entropy(evolved);
  audit.s_env_final = von_neumann_entropy(project_environment(evolved));
  audit.det_before = determinant(rho0);
  audit.det_after = r00 * r11;
  audit.offdiag_magnitude = std::abs(r01);
  audit.basis_diagonalizes = audit.offdiag_magnitude <= tol::mc_point;

  if (audit.s_env_final < audit.s_before - tol::ineq) {
    throw Error(ErrorCode::internal, "entropy decreased across a nonselective projection");
  }
  if (audit.det_after < audit.det_before - tol::ineq) {
    throw Error(ErrorCode::internal, "determinant decreased under dephasing");
  }
  return audit;
}

}  // namespace qpurify
