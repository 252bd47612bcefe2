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

#ifndef QPURIFY_KRAUS_HPP
#define QPURIFY_KRAUS_HPP

#include <vector>

#include "qpurify/qubit_core.hpp"

namespace qpurify {

/// Ordered set of 2x2 Kraus operators A_k defining rho -> sum A_k rho A_k^dag.
/// Nonselective channels satisfy sum A_k^dag A_k = I. Trace-decreasing
/// (selective) sets are accepted when bounded by the identity; the validator
/// reports both operator orderings of that bound separately since they
/// differ for non-normal operators.
class KrausChannel {
 public:
  static KrausChannel make(std::vector<Mat2> operators);

  const std::vector<Mat2>& operators() const { return ops_; }

  /// max-norm of sum A^dag A - I.
  double completeness_residual() const { return completeness_residual_; }
  bool nonselective() const { return completeness_residual_ <= tol::recon; }

  /// sum A_k^dag A_k <= I within tol::psd.
  bool trace_nonincreasing_dag_a() const { return dag_a_bounded_; }
  /// sum A_k A_k^dag <= I within tol::psd.
  bool trace_nonincreasing_a_dag() const { return a_dag_bounded_; }

 private:
  KrausChannel(std::vector<Mat2> ops, double residual, bool dag_a, bool a_dag)
      : ops_(std::move(ops)), completeness_residual_(residual), dag_a_bounded_(dag_a),
        a_dag_bounded_(a_dag) {}
  std::vector<Mat2> ops_;
  double completeness_residual_;
  bool dag_a_bounded_;
  bool a_dag_bounded_;
};

/// Result of pushing a state through a channel. For a nonselective channel
/// the output is a valid density matrix; a selective channel subnormalizes
/// and `trace` reports what survives.
struct ChannelApplication {
  Mat2 output;
  double trace;
  bool normalized;  // trace = 1 within tol::trace

  DensityMatrix as_density() const;  // throws unless normalized
};

ChannelApplication apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// Orthonormal basis (b0, b1) the environment projections act along, plus
/// the target pure state psi and its orthogonal complement xi.
class PurificationBasis {
 public:
  static PurificationBasis make(const PureState& b0, const PureState& b1, const PureState& target);

  /// Convenience: b1 is the orthogonal complement of b0.
  static PurificationBasis from_b0(const PureState& b0, const PureState& target);

  const PureState& b0() const { return b0_; }
  const PureState& b1() const { return b1_; }
  const PureState& target() const { return target_; }
  const PureState& complement() const { return complement_; }

 private:
  PurificationBasis(const PureState& b0, const PureState& b1, const PureState& target,
                    const PureState& complement)
      : b0_(b0), b1_(b1), target_(target), complement_(complement) {}
  PureState b0_, b1_, target_, complement_;
};

/// 4x4 Hermitian unit-trace PSD matrix over system (x) environment with
/// system-major index ordering: basis |0,0e>, |0,1e>, |1,0e>, |1,1e>.
class CompositeState {
 public:
  static CompositeState make(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit CompositeState(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

double von_neumann_entropy(const CompositeState& cs);

/// The two-operator channel A_0 = |psi><b0|, A_1 = |psi><b1| that maps every
/// input to |psi><psi|.
KrausChannel purifying_channel(const PurificationBasis& pb);

/// The unitary on system (x) environment generating that channel:
///   U = sum_s (|psi, s><b_s, 0e| + |xi, s><b_s, 1e|).
Mat4 dilation_unitary(const PurificationBasis& pb);

/// Kraus operators read back out of a dilation with the environment starting
/// in |0e>: A_k(i, j) = <i, k_e| U |j, 0e>.
std::array<Mat2, 2> kraus_from_unitary(const Mat4& u);

/// U (rho0 (x) |0e><0e|) U^dag. Factorizes as |psi><psi| (x) rho_env where
/// rho_env carries rho0's matrix elements in the purification basis.
CompositeState evolve_composite(const PurificationBasis& pb, const DensityMatrix& rho0);

DensityMatrix partial_trace_env(const CompositeState& cs);
DensityMatrix partial_trace_sys(const CompositeState& cs);

/// Nonselective projection onto the environment basis followed by tracing
/// out the system: returns the dephased environment state.
DensityMatrix project_environment(const CompositeState& cs);

/// max-norm of cs - (tr_env cs) (x) (tr_sys cs); zero for product states.
double product_residual(const CompositeState& cs);

/// Entropy bookkeeping for one purification run. The dephasing step can only
/// grow the determinant (by exactly |off-diagonal|^2 in the purification
/// basis), and entropy grows with the determinant, so
/// s_env_final >= s_before always, with equality when the basis diagonalizes
/// the input.
struct EntropyAudit {
  double s_before;          // S(rho0)
  double s_after_unitary;   // S of the evolved composite; equals s_before
  double s_env_final;       // S of the projected environment state
  double det_before;        // det(rho0)
  double det_after;         // product of rho0's diagonal in the basis
  double offdiag_magnitude; // |<b0|rho0|b1>|
  bool basis_diagonalizes;  // offdiag_magnitude <= tol::mc_point
};

EntropyAudit entropy_audit(const PurificationBasis& pb, const DensityMatrix& rho0);

}  // namespace qpurify

#endif
