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

#ifndef QPURIFY_QUBIT_CORE_HPP
#define QPURIFY_QUBIT_CORE_HPP

#include <array>
#include <cstdint>

#include "qpurify/errors.hpp"
#include "qpurify/mat.hpp"

namespace qpurify {

// Validation tolerances. Closed-form double arithmetic on 2x2/4x4 matrices
// loses at most a few ulps; these leave room for accumulated Monte Carlo
// arithmetic without masking real violations.
namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double orth = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double recon = 1e-12;
inline constexpr double norm = 1e-10;
inline constexpr double phase = 1e-12;
inline constexpr double consist = 1e-8;    // user-supplied measurement records
inline constexpr double ineq = 1e-9;       // fidelity inequality slack
inline constexpr double mc_grid = 1e-8;    // grid-averaged quantities
inline constexpr double mc_point = 1e-10;  // pointwise overlaps
inline constexpr double degenerate = 1e-12;
}  // namespace tol

class DensityMatrix;

/// Normalized complex 2-vector with a fixed global-phase convention: the
/// first component whose modulus exceeds tol::phase is made real and
/// non-negative. Immutable once constructed.
class PureState {
 public:
  /// Requires ||a||^2 = 1 within tol::norm; canonicalizes the global phase.
  PureState(Complex a0, Complex a1);

  /// Rescales to unit norm first; throws for a near-zero vector.
  static PureState normalized(Complex a0, Complex a1);

  Complex amp(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const std::array<Complex, 2>& amplitudes() const { return a_; }

  DensityMatrix to_density() const;

  /// Deterministic orthogonal complement: (a0, a1) -> (-conj(a1), conj(a0)),
  /// then phase-canonicalized.
  PureState orthogonal() const;

 private:
  std::array<Complex, 2> a_;
};

/// <u|v>.
Complex inner(const PureState& u, const PureState& v);

/// Real Bloch coordinates (a1, a2, a3) of a qubit state: a1 scales sigma_z,
/// a2 scales sigma_y and a3 scales sigma_x, so the density matrix reads
///   [[1 + a1, a3 - i*a2], [a3 + i*a2, 1 - a1]] / 2.
/// a_j = 2*p_j - 1 where p_j is the "+" outcome probability along the axis.
struct BlochVector {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  double norm() const;
};

/// 2x2 complex Hermitian, unit-trace, positive semidefinite matrix. The
/// factory validates all three invariants and stores the Hermitian part, so
/// downstream code can rely on exact symmetry.
class DensityMatrix {
 public:
  static DensityMatrix make(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  bool is_pure() const;  // tr(rho^2) = 1 within tol::norm

 private:
  explicit DensityMatrix(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// Eigen decomposition of a density matrix, lambda_plus >= lambda_minus.
/// Degenerate inputs (gap <= tol::degenerate) get the computational-basis
/// eigenvectors so results stay deterministic.
struct Spectrum2 {
  double lambda_plus;
  double lambda_minus;
  PureState v_plus;
  PureState v_minus;
  bool degenerate;
};

DensityMatrix from_bloch(const BlochVector& b);
BlochVector to_bloch(const DensityMatrix& rho);

Spectrum2 spectral(const DensityMatrix& rho);

/// Overlap tr(rho1 * rho2); the squared inner product when both are pure.
double overlap(const DensityMatrix& r1, const DensityMatrix& r2);

/// <psi|rho|psi>, identical to overlap(psi.to_density(), rho).
double overlap(const PureState& psi, const DensityMatrix& rho);

/// -tr(rho ln rho) in natural-log units; 0*ln(0) taken as 0.
double von_neumann_entropy(const DensityMatrix& rho);

double determinant(const DensityMatrix& rho);

/// Smallest eigenvalue of a 2x2 Hermitian matrix (no trace assumption).
double min_eigenvalue(const Mat2& hermitian);

/// Eigenvalues of a 4x4 Hermitian matrix, ascending, via cyclic complex
/// Jacobi rotations.
std::array<double, 4> hermitian_eigenvalues(const Mat4& hermitian);

/// Entropy of a qubit state as a function of its determinant d in [0, 1/4]:
/// eigenvalues are (1 +- sqrt(1 - 4d))/2.
double entropy_of_determinant(double det);

/// d(entropy)/d(det) = ln((1 + x)/(1 - x))/x with x = sqrt(1 - 4*det);
/// evaluates the x -> 0 limit (= 2) by series near det = 1/4. Diverges as
/// det -> 0.
double entropy_derivative_of_determinant(double det);

}  // namespace qpurify

#endif
