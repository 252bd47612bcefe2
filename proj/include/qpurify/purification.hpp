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

#ifndef QPURIFY_PURIFICATION_HPP
#define QPURIFY_PURIFICATION_HPP

#include <variant>

#include "qpurify/qubit_core.hpp"

namespace qpurify {

/// Statistical mixture p1*|s1><s1| + p2*|s2><s2| of two orthogonal pure
/// states, p1 >= 0, p2 >= 0, p1 + p2 = 1.
class OrthogonalMixture {
 public:
  static OrthogonalMixture make(double p1, double p2, const PureState& s1, const PureState& s2);

  double p1() const { return p1_; }
  double p2() const { return p2_; }
  const PureState& state1() const { return s1_; }
  const PureState& state2() const { return s2_; }

  DensityMatrix rho1() const { return s1_.to_density(); }
  DensityMatrix rho2() const { return s2_.to_density(); }

  /// p1*rho1 + p2*rho2.
  DensityMatrix mixture() const;

 private:
  OrthogonalMixture(double p1, double p2, const PureState& s1, const PureState& s2)
      : p1_(p1), p2_(p2), s1_(s1), s2_(s2) {}
  double p1_, p2_;
  PureState s1_, s2_;
};

/// Input to the probability-preserving purification: either a projector
/// |chi><chi| with chi = mu*|s1> + nu*|s2> expressed in the mixture's
/// eigenbasis, or the resulting relative phase arg(mu * conj(nu)) directly.
class ProjectionChoice {
 public:
  static ProjectionChoice projector(const PureState& chi_in_eigenbasis) {
    return ProjectionChoice(chi_in_eigenbasis);
  }
  static ProjectionChoice phase(double phi) { return ProjectionChoice(phi); }

  bool is_projector() const { return std::holds_alternative<PureState>(v_); }
  const PureState& chi() const { return std::get<PureState>(v_); }
  double phi() const { return std::get<double>(v_); }

 private:
  explicit ProjectionChoice(const PureState& chi) : v_(chi) {}
  explicit ProjectionChoice(double phi) : v_(phi) {}
  std::variant<PureState, double> v_;
};

/// Splits a density matrix into its eigenmixture, weights ordered p1 >= p2.
OrthogonalMixture decompose(const DensityMatrix& rho);

/// Probability-preserving purification: returns
///   sqrt(p1)|s1> + sqrt(p2) e^{-i phi}|s2>,
/// whose overlaps with the mixture components are exactly p1 and p2. For a
/// projector choice, phi = arg(mu * conj(nu)), with arg on (-pi, pi].
PureState purify_a(const OrthogonalMixture& mix, const ProjectionChoice& choice);

/// Same map built from the projector algebra
///   p1 rho1 + p2 rho2 + sqrt(p1 p2) (rho1 Pi rho2 + rho2 Pi rho1)
///                        / sqrt(tr(rho1 Pi) tr(rho2 Pi)),
/// kept separate so the matrix construction is tested against the amplitude
/// form. Projector choices only.
DensityMatrix purify_a_via_projection(const OrthogonalMixture& mix, const ProjectionChoice& pi);

/// Maximal-overlap purification result. `degenerate` marks inputs whose
/// spectrum has no unique top eigenvector; the state then follows the
/// deterministic tie-breaking rule.
struct PurifyResult {
  PureState state;
  bool degenerate;
};

/// Returns the eigenvector of the largest eigenvalue: the pure state of
/// maximal overlap tr(rho_pure * rho) with the input, that overlap being
/// lambda_plus.
PurifyResult purify_b(const DensityMatrix& rho);

}  // namespace qpurify

#endif
