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

#ifndef QPURIFY_RECONSTRUCTION_HPP
#define QPURIFY_RECONSTRUCTION_HPP

#include <functional>
#include <span>
#include <vector>

#include "qpurify/qubit_core.hpp"

namespace qpurify {

enum class Axis { z, y, x };

const char* axis_name(Axis axis);

/// Exact "+" outcome probabilities for an ordered prefix of the axes
/// (z), (z, y), (z, y, x); k is the number of measured spin components.
/// Works with ideal ensemble probabilities, no shot noise.
class MeasurementRecord {
 public:
  /// probs = (p_z), (p_z, p_y) or (p_z, p_y, p_x); each in [0, 1].
  static MeasurementRecord make(std::span<const double> probs);

  int k() const { return k_; }
  double prob(int i) const;
  std::vector<Axis> axes() const;

  // Bloch components 2*p - 1 for the measured axes.
  double a1() const { return 2.0 * p_[0] - 1.0; }
  double a2() const;
  double a3() const;

  /// Euclidean norm of the measured Bloch components.
  double bloch_norm_measured() const;

  /// k = 3 only: whether a1^2 + a2^2 + a3^2 = 1 within tol::consist, i.e.
  /// the record could have come from a pure state.
  bool pure_consistent() const;

 private:
  MeasurementRecord(int k, std::array<double, 3> p) : k_(k), p_(p) {}
  int k_;
  std::array<double, 3> p_;
};

/// Outcome probabilities of a pure state along the first k axes:
/// p_z = |<+z|psi>|^2, p_y = |<+y|psi>|^2, p_x = |<+x|psi>|^2 with
/// |+y> = (|+z> + i|-z>)/sqrt(2) and |+x> = (|+z> + |-z>)/sqrt(2).
MeasurementRecord probabilities_from_state(const PureState& psi, int k);

/// Equal-weight average of the per-axis post-measurement mixtures:
///   k=1: diag(p1, 1-p1)
///   k=2: [[a1+2, -i*a2], [i*a2, 2-a1]] / 4
///   k=3: [[a1+3, a3-i*a2], [a3+i*a2, 3-a1]] / 6
DensityMatrix unbiased_state(const MeasurementRecord& rec);

/// Maximum-entropy state consistent with the record:
///   k=1: diag(p1, 1-p1) (same as the unbiased state)
///   k=2: [[1+a1, -i*a2], [i*a2, 1-a1]] / 2
///   k=3: [[1+a1, a3-i*a2], [a3+i*a2, 1-a1]] / 2
/// Throws MaxEntNotPositive when the implied Bloch norm exceeds 1, i.e. the
/// record is inconsistent with any quantum state.
DensityMatrix maxent_state(const MeasurementRecord& rec);

/// Pure states reproducing a record. k=3 pins a unique state, k=2 leaves a
/// sign choice (two candidates, coinciding when the measured Bloch norm is
/// 1), and k=1 leaves a full relative phase: a generator over theta in
/// [0, 2pi) is returned instead of an enumerated set.
struct CompatibleStates {
  std::vector<PureState> states;               // finite candidates (k = 2, 3)
  std::function<PureState(double)> family;     // k = 1: theta -> state
  bool continuous_family = false;
};

CompatibleStates compatible_initial_states(const MeasurementRecord& rec);

}  // namespace qpurify

#endif
