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

#include "qpurify/reconstruction.hpp"

#include <cmath>
#include <cstdio>

namespace qpurify {

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::z: return "z";
    case Axis::y: return "y";
    case Axis::x: return "x";
  }
  return "?";
}

MeasurementRecord MeasurementRecord::make(std::span<const double> probs) {
  const int k = static_cast<int>(probs.size());
  if (k < 1 || k > 3) {
    throw Error(ErrorCode::invalid_argument, "measurement record needs 1 to 3 probabilities");
  }
  std::array<double, 3> p{0.5, 0.5, 0.5};
  for (int i = 0; i < k; ++i) {
    if (!(probs[i] >= -tol::phase && probs[i] <= 1.0 + tol::phase)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "probability %d out of [0, 1]: %.6g", i, probs[i]);
      throw Error(ErrorCode::invalid_argument, buf);
    }
    p[static_cast<std::size_t>(i)] = std::min(1.0, std::max(0.0, probs[i]));
  }
  return MeasurementRecord(k, p);
}

double MeasurementRecord::prob(int i) const {
  if (i < 0 || i >= k_) {
    throw Error(ErrorCode::invalid_argument, "axis index beyond measured prefix");
  }
  return p_[static_cast<std::size_t>(i)];
}

std::vector<Axis> MeasurementRecord::axes() const {
  std::vector<Axis> a{Axis::z};
  if (k_ >= 2) a.push_back(Axis::y);
  if (k_ >= 3) a.push_back(Axis::x);
  return a;
}

double MeasurementRecord::a2() const {
  if (k_ < 2) throw Error(ErrorCode::invalid_argument, "y axis not measured");
  return 2.0 * p_[1] - 1.0;
}

double MeasurementRecord::a3() const {
  if (k_ < 3) throw Error(ErrorCode::invalid_argument, "x axis not measured");
  return 2.0 * p_[2] - 1.0;
}

double MeasurementRecord::bloch_norm_measured() const {
  double s = a1() * a1();
  if (k_ >= 2) s += a2() * a2();
  if (k_ >= 3) s += a3() * a3();
  return std::sqrt(s);
}

bool MeasurementRecord::pure_consistent() const {
  if (k_ != 3) return false;
  const double n = bloch_norm_measured();
  return std::abs(n * n - 1.0) <= tol::consist;
}

MeasurementRecord probabilities_from_state(const PureState& psi, int k) {
  if (k < 1 || k > 3) {
    throw Error(ErrorCode::invalid_argument, "measurement count must be 1, 2 or 3");
  }
  const Complex alpha = psi.amp(0);
  const Complex beta = psi.amp(1);
  const double inv2 = 0.5;
  std::array<double, 3> p{};
  p[0] = std::norm(alpha);
  p[1] = std::norm(alpha - Complex(0, 1) * beta) * inv2;  // |<+y|psi>|^2
  p[2] = std::norm(alpha + beta) * inv2;                  // |<+x|psi>|^2
  return MeasurementRecord::make(std::span<const double>(p.data(), static_cast<std::size_t>(k)));
}

DensityMatrix unbiased_state(const MeasurementRecord& rec) {
  Mat2 m;
  switch (rec.k()) {
    case 1:
      m(0, 0) = rec.prob(0);
      m(1, 1) = 1.0 - rec.prob(0);
      break;
    case 2:
      m(0, 0) = (rec.a1() + 2.0) / 4.0;
      m(1, 1) = (2.0 - rec.a1()) / 4.0;
      m(0, 1) = Complex(0.0, -rec.a2() / 4.0);
      m(1, 0) = std::conj(m(0, 1));
      break;
    default:
      m(0, 0) = (rec.a1() + 3.0) / 6.0;
      m(1, 1) = (3.0 - rec.a1()) / 6.0;
      m(0, 1) = Complex(rec.a3(), -rec.a2()) / 6.0;
      m(1, 0) = std::conj(m(0, 1));
      break;
  }
  return DensityMatrix::make(m);
}

DensityMatrix maxent_state(const MeasurementRecord& rec) {
  const double n = rec.bloch_norm_measured();
  if (n > 1.0 + tol::consist) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "record implies Bloch norm %.12g > 1; no state reproduces it", n);
    throw Error(ErrorCode::maxent_not_positive, buf);
  }
  BlochVector b;
  b.a1 = rec.a1();
  b.a2 = rec.k() >= 2 ? rec.a2() : 0.0;
  b.a3 = rec.k() >= 3 ? rec.a3() : 0.0;
  // Unmeasured components maximize entropy at zero.
  if (n > 1.0) {  // within tol::consist; shrink onto the ball
    const double s = 1.0 / n;
    b.a1 *= s;
    b.a2 *= s;
    b.a3 *= s;
  }
  return from_bloch(b);
}

CompatibleStates compatible_initial_states(const MeasurementRecord& rec) {
  CompatibleStates out;
  const double n = rec.bloch_norm_measured();
  if (n > 1.0 + tol::consist) {
    throw Error(ErrorCode::inconsistent_record, "measured Bloch norm exceeds 1");
  }

  switch (rec.k()) {
    case 1: {
      const double p1 = rec.prob(0);
      const double w0 = std::sqrt(p1);
      const double w1 = std::sqrt(1.0 - p1);
      out.continuous_family = true;
      out.family = [w0, w1](double theta) {
        return PureState(Complex(w0), w1 * std::polar(1.0, theta));
      };
      break;
    }
    case 2: {
      double a1 = rec.a1();
      double a2 = rec.a2();
      if (n > 1.0) {  // within tol::consist; shrink onto the circle
        a1 /= n;
        a2 /= n;
      }
      const double rem = 1.0 - a1 * a1 - a2 * a2;
      const double a3 = std::sqrt(std::max(0.0, rem));
      out.states.push_back(spectral(from_bloch(BlochVector{a1, a2, a3})).v_plus);
      if (a3 > tol::consist) {
        out.states.push_back(spectral(from_bloch(BlochVector{a1, a2, -a3})).v_plus);
      }
      break;
    }
    default: {
      if (n * n < 1.0 - tol::consist) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "complete record has Bloch norm %.12g != 1; no pure state matches", n);
        throw Error(ErrorCode::inconsistent_record, buf);
      }
      BlochVector b{rec.a1(), rec.a2(), rec.a3()};
      if (n > 1.0) {
        const double s = 1.0 / n;
        b.a1 *= s;
        b.a2 *= s;
        b.a3 *= s;
      }
      out.states.push_back(spectral(from_bloch(b)).v_plus);
      break;
    }
  }
  return out;
}

}  // namespace qpurify
