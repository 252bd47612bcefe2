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

#ifndef QPURIFY_MAT_HPP
#define QPURIFY_MAT_HPP

#include <array>
#include <cmath>
#include <complex>

namespace qpurify {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> e{};

  static Mat2 identity() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(1)}}; }
  static Mat2 zero() { return Mat2{}; }

  Complex& operator()(int r, int c) { return e[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return e[2 * r + c]; }
};

/// Dense 4x4 complex matrix, row-major. Composite indices are system-major:
/// row = 2*system + environment.
struct Mat4 {
  std::array<Complex, 16> e{};

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = Complex(1);
    return m;
  }
  static Mat4 zero() { return Mat4{}; }

  Complex& operator()(int r, int c) { return e[4 * r + c]; }
  const Complex& operator()(int r, int c) const { return e[4 * r + c]; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

inline Mat2 operator*(const Complex& s, const Mat2& a) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = s * a.e[i];
  return m;
}

inline Mat2 operator*(double s, const Mat2& a) { return Complex(s) * a; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      m(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  return m;
}

inline Mat2 adjoint(const Mat2& a) {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      m(r, c) = std::conj(a(c, r));
  return m;
}

inline Complex trace(const Mat2& a) { return a(0, 0) + a(1, 1); }

inline double max_abs(const Mat2& a) {
  double m = 0.0;
  for (const auto& v : a.e) m = std::max(m, std::abs(v));
  return m;
}

/// u v^dagger for 2-vectors.
inline Mat2 outer(const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      m(r, c) = u[r] * std::conj(v[c]);
  return m;
}

inline Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

inline Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

inline Mat4 operator*(const Complex& s, const Mat4& a) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = s * a.e[i];
  return m;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex s = 0;
      for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      m(r, c) = s;
    }
  return m;
}

inline Mat4 adjoint(const Mat4& a) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      m(r, c) = std::conj(a(c, r));
  return m;
}

inline Complex trace(const Mat4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

inline double max_abs(const Mat4& a) {
  double m = 0.0;
  for (const auto& v : a.e) m = std::max(m, std::abs(v));
  return m;
}

/// Kronecker product with system-major ordering: (a kron b)[(i,j),(k,l)] = a(i,k) b(j,l).
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return m;
}

}  // namespace qpurify

#endif
