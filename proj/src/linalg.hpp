// Copyright 2026 The bellbound Authors
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

// Fixed-size real linear algebra for 2x2, 3x3 and 4x4 problems: singular value
// decompositions, Hermitian eigenvalues and orthonormal frame utilities.
//
// Everything here is a pure function of its arguments. Matrices are small
// row-major value types; no heap allocation takes place.

#ifndef BELLBOUND_LINALG_HPP
#define BELLBOUND_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>

namespace bellbound::linalg {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

/// Row-major N x N matrix.
template <std::size_t N, class T = double>
struct Square {
  static constexpr std::size_t dim = N;
  std::array<T, N * N> a{};

  constexpr T& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const {
    return a[r * N + c];
  }

  static constexpr Square identity() {
    Square m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }

  friend bool operator==(const Square&, const Square&) = default;
};

using Mat2 = Square<2>;
using Mat3 = Square<3>;
using Mat4 = Square<4>;
using CMat4 = Square<4, std::complex<double>>;

template <std::size_t N, class T>
Square<N, T> operator*(const Square<N, T>& x, const Square<N, T>& y) {
  Square<N, T> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const T xik = x(i, k);
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <std::size_t N, class T>
Square<N, T> operator+(Square<N, T> x, const Square<N, T>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
  return x;
}

template <std::size_t N, class T>
Square<N, T> operator-(Square<N, T> x, const Square<N, T>& y) {
  for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
  return x;
}

template <std::size_t N, class T>
Square<N, T> operator*(T k, Square<N, T> x) {
  for (auto& e : x.a) e *= k;
  return x;
}

template <std::size_t N, class T>
Square<N, T> transpose(const Square<N, T>& x) {
  Square<N, T> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(j, i) = x(i, j);
  return r;
}

template <std::size_t N, class T>
T trace(const Square<N, T>& x) {
  T t{};
  for (std::size_t i = 0; i < N; ++i) t += x(i, i);
  return t;
}

/// Largest absolute entry.
template <std::size_t N, class T>
double max_abs(const Square<N, T>& x) {
  double m = 0.0;
  for (const auto& e : x.a) m = std::max(m, static_cast<double>(std::abs(e)));
  return m;
}

template <std::size_t N>
bool all_finite(const Square<N>& x) {
  for (double e : x.a)
    if (!std::isfinite(e)) return false;
  return true;
}

template <std::size_t N>
Square<N> diagonal(const std::array<double, N>& d) {
  Square<N> m;
  for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
  return m;
}

template <std::size_t N>
std::array<double, N> column(const Square<N>& m, std::size_t j) {
  std::array<double, N> c{};
  for (std::size_t i = 0; i < N; ++i) c[i] = m(i, j);
  return c;
}

template <std::size_t N>
void set_column(Square<N>& m, std::size_t j, const std::array<double, N>& c) {
  for (std::size_t i = 0; i < N; ++i) m(i, j) = c[i];
}

template <std::size_t N>
std::array<double, N> operator*(const Square<N>& m,
                                const std::array<double, N>& v) {
  std::array<double, N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
  return r;
}

double determinant(const Mat2& m);
double determinant(const Mat3& m);

// --- 3-vectors -------------------------------------------------------------

template <std::size_t N>
double dot(const std::array<double, N>& x, const std::array<double, N>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
  return s;
}

template <std::size_t N>
double norm(const std::array<double, N>& x) {
  return std::sqrt(dot(x, x));
}

template <std::size_t N>
std::array<double, N> operator+(std::array<double, N> x,
                                const std::array<double, N>& y) {
  for (std::size_t i = 0; i < N; ++i) x[i] += y[i];
  return x;
}

template <std::size_t N>
std::array<double, N> operator-(std::array<double, N> x,
                                const std::array<double, N>& y) {
  for (std::size_t i = 0; i < N; ++i) x[i] -= y[i];
  return x;
}

template <std::size_t N>
std::array<double, N> operator*(double k, std::array<double, N> x) {
  for (auto& e : x) e *= k;
  return x;
}

Vec3 cross(const Vec3& x, const Vec3& y);

/// Outer product x y^T.
Mat3 outer(const Vec3& x, const Vec3& y);
Mat4 outer(const Vec4& x, const Vec4& y);

/// Unit vector along x. Throws invalid_input for a zero or non-finite vector.
Vec3 normalized(const Vec3& x);

/// Rotation exp([w]_x) by angle |w| about w/|w| (Rodrigues formula).
Mat3 rotation_from_axis_angle(const Vec3& w);

// --- decompositions --------------------------------------------------------

/// m = u * diag(s) * v^T with u, v orthogonal and s descending, non-negative.
/// u and v may have determinant -1.
template <std::size_t N>
struct SvdFactors {
  Square<N> u;
  std::array<double, N> s{};
  Square<N> v;
};

/// Closed form. Throws invalid_input on non-finite entries.
SvdFactors<2> svd(const Mat2& m);
/// One-sided Jacobi. Throws invalid_input on non-finite entries.
SvdFactors<3> svd(const Mat3& m);
SvdFactors<4> svd(const Mat4& m);

template <std::size_t N>
std::array<double, N> singular_values(const Square<N>& m) {
  return svd(m).s;
}

/// Eigenvalues of a real symmetric matrix, descending (cyclic Jacobi).
std::array<double, 3> symmetric_eigenvalues(const Mat3& m);
std::array<double, 4> symmetric_eigenvalues(const Mat4& m);

/// Eigenvalues of a complex Hermitian 4x4 matrix, descending. Throws
/// invalid_input if h deviates from Hermitian by more than 1e-12.
std::array<double, 4> hermitian_eigenvalues_4(const CMat4& h);

// --- frames ----------------------------------------------------------------

/// Right-handed orthonormal triple.
struct Frame3 {
  Vec3 e1{1.0, 0.0, 0.0};
  Vec3 e2{0.0, 1.0, 0.0};
  Vec3 e3{0.0, 0.0, 1.0};
};

/// Throws invalid_input unless the frame is orthonormal and right-handed to
/// within `tol`.
void check_frame(const Frame3& f, double tol = 1e-10);

/// Matrix whose columns are e1, e2, e3.
Mat3 frame_matrix(const Frame3& f);

/// Proper rotation R with R * src.ek = dst.ek.
Mat3 rotation_between(const Frame3& src, const Frame3& dst);

/// Completes the unit vector e1 to a right-handed frame. With a usable hint
/// e2 is the normalized part of the hint orthogonal to e1; otherwise the
/// standard basis vector with the smallest |component| along e1 is used
/// (lowest index wins ties).
Frame3 complete_frame(const Vec3& e1, std::optional<Vec3> e2_hint = {});

}  // namespace bellbound::linalg

#endif  // BELLBOUND_LINALG_HPP
