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

#include "linalg.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace bellbound::linalg {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kJacobiTol = 1e-14;

template <std::size_t N>
void require_finite(const Square<N>& m, const char* what) {
  if (!all_finite(m))
    throw Error(ErrorKind::invalid_input,
                std::string(what) + ": matrix has non-finite entries");
}

// Orthonormalizes the columns of u in place (modified Gram-Schmidt, two
// passes). Columns flagged in `empty` have no usable direction and are filled
// with the standard basis vector least represented in the span so far.
template <std::size_t N>
void orthonormalize_columns(Square<N>& u, std::array<bool, N> empty) {
  for (std::size_t j = 0; j < N; ++j) {
    auto c = column(u, j);
    for (int pass = 0; pass < 2 && !empty[j]; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const auto prev = column(u, k);
        c = c - dot(prev, c) * prev;
      }
    }
    double n = norm(c);
    if (empty[j] || n < 0.5) {
      // Pick the basis vector with the largest residual after projection.
      double best = -1.0;
      std::array<double, N> pick{};
      for (std::size_t b = 0; b < N; ++b) {
        std::array<double, N> e{};
        e[b] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
          for (std::size_t k = 0; k < j; ++k) {
            const auto prev = column(u, k);
            e = e - dot(prev, e) * prev;
          }
        const double en = norm(e);
        if (en > best + 1e-12) {
          best = en;
          pick = e;
        }
      }
      c = pick;
      n = best;
    }
    set_column(u, j, (1.0 / n) * c);
  }
}

// Hestenes one-sided Jacobi: rotate column pairs of the working copy until
// all columns are mutually orthogonal; V accumulates the rotations.
template <std::size_t N>
SvdFactors<N> jacobi_svd(const Square<N>& m) {
  Square<N> w = m;
  Square<N> v = Square<N>::identity();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kJacobiTol * std::sqrt(alpha * beta))
          continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < N; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::array<double, N> norms{};
  for (std::size_t j = 0; j < N; ++j) norms[j] = norm(column(w, j));

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return norms[x] > norms[y];
  });

  SvdFactors<N> f;
  std::array<bool, N> empty{};
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t j = order[k];
    f.s[k] = norms[j];
    set_column(f.v, k, column(v, j));
    if (norms[j] > 0.0) {
      set_column(f.u, k, (1.0 / norms[j]) * column(w, j));
    } else {
      empty[k] = true;
    }
  }
  orthonormalize_columns(f.u, empty);
  return f;
}

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(Square<N> a) {
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        (i == j ? diag : off) += a(i, j) * a(i, j);
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;

    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) plane rotation.
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace

double determinant(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double determinant(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Vec3 cross(const Vec3& x, const Vec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
          x[0] * y[1] - x[1] * y[0]};
}

Mat3 outer(const Vec3& x, const Vec3& y) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = x[i] * y[j];
  return m;
}

Mat4 outer(const Vec4& x, const Vec4& y) {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = x[i] * y[j];
  return m;
}

Vec3 normalized(const Vec3& x) {
  const double n = norm(x);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::invalid_input, "cannot normalize a zero or non-finite vector");
  return (1.0 / n) * x;
}

Mat3 rotation_from_axis_angle(const Vec3& w) {
  const double angle = norm(w);
  Mat3 r = Mat3::identity();
  if (angle == 0.0) return r;
  const Vec3 k = (1.0 / angle) * w;
  Mat3 kx;
  kx(0, 1) = -k[2];
  kx(0, 2) = k[1];
  kx(1, 0) = k[2];
  kx(1, 2) = -k[0];
  kx(2, 0) = -k[1];
  kx(2, 1) = k[0];
  return r + std::sin(angle) * kx + (1.0 - std::cos(angle)) * (kx * kx);
}

SvdFactors<2> svd(const Mat2& m) {
  require_finite(m, "svd");
  // m = Rot(phi) * diag(sx, sy) * Rot(theta) with Rot(x) = [[c, -s], [s, c]].
  const double e = 0.5 * (m(0, 0) + m(1, 1));
  const double f = 0.5 * (m(0, 0) - m(1, 1));
  const double g = 0.5 * (m(1, 0) + m(0, 1));
  const double h = 0.5 * (m(1, 0) - m(0, 1));
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double sx = q + r;
  // q^2 - r^2 = det(m); dividing avoids cancellation in q - r.
  const double sy = sx > 0.0 ? determinant(m) / sx : 0.0;
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);

  SvdFactors<2> out;
  out.u(0, 0) = std::cos(phi);
  out.u(0, 1) = -std::sin(phi);
  out.u(1, 0) = std::sin(phi);
  out.u(1, 1) = std::cos(phi);
  // v = Rot(theta)^T
  out.v(0, 0) = std::cos(theta);
  out.v(0, 1) = -std::sin(theta);
  out.v(1, 0) = std::sin(theta);
  out.v(1, 1) = std::cos(theta);
  out.v = transpose(out.v);
  out.s = {sx, std::abs(sy)};
  if (sy < 0.0) {
    out.v(0, 1) = -out.v(0, 1);
    out.v(1, 1) = -out.v(1, 1);
  }
  return out;
}

SvdFactors<3> svd(const Mat3& m) {
  require_finite(m, "svd");
  return jacobi_svd(m);
}

SvdFactors<4> svd(const Mat4& m) {
  require_finite(m, "svd");
  return jacobi_svd(m);
}

std::array<double, 3> symmetric_eigenvalues(const Mat3& m) {
  require_finite(m, "symmetric_eigenvalues");
  return jacobi_eigenvalues(m);
}

std::array<double, 4> symmetric_eigenvalues(const Mat4& m) {
  require_finite(m, "symmetric_eigenvalues");
  return jacobi_eigenvalues(m);
}

std::array<double, 4> hermitian_eigenvalues_4(const CMat4& h) {
  for (const auto& z : h.a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::invalid_input,
                  "hermitian_eigenvalues_4: matrix has non-finite entries");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > 1e-12)
        throw Error(ErrorKind::invalid_input,
                    "hermitian_eigenvalues_4: matrix is not Hermitian");

  // Real embedding [[Re, -Im], [Im, Re]] has every eigenvalue of h twice.
  Square<8> big;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      // Symmetrize so that roundoff-level asymmetry cannot leak in.
      const std::complex<double> z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      big(i, j) = z.real();
      big(i + 4, j + 4) = z.real();
      big(i, j + 4) = -z.imag();
      big(i + 4, j) = z.imag();
    }
  const auto ev = jacobi_eigenvalues(big);
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = 0.5 * (ev[2 * k] + ev[2 * k + 1]);
  return out;
}

void check_frame(const Frame3& f, double tol) {
  const std::array<const Vec3*, 3> e{&f.e1, &f.e2, &f.e3};
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(norm(*e[i]) - 1.0) > tol)
      throw Error(ErrorKind::invalid_input, "frame vector is not unit length");
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(dot(*e[i], *e[j])) > tol)
        throw Error(ErrorKind::invalid_input, "frame vectors are not orthogonal");
  }
  if (norm(cross(f.e1, f.e2) - f.e3) > tol)
    throw Error(ErrorKind::invalid_input, "frame is not right-handed");
}

Mat3 frame_matrix(const Frame3& f) {
  Mat3 m;
  set_column(m, 0, f.e1);
  set_column(m, 1, f.e2);
  set_column(m, 2, f.e3);
  return m;
}

Mat3 rotation_between(const Frame3& src, const Frame3& dst) {
  check_frame(src);
  check_frame(dst);
  return frame_matrix(dst) * transpose(frame_matrix(src));
}

Frame3 complete_frame(const Vec3& e1, std::optional<Vec3> e2_hint) {
  const double n1 = norm(e1);
  if (!(n1 > 0.0))
    throw Error(ErrorKind::invalid_input, "complete_frame: zero vector");
  if (std::abs(n1 - 1.0) > 1e-10)
    throw Error(ErrorKind::invalid_input, "complete_frame: e1 is not a unit vector");
  const Vec3 u = (1.0 / n1) * e1;

  Vec3 e2{};
  bool have = false;
  if (e2_hint) {
    const Vec3 r = *e2_hint - dot(u, *e2_hint) * u;
    if (norm(r) > 1e-8) {
      e2 = normalized(r);
      have = true;
    }
  }
  if (!have) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(u[i]) < std::abs(u[k])) k = i;
    Vec3 b{};
    b[k] = 1.0;
    e2 = normalized(b - dot(u, b) * u);
  }
  return Frame3{u, e2, cross(u, e2)};
}

}  // namespace bellbound::linalg
