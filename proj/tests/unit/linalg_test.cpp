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

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "linalg.hpp"
#include "qubit.hpp"
#include "test_support.hpp"

namespace bellbound {
namespace {

using linalg::CMat4;
using linalg::Frame3;
using linalg::Mat2;
using std::numbers::pi;
using testing::expect_error;
using testing::random_matrix;

template <std::size_t N>
void expect_valid_svd(const linalg::Square<N>& m) {
  const auto f = linalg::svd(m);
  const auto back = f.u * linalg::diagonal<N>(f.s) * linalg::transpose(f.v);
  EXPECT_LT(linalg::max_abs(back - m), 1e-12);
  const auto id = linalg::Square<N>::identity();
  EXPECT_LT(linalg::max_abs(linalg::transpose(f.u) * f.u - id), 1e-12);
  EXPECT_LT(linalg::max_abs(linalg::transpose(f.v) * f.v - id), 1e-12);
  double sum_sq = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    EXPECT_GE(f.s[k], 0.0);
    if (k > 0) EXPECT_LE(f.s[k], f.s[k - 1]);
    sum_sq += f.s[k] * f.s[k];
    sum += f.s[k];
  }
  EXPECT_NEAR(linalg::trace(linalg::transpose(m) * m), sum_sq, 1e-10);
  EXPECT_LE(std::abs(linalg::trace(m)), sum + 1e-10);
}

TEST(Svd, DiagonalGivesAbsoluteValues) {
  const auto s = linalg::singular_values(linalg::diagonal<3>({3.0, -2.0, 1.0}));
  EXPECT_NEAR(s[0], 3.0, 1e-14);
  EXPECT_NEAR(s[1], 2.0, 1e-14);
  EXPECT_NEAR(s[2], 1.0, 1e-14);
}

TEST(Svd, OrthogonalColumns) {
  Mat2 m;
  m.a = {1.0, 1.0, 1.0, -1.0};
  const auto s = linalg::singular_values(m);
  EXPECT_NEAR(s[0], std::numbers::sqrt2, 1e-14);
  EXPECT_NEAR(s[1], std::numbers::sqrt2, 1e-14);
  expect_valid_svd(m);
}

TEST(Svd, RandomMatricesAllSizes) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    expect_valid_svd(random_matrix<2>(rng));
    expect_valid_svd(random_matrix<3>(rng));
    expect_valid_svd(random_matrix<4>(rng));
  }
}

TEST(Svd, RankDeficientAndZero) {
  expect_valid_svd(linalg::Mat3{});
  expect_valid_svd(linalg::Mat4{});
  expect_valid_svd(linalg::outer(Vec3{1.0, 2.0, -1.0}, Vec3{0.5, 0.0, 3.0}));
  const auto s = linalg::singular_values(linalg::outer(Vec3{3.0, 0.0, 4.0}, Vec3{0.0, 1.0, 0.0}));
  EXPECT_NEAR(s[0], 5.0, 1e-13);
  EXPECT_NEAR(s[1], 0.0, 1e-13);
}

TEST(Svd, RepeatedSingularValues) {
  expect_valid_svd(linalg::Mat3::identity());
  expect_valid_svd(-1.0 * linalg::Mat4::identity());
  Rng rng(3);
  const Mat3 r = random_rotation(rng);
  expect_valid_svd(r * linalg::diagonal<3>({0.7, 0.7, 0.2}));
}

TEST(Svd, RotationInvariance) {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const Mat3 m = random_matrix<3>(rng);
    const auto s = linalg::singular_values(m);
    const auto s2 = linalg::singular_values(random_rotation(rng) * m * random_rotation(rng));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s[k], s2[k], 1e-10);
  }
}

TEST(Svd, RejectsNonFinite) {
  Mat3 m;
  m(1, 2) = std::numeric_limits<double>::quiet_NaN();
  expect_error(ErrorKind::invalid_input, [&] { linalg::svd(m); });
  Mat2 m2;
  m2(0, 0) = std::numeric_limits<double>::infinity();
  expect_error(ErrorKind::invalid_input, [&] { linalg::svd(m2); });
}

TEST(Determinant, KnownValues) {
  EXPECT_DOUBLE_EQ(linalg::determinant(linalg::diagonal<3>({2.0, 3.0, -1.0})), -6.0);
  Mat2 m;
  m.a = {1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(linalg::determinant(m), -2.0);
}

// Characteristic polynomial coefficients c0..c4 (c4 = 1) by Faddeev-LeVerrier.
std::array<double, 5> char_poly(const CMat4& a) {
  std::array<double, 5> c{};
  c[4] = 1.0;
  CMat4 m;
  for (int k = 1; k <= 4; ++k) {
    CMat4 next = a * m;
    for (int i = 0; i < 4; ++i) next(i, i) += c[5 - k];
    m = next;
    c[4 - k] = -std::real(linalg::trace(a * m)) / k;
  }
  return c;
}

TEST(HermitianEigenvalues, MatchCharacteristicPolynomial) {
  Rng rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    CMat4 h;
    for (int i = 0; i < 4; ++i) {
      h(i, i) = u(rng);
      for (int j = i + 1; j < 4; ++j) {
        h(i, j) = {u(rng), u(rng)};
        h(j, i) = std::conj(h(i, j));
      }
    }
    const auto ev = linalg::hermitian_eigenvalues_4(h);
    const auto c = char_poly(h);
    // Expand prod (x - ev_i).
    std::array<double, 5> p{1.0, 0.0, 0.0, 0.0, 0.0};  // ascending from x^0
    int degree = 0;
    for (double r : ev) {
      std::array<double, 5> q{};
      for (int k = 0; k <= degree; ++k) {
        q[k + 1] += p[k];
        q[k] -= r * p[k];
      }
      p = q;
      ++degree;
    }
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(p[k], c[k], 1e-9) << "coefficient " << k;
    for (int k = 1; k < 4; ++k) EXPECT_GE(ev[k - 1], ev[k]);
  }
}

TEST(HermitianEigenvalues, KnownSpectra) {
  CMat4 quarter;
  for (int i = 0; i < 4; ++i) quarter(i, i) = 0.25;
  for (double e : linalg::hermitian_eigenvalues_4(quarter)) EXPECT_NEAR(e, 0.25, 1e-14);
  const auto ev = linalg::hermitian_eigenvalues_4(density_matrix(singlet()));
  EXPECT_NEAR(ev[0], 1.0, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(ev[k], 0.0, 1e-12);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
  CMat4 h;
  h(0, 1) = {0.0, 1.0};
  h(1, 0) = {0.0, 1.0};
  expect_error(ErrorKind::invalid_input, [&] { linalg::hermitian_eigenvalues_4(h); });
}

TEST(SymmetricEigenvalues, TraceAndDeterminant) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const Mat3 g = random_matrix<3>(rng);
    const Mat3 s = g + linalg::transpose(g);
    const auto ev = linalg::symmetric_eigenvalues(s);
    EXPECT_NEAR(ev[0] + ev[1] + ev[2], linalg::trace(s), 1e-12);
    EXPECT_NEAR(ev[0] * ev[1] * ev[2], linalg::determinant(s), 1e-11);
    EXPECT_GE(ev[0], ev[1]);
    EXPECT_GE(ev[1], ev[2]);
  }
}

void expect_orthonormal(const Frame3& f, double tol = 1e-12) {
  const linalg::Mat3 m = linalg::frame_matrix(f);
  EXPECT_LT(linalg::max_abs(linalg::transpose(m) * m - linalg::Mat3::identity()), tol);
  EXPECT_NEAR(linalg::determinant(m), 1.0, tol);
}

TEST(Frames, RotationBetweenIdenticalFramesIsIdentity) {
  const Frame3 f = linalg::complete_frame(linalg::normalized({1.0, 2.0, 3.0}));
  EXPECT_LT(linalg::max_abs(linalg::rotation_between(f, f) - linalg::Mat3::identity()), 1e-14);
}

TEST(Frames, QuarterTurnAboutZ) {
  const Frame3 src;
  const Frame3 dst{{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  const Mat3 r = linalg::rotation_between(src, dst);
  const Mat3 expected = linalg::rotation_from_axis_angle({0.0, 0.0, pi / 2});
  EXPECT_LT(linalg::max_abs(r - expected), 1e-14);
}

TEST(Frames, RandomPairsMapCorrectly) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const Frame3 a = linalg::complete_frame(random_unit_vector(rng), random_unit_vector(rng));
    const Frame3 b = linalg::complete_frame(random_unit_vector(rng));
    expect_orthonormal(a);
    expect_orthonormal(b);
    const Mat3 r = linalg::rotation_between(a, b);
    EXPECT_LT(linalg::max_abs(linalg::transpose(r) * r - linalg::Mat3::identity()), 1e-12);
    EXPECT_NEAR(linalg::determinant(r), 1.0, 1e-12);
    EXPECT_LT(linalg::norm(r * a.e1 - b.e1), 1e-12);
    EXPECT_LT(linalg::norm(r * a.e2 - b.e2), 1e-12);
    EXPECT_LT(linalg::norm(r * a.e3 - b.e3), 1e-12);
  }
}

TEST(Frames, DegenerateFrameRejected) {
  const Frame3 bad{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  expect_error(ErrorKind::invalid_input, [&] { linalg::rotation_between(bad, Frame3{}); });
  const Frame3 left_handed{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -1.0}};
  expect_error(ErrorKind::invalid_input, [&] { linalg::check_frame(left_handed); });
}

TEST(Frames, CompleteFrameRules) {
  const Frame3 f = linalg::complete_frame({0.0, 0.0, 1.0});
  EXPECT_EQ(f.e2, (Vec3{1.0, 0.0, 0.0}));
  EXPECT_EQ(f.e3, (Vec3{0.0, 1.0, 0.0}));
  const double h = 1.0 / std::numbers::sqrt2;
  const Frame3 g = linalg::complete_frame({1.0, 0.0, 0.0}, Vec3{h, h, 0.0});
  EXPECT_LT(linalg::norm(g.e2 - Vec3{0.0, 1.0, 0.0}), 1e-15);
  // A hint parallel to e1 is unusable and falls back to the basis rule.
  const Frame3 p = linalg::complete_frame({0.0, 0.0, 1.0}, Vec3{0.0, 0.0, -1.0});
  EXPECT_EQ(p.e2, (Vec3{1.0, 0.0, 0.0}));
  Rng rng(16);
  for (int i = 0; i < 100; ++i) expect_orthonormal(linalg::complete_frame(random_unit_vector(rng)));
  expect_error(ErrorKind::invalid_input, [] { linalg::complete_frame({0.0, 0.0, 0.0}); });
}

TEST(Rotations, AxisAngleIsProperRotation) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const Vec3 w = testing::uniform(rng, 0.0, 3.0) * random_unit_vector(rng);
    const Mat3 r = linalg::rotation_from_axis_angle(w);
    EXPECT_LT(linalg::max_abs(linalg::transpose(r) * r - linalg::Mat3::identity()), 1e-13);
    EXPECT_NEAR(linalg::determinant(r), 1.0, 1e-13);
    EXPECT_LT(linalg::norm(r * w - w), 1e-13);
    EXPECT_NEAR(linalg::trace(r), 1.0 + 2.0 * std::cos(linalg::norm(w)), 1e-13);
  }
  EXPECT_EQ(linalg::rotation_from_axis_angle({0.0, 0.0, 0.0}), linalg::Mat3::identity());
}

TEST(Vectors, NormalizedAndCross) {
  EXPECT_LT(linalg::norm(linalg::normalized({3.0, 0.0, 4.0}) - Vec3{0.6, 0.0, 0.8}), 1e-15);
  EXPECT_EQ(linalg::cross({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}), (Vec3{0.0, 0.0, 1.0}));
  expect_error(ErrorKind::invalid_input, [] { linalg::normalized({0.0, 0.0, 0.0}); });
}

}  // namespace
}  // namespace bellbound
