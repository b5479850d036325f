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
#include <numbers>

#include <gtest/gtest.h>

#include "bounds.hpp"
#include "qubit.hpp"
#include "test_support.hpp"

namespace bellbound {
namespace {

using testing::expect_error;

TEST(Observable, Construction) {
  const Observable z = make_observable(0.0, 1.0, {0.0, 0.0, 1.0});
  EXPECT_EQ(z.strength, 1.0);
  EXPECT_EQ(z.direction, (Vec3{0.0, 0.0, 1.0}));
  const Observable coin = make_observable(0.4, 0.0, {1.0, 0.0, 0.0});
  EXPECT_EQ(coin.u(), (Vec4{0.4, 0.0, 0.0, 0.0}));
  expect_error(ErrorKind::constraint, [] { make_observable(0.5, 0.6, {1.0, 0.0, 0.0}); });
  expect_error(ErrorKind::constraint, [] { make_observable(-0.5, 0.6, {1.0, 0.0, 0.0}); });
  expect_error(ErrorKind::constraint, [] { make_observable(0.0, -0.1, {1.0, 0.0, 0.0}); });
}

TEST(Observable, DirectionNormalization) {
  const Observable x = make_observable(0.0, 0.5, {1.0 + 5e-7, 0.0, 0.0});
  EXPECT_NEAR(linalg::norm(x.direction), 1.0, 1e-15);
  expect_error(ErrorKind::invalid_input, [] { make_observable(0.0, 0.5, {1.1, 0.0, 0.0}); });
  expect_error(ErrorKind::invalid_input, [] { make_observable(0.0, 0.5, {0.0, 0.0, 0.0}); });
}

TEST(State, CanonicalSpectra) {
  const auto s = state_eigenvalues(state_from_fano({}, {}, -1.0 * Mat3::identity()));
  EXPECT_NEAR(s[0], 1.0, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(s[k], 0.0, 1e-12);
  const auto w = state_eigenvalues(state_from_fano({}, {}, -0.5 * Mat3::identity()));
  EXPECT_NEAR(w[0], 0.625, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(w[k], 0.125, 1e-12);
  expect_error(ErrorKind::unphysical_state, [] { state_from_fano({}, {}, Mat3::identity()); });
  expect_error(ErrorKind::unphysical_state,
               [] { state_from_fano({1.0, 0.0, 0.0}, {}, -1.0 * Mat3::identity()); });
}

TEST(State, CorrelationSingularValues) {
  for (double v : correlation_singular_values(singlet())) EXPECT_NEAR(v, 1.0, 1e-14);
  for (double v : correlation_singular_values(werner(0.3))) EXPECT_NEAR(v, 0.3, 1e-14);
  const auto p = correlation_singular_values(product({0.0, 0.6, 0.0}, {0.5, 0.0, 0.0}));
  EXPECT_NEAR(p[0], 0.3, 1e-14);
  EXPECT_NEAR(p[1], 0.0, 1e-14);
  EXPECT_NEAR(p[2], 0.0, 1e-14);
}

TEST(State, PureProductStates) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto s = correlation_singular_values(product(random_unit_vector(rng), random_unit_vector(rng)));
    EXPECT_NEAR(s[0], 1.0, 1e-10);
    EXPECT_NEAR(s[1], 0.0, 1e-10);
    EXPECT_NEAR(s[2], 0.0, 1e-10);
  }
}

TEST(State, CanonicalStates) {
  EXPECT_EQ(singlet().t, -1.0 * Mat3::identity());
  EXPECT_NEAR(horodecki(werner(1.0 / std::numbers::sqrt2).t), 2.0, 1e-15);
  const auto bell = state_eigenvalues(bell_diagonal(1.0, 1.0, -1.0));
  EXPECT_NEAR(bell[0], 1.0, 1e-12);
  EXPECT_NEAR(bell[1], 0.0, 1e-12);
  expect_error(ErrorKind::unphysical_state, [] { bell_diagonal(1.0, 1.0, 1.0); });
  expect_error(ErrorKind::unphysical_state, [] { werner(-0.5); });
}

TEST(State, DensityMatrixRoundTrip) {
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const FanoState s = random_state(rng, StateKind::general);
    const FanoState back = fano_components(density_matrix(s));
    EXPECT_LT(linalg::norm(back.a - s.a), 1e-13);
    EXPECT_LT(linalg::norm(back.b - s.b), 1e-13);
    EXPECT_LT(linalg::max_abs(back.t - s.t), 1e-13);
    EXPECT_NEAR(std::real(linalg::trace(density_matrix(s))), 1.0, 1e-14);
  }
}

TEST(RandomState, KindsAndPhysicality) {
  Rng rng(23);
  for (int i = 0; i < 10000; ++i) {
    const auto kind = static_cast<StateKind>(i % 3);
    const FanoState s = random_state(rng, kind);
    EXPECT_NO_THROW(state_from_fano(s.a, s.b, s.t));
    if (kind == StateKind::tstate) {
      EXPECT_EQ(s.a, (Vec3{}));
      EXPECT_EQ(s.b, (Vec3{}));
    }
    if (kind == StateKind::pure && i % 50 == 2) {
      const auto ev = state_eigenvalues(s);
      EXPECT_NEAR(ev[0], 1.0, 1e-10);
      EXPECT_NEAR(ev[1], 0.0, 1e-10);
    }
  }
}

TEST(RandomState, Deterministic) {
  for (auto kind : {StateKind::tstate, StateKind::general, StateKind::pure}) {
    const FanoState a = random_state(99, kind), b = random_state(99, kind);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.t, b.t);
  }
}

TEST(RandomState, LocalRotationInvariance) {
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const FanoState s = random_state(rng, StateKind::general);
    const Mat3 o1 = random_rotation(rng), o2 = random_rotation(rng);
    const auto before = linalg::singular_values(s.t);
    const auto after = linalg::singular_values(linalg::transpose(o1) * s.t * o2);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(before[k], after[k], 1e-10);
  }
}

TEST(RandomObservable, Constraints) {
  Rng rng(25);
  for (int i = 0; i < 1000; ++i) {
    const Observable x = random_observable(rng, 0.3, false);
    EXPECT_EQ(x.strength, 0.3);
    EXPECT_LE(std::abs(x.bias), 0.7 + 1e-15);
    EXPECT_NEAR(linalg::norm(x.direction), 1.0, 1e-14);
    const Observable p = random_observable(rng, 1.0, true);
    EXPECT_EQ(p.bias, 0.0);
    EXPECT_EQ(p.strength, 1.0);
  }
  const Observable a = random_observable(5, std::nullopt, false);
  const Observable b = random_observable(5, std::nullopt, false);
  EXPECT_EQ(a.u(), b.u());
}

TEST(Scenario, AnglesAndStrengths) {
  Scenario sc;
  sc.x.direction = {1.0, 0.0, 0.0};
  sc.xp.direction = {0.0, 1.0, 0.0};
  sc.y.direction = {0.0, 0.0, 1.0};
  sc.yp.direction = {0.0, 0.0, -1.0};
  sc.yp.strength = 0.25;
  EXPECT_NEAR(sc.theta(), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(sc.phi(), std::numbers::pi, 1e-15);
  EXPECT_EQ(strengths_of(sc).syp, 0.25);
  expect_error(ErrorKind::invalid_input, [] { check_strengths({1.5, 1.0, 1.0, 1.0}); });
}

}  // namespace
}  // namespace bellbound
