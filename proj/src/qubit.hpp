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

// Two-valued qubit observables X = bias * 1 + strength * sigma.x and two-qubit
// states in Fano form (local Bloch vectors a, b and spin correlation matrix T).

#ifndef BELLBOUND_QUBIT_HPP
#define BELLBOUND_QUBIT_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "linalg.hpp"

namespace bellbound {

using linalg::Mat3;
using linalg::Mat4;
using linalg::Vec3;
using linalg::Vec4;
// Vector arithmetic lives in linalg; std::array is not found by ADL there.
using linalg::operator*;
using linalg::operator+;
using linalg::operator-;

using Rng = std::mt19937_64;

/// Slack on strength + |bias| <= 1.
inline constexpr double kConstraintSlack = 1e-12;
/// Smallest admissible eigenvalue of a reconstructed density matrix.
inline constexpr double kPhysicalityTol = -1e-10;

struct Observable {
  double bias = 0.0;
  double strength = 1.0;
  Vec3 direction{0.0, 0.0, 1.0};

  /// The 4-vector (bias, strength * direction).
  Vec4 u() const {
    return {bias, strength * direction[0], strength * direction[1],
            strength * direction[2]};
  }
};

/// Validates strength + |bias| <= 1 and the direction. Directions within 1e-6
/// of unit norm are renormalized; anything further off is rejected.
Observable make_observable(double bias, double strength, const Vec3& direction);

struct FanoState {
  Vec3 a{};
  Vec3 b{};
  Mat3 t{};

  /// 4x4 matrix [[1, b^T], [a, T]].
  Mat4 theta() const;
  bool is_t_state(double tol = 1e-10) const;
};

/// Builds and validates a state: bounded Fano components and a positive
/// semidefinite reconstructed density matrix. Throws unphysical_state.
FanoState state_from_fano(const Vec3& a, const Vec3& b, const Mat3& t);

/// rho = 1/4 sum_{mu,nu} Theta_{mu nu} sigma_mu (x) sigma_nu.
linalg::CMat4 density_matrix(const FanoState& s);

/// Inverse of density_matrix: a_i = tr(rho s_i x 1), b_j, T_ij.
FanoState fano_components(const linalg::CMat4& rho);

/// Descending eigenvalues of the reconstructed density matrix.
std::array<double, 4> state_eigenvalues(const FanoState& s);

/// Singular values of T, descending.
std::array<double, 3> correlation_singular_values(const FanoState& s);

/// X, X' on side A and Y, Y' on side B.
struct Scenario {
  Observable x, xp, y, yp;

  /// Angle between the A-side directions, in [0, pi].
  double theta() const;
  /// Angle between the B-side directions, in [0, pi].
  double phi() const;
};

struct StrengthQuad {
  double sx = 1.0, sxp = 1.0, sy = 1.0, syp = 1.0;
};

StrengthQuad strengths_of(const Scenario& sc);
void check_strengths(const StrengthQuad& q);

// Canonical states.
FanoState singlet();
/// Singlet mixed with white noise, T = -w I. Physical for w in [-1/3, 1].
FanoState werner(double w);
/// T = diag(t1, t2, t3), a = b = 0; (t1, t2, t3) must lie in the tetrahedron
/// spanned by (-1,-1,-1), (-1,1,1), (1,-1,1), (1,1,-1).
FanoState bell_diagonal(double t1, double t2, double t3);
/// Product of two single-qubit states with Bloch vectors a and b.
FanoState product(const Vec3& a, const Vec3& b);

enum class StateKind { tstate, general, pure };

/// Haar-random proper rotation.
Mat3 random_rotation(Rng& rng);
Vec3 random_unit_vector(Rng& rng);

FanoState random_state(Rng& rng, StateKind kind);
FanoState random_state(std::uint64_t seed, StateKind kind);

/// Direction uniform on the sphere. Strength uniform on [0, 1] unless fixed;
/// bias zero if `unbiased`, else uniform on [-(1 - strength), 1 - strength].
Observable random_observable(Rng& rng, std::optional<double> fixed_strength,
                             bool unbiased);
Observable random_observable(std::uint64_t seed,
                             std::optional<double> fixed_strength, bool unbiased);

}  // namespace bellbound

#endif  // BELLBOUND_QUBIT_HPP
