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

// Closed-form CHSH bounds for two-valued qubit observables of fixed strength,
// and compatibility (joint measurability) tests for pairs of observables.
//
// Notation used throughout: the A side measures X, X' with strengths sx, sxp
// and relative angle theta; the B side measures Y, Y' with strengths sy, syp
// and relative angle phi; s1 >= s2 are the two largest singular values of the
// spin correlation matrix T.

#ifndef BELLBOUND_BOUNDS_HPP
#define BELLBOUND_BOUNDS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "qubit.hpp"

namespace bellbound {

enum class Criterion {
  horodecki,        // 2 sqrt(s1^2 + s2^2)
  horodecki_upper,  // max{2, horodecki}, valid for arbitrary observables
  thm1,             // unbiased, fixed strengths and angles
  thm2,             // T-states, arbitrary biases
  cor1,             // unbiased, equal strengths per side, optimal angles
  cor2,             // unbiased, orthogonal angles (sufficient condition)
  cor3,             // thm1 maximized over the four CHSH relabelings
  cor4,             // cor1 on T-states with biases
  cor6,             // thm2 maximized over relabelings
  thm3,             // equal strengths on the A side, optimal angles
  thm4,             // s1 == s2, optimal angles
  sgen,             // necessary bound for arbitrary observables and states
};

std::string_view criterion_name(Criterion c);
/// Accepts the names produced by criterion_name. Throws invalid_input.
Criterion parse_criterion(std::string_view name);

struct Angles {
  double theta = 0.0;
  double phi = 0.0;
};

struct BoundReport {
  double value = 0.0;
  Criterion criterion = Criterion::thm1;
  bool violated = false;  // value > 2, no tolerance
  std::optional<Angles> optimal_angles;
  std::string notes;
};

BoundReport make_report(Criterion c, double value,
                        std::optional<Angles> angles = {}, std::string notes = {});

/// W matrix and derived quantities for a strength quad at fixed angles.
struct WBundle {
  linalg::Mat2 w;
  double coeff_a = 0.0, coeff_b = 0.0, coeff_c = 0.0, coeff_d = 0.0;
  double i_plus = 0.0;   // s1(W) + s2(W)
  double i_minus = 0.0;  // s1(W) - s2(W)
  double w_eig_plus = 0.0, w_eig_minus = 0.0;  // eigenvalues of W^T W
};

/// Sign and sum coefficients A, B, C, D of the W matrix.
std::array<double, 4> abcd_coefficients(const StrengthQuad& q);

/// Computes the bundle and cross-checks the closed-form I+-^2 against an SVD
/// of W; throws internal_consistency if they disagree by more than 1e-8.
WBundle w_bundle(const StrengthQuad& q, double theta, double phi);

/// Closed-form I+-(W)^2 straight from strengths and angles.
std::array<double, 2> i_squared_closed_form(const StrengthQuad& q, double theta,
                                            double phi);

double horodecki(const Mat3& t);
BoundReport horodecki_report(const FanoState& state);
BoundReport horodecki_upper(const FanoState& state);

/// s1(T) s1(W) + s2(T) s2(W).
BoundReport s0_bound(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi);
/// s0_bound maximized over the four CHSH relabelings.
BoundReport s0_tilde(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi);

/// Largest |B_X B_Y + B_X B_Y' + B_X' B_Y - B_X' B_Y'| subject to
/// strength + |bias| <= 1.
double j_max(const StrengthQuad& q);

/// T-state bounds; throw domain if the state has nonzero Bloch vectors.
BoundReport st_bound(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi);
BoundReport st_tilde(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi);

/// Equal strengths s_a on X, X' and s_b on Y, Y'; angles maximized.
BoundReport cor1_bound(const FanoState& state, double s_a, double s_b);
BoundReport cor2_sufficient(const FanoState& state, const StrengthQuad& q);
BoundReport cor4_bound(const FanoState& state, double s_a, double s_b);

struct StrengthThresholds {
  double unbiased = 0.0;  // 1 / sqrt(r)
  double biased = 0.0;    // 2 / (1 + r)
};
/// r = sqrt(s1^2 + s2^2) must be positive.
StrengthThresholds strength_thresholds(double radius_r);

/// Equal strengths s_a on the A side, sy >= syp on the B side; angles
/// maximized. With `biased_tstate` the state must be a T-state and biases are
/// free.
BoundReport thm3_bound(const FanoState& state, double s_a, double sy, double syp,
                       bool biased_tstate);

struct Thm4Branches {
  double a = 0.0, b = 0.0, c = 0.0;
  bool branch_one = false;  // c > 0 and |ab| <= c^2
  double branch_one_value = 0.0;
  double branch_two_value = 0.0;
};
Thm4Branches thm4_branches(double s1, const StrengthQuad& q);

/// Requires s1(T) == s2(T) within 1e-8 (domain error otherwise).
BoundReport thm4_bound(const FanoState& state, const StrengthQuad& q,
                       bool biased_tstate);

/// sum_j s_j(Theta) s_j(N) for the explicit observables of `sc`.
BoundReport sgen_bound(const Scenario& sc, const FanoState& state);

// --- compatibility -------------------------------------------------------

/// Slack applied to all compatibility inequalities.
inline constexpr double kCompatSlack = 1e-10;

/// 1/2 sqrt((1 + B)^2 - S^2) + 1/2 sqrt((1 - B)^2 - S^2).
double max_reversibility(const Observable& x);

/// Joint measurability of two unbiased observables. Throws domain for biased
/// input.
bool compat_busch(const Observable& x, const Observable& xp);
/// Necessary condition for arbitrary observables.
bool compat_necessary(const Observable& x, const Observable& xp);
/// Necessary and sufficient condition for arbitrary observables.
bool compat_full(const Observable& x, const Observable& xp);

struct CompatReport {
  std::optional<bool> busch;  // only for unbiased pairs
  bool necessary = false;
  bool full = false;
  double busch_lhs = 0.0;      // |Sx + S'x'| + |Sx - S'x'|
  double necessary_lhs = 0.0;  // compared against 2
  double full_lhs = 0.0;
  double full_rhs = 0.0;
  double reversibility_x = 0.0;
  double reversibility_xp = 0.0;
  std::string notes;
};
CompatReport compat_report(const Observable& x, const Observable& xp);

}  // namespace bellbound

#endif  // BELLBOUND_BOUNDS_HPP
