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

// Explicit measurement configurations that attain the closed-form bounds.
//
// The unbiased construction starts from reference directions with the
// requested relative angles, then rotates the A side by O1 and the B side by
// O2 so that the matrix M_jk = x_j^T T y_k lines up with the singular frames of
// the 3x3 embedding of W. The bias construction picks extremal biases with
// signs that make the bias term of the CHSH sum equal to j_max.

#ifndef BELLBOUND_CONSTRUCTION_HPP
#define BELLBOUND_CONSTRUCTION_HPP

#include <optional>
#include <string_view>

#include "bounds.hpp"

namespace bellbound {

enum class Recipe { appendix_a, thm3, cor1, thm4 };

std::string_view recipe_name(Recipe r);

struct AchievingConfig {
  Scenario scenario;
  double target_bound = 0.0;
  double attained_chsh = 0.0;
  Recipe recipe = Recipe::appendix_a;
};

struct DirectionSet {
  Vec3 x, xp, y, yp;
};

/// x = cos(theta/2) e1 + sin(theta/2) e2, x' = cos(theta/2) e1 - sin(theta/2) e2
/// and likewise for y, y' with phi.
DirectionSet reference_frames(double theta, double phi);

/// Frame x1 = (d + d')/|d + d'|, x2 = (d - d')/|d - d'|, x3 = x1 x x2. For
/// parallel or antiparallel pairs the undefined axis is completed with
/// complete_frame.
linalg::Frame3 frame_from_pair(const Vec3& d, const Vec3& dp);

/// M_jk = a.e_j^T T b.e_k.
Mat3 m_matrix(const FanoState& state, const linalg::Frame3& frame_a,
              const linalg::Frame3& frame_b);

/// The 3x3 matrix holding W in its upper-left block.
Mat3 w_tilde(const WBundle& wb);

/// Unbiased directions attaining s0_bound. Reference directions are built in
/// the given frames. Throws construction_failure if the attained value falls
/// short of the bound by more than 1e-6.
AchievingConfig achieving_directions(const FanoState& state, const StrengthQuad& q,
                                     double theta, double phi,
                                     const linalg::Frame3& frame_a = {},
                                     const linalg::Frame3& frame_b = {});

struct Biases {
  double bx = 0.0, bxp = 0.0, by = 0.0, byp = 0.0;
};

/// Extremal biases |B| = 1 - S whose bias term equals j_max(q). `beta` is the
/// free sign (+1 or -1) of the Y bias.
Biases achieving_biases(const StrengthQuad& q, int beta = 1);

/// achieving_directions plus achieving_biases; attains st_bound on T-states.
AchievingConfig achieving_scenario_tstate(const FanoState& state,
                                          const StrengthQuad& q, double theta,
                                          double phi);

/// Equal A-side strengths, sy >= syp: directions from the singular frames of T
/// attaining the unbiased thm3_bound.
AchievingConfig thm3_achieving(const FanoState& state, double s_a, double sy,
                               double syp);

/// Dispatches to the recipe for a criterion. `angles` is required by thm1,
/// thm2, cor3 and cor6; `biased` selects the T-state variants of thm3 and thm4.
AchievingConfig achieve_criterion(const FanoState& state, Criterion c,
                                  const StrengthQuad& q,
                                  std::optional<Angles> angles, bool biased);

}  // namespace bellbound

#endif  // BELLBOUND_CONSTRUCTION_HPP
