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

#ifndef BELLBOUND_CHSH_HPP
#define BELLBOUND_CHSH_HPP

#include "qubit.hpp"

namespace bellbound {

/// <XY> = (B_X, S_X x^T) [[1, b^T], [a, T]] (B_Y, S_Y y)^T.
double expectation(const Observable& a_side, const Observable& b_side,
                   const FanoState& state);

/// |<XY> + <XY'> + <X'Y> - <X'Y'>| for the four relabelings of the
/// observables on each side.
struct ChshVariants {
  double canonical = 0.0;
  double swap_x = 0.0;     // X <-> X'
  double swap_y = 0.0;     // Y <-> Y'
  double swap_both = 0.0;  // both

  double max() const;
};

double chsh_value(const Observable& x, const Observable& xp, const Observable& y,
                  const Observable& yp, const FanoState& state);

ChshVariants chsh(const Scenario& sc, const FanoState& state);

/// The matrix N = u_X u_Y^T + u_X u_Y'^T + u_X' u_Y^T - u_X' u_Y'^T.
Mat4 chsh_n_matrix(const Scenario& sc);

/// |tr(Theta N^T)|; algebraically identical to chsh(...).canonical.
double chsh_matrix_form(const Scenario& sc, const FanoState& state);

/// B_X B_Y + B_X B_Y' + B_X' B_Y - B_X' B_Y'.
double bias_term(const Scenario& sc);

}  // namespace bellbound

#endif  // BELLBOUND_CHSH_HPP
