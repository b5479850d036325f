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

#include "chsh.hpp"

#include <algorithm>

namespace bellbound {

double expectation(const Observable& a_side, const Observable& b_side,
                   const FanoState& state) {
  const Vec3 ty = state.t * b_side.direction;
  return a_side.bias * b_side.bias +
         a_side.bias * b_side.strength * linalg::dot(state.b, b_side.direction) +
         a_side.strength * b_side.bias * linalg::dot(a_side.direction, state.a) +
         a_side.strength * b_side.strength * linalg::dot(a_side.direction, ty);
}

double ChshVariants::max() const {
  return std::max({canonical, swap_x, swap_y, swap_both});
}

double chsh_value(const Observable& x, const Observable& xp, const Observable& y,
                  const Observable& yp, const FanoState& state) {
  return std::abs(expectation(x, y, state) + expectation(x, yp, state) +
                  expectation(xp, y, state) - expectation(xp, yp, state));
}

ChshVariants chsh(const Scenario& sc, const FanoState& state) {
  return ChshVariants{
      chsh_value(sc.x, sc.xp, sc.y, sc.yp, state),
      chsh_value(sc.xp, sc.x, sc.y, sc.yp, state),
      chsh_value(sc.x, sc.xp, sc.yp, sc.y, state),
      chsh_value(sc.xp, sc.x, sc.yp, sc.y, state),
  };
}

Mat4 chsh_n_matrix(const Scenario& sc) {
  const Vec4 ux = sc.x.u(), uxp = sc.xp.u(), uy = sc.y.u(), uyp = sc.yp.u();
  return linalg::outer(ux, uy) + linalg::outer(ux, uyp) + linalg::outer(uxp, uy) -
         linalg::outer(uxp, uyp);
}

double chsh_matrix_form(const Scenario& sc, const FanoState& state) {
  const Mat4 n = chsh_n_matrix(sc);
  const Mat4 th = state.theta();
  double tr = 0.0;
  for (std::size_t i = 0; i < 16; ++i) tr += th.a[i] * n.a[i];
  return std::abs(tr);
}

double bias_term(const Scenario& sc) {
  return sc.x.bias * sc.y.bias + sc.x.bias * sc.yp.bias + sc.xp.bias * sc.y.bias -
         sc.xp.bias * sc.yp.bias;
}

}  // namespace bellbound
