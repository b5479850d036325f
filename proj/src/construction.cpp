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

#include "construction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chsh.hpp"
#include "error.hpp"

namespace bellbound {

namespace {

constexpr double kAttainSlack = 1e-6;

double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

Observable raw(double bias, double strength, const Vec3& d) {
  return make_observable(bias, strength, d);
}

void check_attained(const AchievingConfig& cfg, const char* who) {
  if (cfg.attained_chsh < cfg.target_bound - kAttainSlack) {
    std::ostringstream os;
    os.precision(12);
    os << who << ": construction reached " << cfg.attained_chsh << " but the bound is "
       << cfg.target_bound;
    throw Error(ErrorKind::construction_failure, os.str());
  }
}

}  // namespace

std::string_view recipe_name(Recipe r) {
  switch (r) {
    case Recipe::appendix_a: return "appendixA";
    case Recipe::thm3: return "thm3";
    case Recipe::cor1: return "cor1";
    case Recipe::thm4: return "thm4";
  }
  return "unknown";
}

DirectionSet reference_frames(double theta, double phi) {
  const double ct = std::cos(theta / 2), st = std::sin(theta / 2);
  const double cp = std::cos(phi / 2), sp = std::sin(phi / 2);
  return {{ct, st, 0.0}, {ct, -st, 0.0}, {cp, sp, 0.0}, {cp, -sp, 0.0}};
}

linalg::Frame3 frame_from_pair(const Vec3& d, const Vec3& dp) {
  const Vec3 sum = d + dp, diff = d - dp;
  const double ns = linalg::norm(sum), nd = linalg::norm(diff);
  constexpr double tiny = 1e-12;
  if (ns <= tiny && nd <= tiny)
    throw Error(ErrorKind::invalid_input, "frame_from_pair: zero directions");
  if (nd <= tiny) return linalg::complete_frame((1.0 / ns) * sum);
  const Vec3 x2 = (1.0 / nd) * diff;
  if (ns <= tiny) {
    // Antiparallel: pick any x1 orthogonal to x2, keep the frame right-handed.
    const linalg::Frame3 f = linalg::complete_frame(x2);
    const Vec3 x1 = f.e2;
    return {x1, x2, linalg::cross(x1, x2)};
  }
  const Vec3 x1 = (1.0 / ns) * sum;
  return {x1, x2, linalg::cross(x1, x2)};
}

Mat3 m_matrix(const FanoState& state, const linalg::Frame3& frame_a,
              const linalg::Frame3& frame_b) {
  const Mat3 fa = linalg::frame_matrix(frame_a), fb = linalg::frame_matrix(frame_b);
  return linalg::transpose(fa) * state.t * fb;
}

Mat3 w_tilde(const WBundle& wb) {
  Mat3 m{};
  m(0, 0) = wb.w(0, 0);
  m(0, 1) = wb.w(0, 1);
  m(1, 0) = wb.w(1, 0);
  m(1, 1) = wb.w(1, 1);
  return m;
}

AchievingConfig achieving_directions(const FanoState& state, const StrengthQuad& q,
                                     double theta, double phi,
                                     const linalg::Frame3& frame_a,
                                     const linalg::Frame3& frame_b) {
  check_strengths(q);
  linalg::check_frame(frame_a);
  linalg::check_frame(frame_b);
  const Mat3 fa = linalg::frame_matrix(frame_a);
  const Mat3 fb = linalg::frame_matrix(frame_b);

  // Reference directions expressed in the two frames.
  const DirectionSet ref = reference_frames(theta, phi);
  const Vec3 x = fa * ref.x, xp = fa * ref.xp, y = fb * ref.y, yp = fb * ref.yp;

  const WBundle wb = w_bundle(q, theta, phi);
  const auto pw = linalg::svd(w_tilde(wb));
  const auto pt = linalg::svd(state.t);
  // O1^T T O2 expressed in the reference frames equals Pw1 D_T Pw2^T, which
  // lines its singular frames up with those of W.
  const Mat3 o1 = pt.u * linalg::transpose(pw.u) * linalg::transpose(fa);
  const Mat3 o2 = pt.v * linalg::transpose(pw.v) * linalg::transpose(fb);

  AchievingConfig cfg;
  cfg.scenario.x = raw(0.0, q.sx, o1 * x);
  cfg.scenario.xp = raw(0.0, q.sxp, o1 * xp);
  cfg.scenario.y = raw(0.0, q.sy, o2 * y);
  cfg.scenario.yp = raw(0.0, q.syp, o2 * yp);
  cfg.target_bound = s0_bound(state, q, theta, phi).value;
  cfg.attained_chsh = chsh(cfg.scenario, state).canonical;
  cfg.recipe = Recipe::appendix_a;
  check_attained(cfg, "achieving_directions");
  return cfg;
}

Biases achieving_biases(const StrengthQuad& q, int beta) {
  check_strengths(q);
  if (beta != 1 && beta != -1)
    throw Error(ErrorKind::invalid_input, "beta must be +1 or -1");
  const double mx = 1.0 - q.sx, mxp = 1.0 - q.sxp, my = 1.0 - q.sy, myp = 1.0 - q.syp;
  const double b = beta;
  const double bp = b * sgn(mx - mxp);
  const double alpha = sgn(b * my + bp * myp);
  const double alpha_p = sgn(b * my - bp * myp);
  return {alpha * mx, alpha_p * mxp, b * my, bp * myp};
}

AchievingConfig achieving_scenario_tstate(const FanoState& state,
                                          const StrengthQuad& q, double theta,
                                          double phi) {
  const BoundReport target = st_bound(state, q, theta, phi);
  AchievingConfig cfg = achieving_directions(state, q, theta, phi);
  const Biases bs = achieving_biases(q);
  Scenario& sc = cfg.scenario;
  sc.x = raw(bs.bx, q.sx, sc.x.direction);
  sc.xp = raw(bs.bxp, q.sxp, sc.xp.direction);
  sc.y = raw(bs.by, q.sy, sc.y.direction);
  sc.yp = raw(bs.byp, q.syp, sc.yp.direction);
  cfg.target_bound = target.value;
  cfg.attained_chsh = chsh(sc, state).canonical;
  check_attained(cfg, "achieving_scenario_tstate");
  return cfg;
}

AchievingConfig thm3_achieving(const FanoState& state, double s_a, double sy,
                               double syp) {
  const BoundReport target = thm3_bound(state, s_a, sy, syp, false);
  const auto f = linalg::svd(state.t);
  const Vec3 x1 = linalg::column(f.u, 0), x2 = linalg::column(f.u, 1);
  const Mat3 tt = linalg::transpose(state.t);
  const Vec3 g1 = tt * x1, g2 = tt * x2;
  const double n1 = linalg::norm(g1), n2 = linalg::norm(g2);
  constexpr double tiny = 1e-12;
  const Vec3 y = n1 > tiny ? (1.0 / n1) * g1 : linalg::column(f.v, 0);
  Vec3 yp = n2 > tiny ? (1.0 / n2) * g2 : linalg::complete_frame(y).e2;
  if (n2 <= tiny && n1 <= tiny) yp = linalg::column(f.v, 1);

  const double half = std::atan2(syp * n2, sy * n1);
  const double c = std::cos(half), s = std::sin(half);
  AchievingConfig cfg;
  cfg.scenario.x = raw(0.0, s_a, c * x1 + s * x2);
  cfg.scenario.xp = raw(0.0, s_a, c * x1 - s * x2);
  cfg.scenario.y = raw(0.0, sy, y);
  cfg.scenario.yp = raw(0.0, syp, yp);
  cfg.target_bound = target.value;
  cfg.attained_chsh = chsh(cfg.scenario, state).canonical;
  cfg.recipe = Recipe::thm3;
  check_attained(cfg, "thm3_achieving");
  return cfg;
}

namespace {

Angles require_angles(std::optional<Angles> a, Criterion c) {
  if (!a) {
    std::ostringstream os;
    os << criterion_name(c) << " needs fixed angles";
    throw Error(ErrorKind::invalid_input, os.str());
  }
  return *a;
}

// Adds the extremal biases to an unbiased T-state configuration.
void add_biases(AchievingConfig& cfg, const FanoState& state, double target) {
  Scenario& sc = cfg.scenario;
  const StrengthQuad q = strengths_of(sc);
  const Biases bs = achieving_biases(q);
  sc.x = raw(bs.bx, q.sx, sc.x.direction);
  sc.xp = raw(bs.bxp, q.sxp, sc.xp.direction);
  sc.y = raw(bs.by, q.sy, sc.y.direction);
  sc.yp = raw(bs.byp, q.syp, sc.yp.direction);
  cfg.target_bound = target;
  cfg.attained_chsh = chsh(sc, state).canonical;
}

// Swaps the roles of Y and Y' in a construction built for the swapped
// strengths; X' is flipped so the canonical CHSH sum is unchanged.
Scenario relabel_y(const Scenario& built) {
  Scenario out;
  out.x = built.x;
  out.xp = built.xp;
  out.xp.direction = -1.0 * built.xp.direction;
  out.xp.bias = -built.xp.bias;
  out.y = built.yp;
  out.yp = built.y;
  return out;
}

bool equal_strengths(double u, double v) { return std::abs(u - v) <= 1e-12; }

}  // namespace

AchievingConfig achieve_criterion(const FanoState& state, Criterion c,
                                  const StrengthQuad& q,
                                  std::optional<Angles> angles, bool biased) {
  check_strengths(q);
  switch (c) {
    case Criterion::thm1: {
      const Angles a = require_angles(angles, c);
      return achieving_directions(state, q, a.theta, a.phi);
    }
    case Criterion::thm2: {
      const Angles a = require_angles(angles, c);
      return achieving_scenario_tstate(state, q, a.theta, a.phi);
    }
    case Criterion::cor2:
      return achieving_directions(state, q, std::numbers::pi / 2, std::numbers::pi / 2);
    case Criterion::cor1:
    case Criterion::cor4:
    case Criterion::horodecki: {
      if (c == Criterion::horodecki && (q.sx != 1.0 || q.sxp != 1.0 || q.sy != 1.0 ||
                                        q.syp != 1.0))
        throw Error(ErrorKind::domain, "horodecki is attained with unit strengths only");
      if (!equal_strengths(q.sx, q.sxp) || !equal_strengths(q.sy, q.syp))
        throw Error(ErrorKind::domain,
                    std::string(criterion_name(c)) +
                        " needs equal strengths on each side");
      const BoundReport rep = c == Criterion::cor4 ? cor4_bound(state, q.sx, q.sy)
                                                   : cor1_bound(state, q.sx, q.sy);
      const Angles a = *rep.optimal_angles;
      AchievingConfig cfg = achieving_directions(state, q, a.theta, a.phi);
      cfg.recipe = Recipe::cor1;
      if (c == Criterion::cor4) {
        add_biases(cfg, state, rep.value);
        check_attained(cfg, "cor4");
      } else {
        cfg.target_bound = rep.value;
        check_attained(cfg, criterion_name(c).data());
      }
      return cfg;
    }
    case Criterion::thm3: {
      if (!equal_strengths(q.sx, q.sxp))
        throw Error(ErrorKind::domain, "thm3 needs equal strengths on the A side");
      const bool swapped = q.sy < q.syp;
      const double hi = swapped ? q.syp : q.sy, lo = swapped ? q.sy : q.syp;
      const BoundReport rep = thm3_bound(state, q.sx, hi, lo, biased);
      AchievingConfig cfg = thm3_achieving(state, q.sx, hi, lo);
      if (biased) {
        add_biases(cfg, state, rep.value);
        check_attained(cfg, "thm3 (biased)");
      }
      if (swapped) {
        cfg.scenario = relabel_y(cfg.scenario);
        cfg.attained_chsh = chsh(cfg.scenario, state).canonical;
        check_attained(cfg, "thm3");
      }
      return cfg;
    }
    case Criterion::thm4: {
      const BoundReport rep = thm4_bound(state, q, biased);
      const Angles a = *rep.optimal_angles;
      AchievingConfig cfg = achieving_directions(state, q, a.theta, a.phi);
      cfg.recipe = Recipe::thm4;
      if (biased) add_biases(cfg, state, rep.value);
      cfg.target_bound = rep.value;
      check_attained(cfg, "thm4");
      return cfg;
    }
    case Criterion::horodecki_upper:
    case Criterion::cor3:
    case Criterion::cor6:
    case Criterion::sgen:
      break;
  }
  throw Error(ErrorKind::invalid_input,
              std::string("no achieving construction for ") +
                  std::string(criterion_name(c)));
}

}  // namespace bellbound
