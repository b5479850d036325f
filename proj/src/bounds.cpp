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

#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "chsh.hpp"
#include "error.hpp"

namespace bellbound {

namespace {

using std::numbers::pi;

struct NamedCriterion {
  Criterion id;
  std::string_view name;
};

constexpr std::array<NamedCriterion, 12> kCriteria = {{
    {Criterion::horodecki, "horodecki"},
    {Criterion::horodecki_upper, "horodecki-upper"},
    {Criterion::thm1, "thm1"},
    {Criterion::thm2, "thm2"},
    {Criterion::cor1, "cor1"},
    {Criterion::cor2, "cor2"},
    {Criterion::cor3, "cor3"},
    {Criterion::cor4, "cor4"},
    {Criterion::cor6, "cor6"},
    {Criterion::thm3, "thm3"},
    {Criterion::thm4, "thm4"},
    {Criterion::sgen, "sgen"},
}};

void check_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= pi) || !(phi >= 0.0 && phi <= pi))
    throw Error(ErrorKind::invalid_input, "relative angles must lie in [0, pi]");
}

void require_t_state(const FanoState& s, const char* who) {
  if (!s.is_t_state())
    throw Error(ErrorKind::domain,
                std::string(who) + " requires a T-state (a = b = 0): not a T-state");
}

void check_unit_interval(double s, const char* what) {
  if (!(s >= 0.0 && s <= 1.0 + kConstraintSlack))
    throw Error(ErrorKind::invalid_input, std::string(what) + " must lie in [0, 1]");
}

double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

// Value of s1(T) s1(W) + s2(T) s2(W) given I+- and the two top singular values.
double combine(const std::array<double, 3>& st, double i_plus, double i_minus) {
  const double s1w = 0.5 * (i_plus + i_minus);
  const double s2w = 0.5 * (i_plus - i_minus);
  return st[0] * s1w + st[1] * s2w;
}

}  // namespace

std::string_view criterion_name(Criterion c) {
  for (const auto& e : kCriteria)
    if (e.id == c) return e.name;
  return "unknown";
}

Criterion parse_criterion(std::string_view name) {
  for (const auto& e : kCriteria)
    if (e.name == name) return e.id;
  throw Error(ErrorKind::invalid_input, "unknown criterion '" + std::string(name) + "'");
}

BoundReport make_report(Criterion c, double value, std::optional<Angles> angles,
                        std::string notes) {
  return BoundReport{value, c, value > 2.0, angles, std::move(notes)};
}

std::array<double, 4> abcd_coefficients(const StrengthQuad& q) {
  const double xy = q.sx * q.sy, xyp = q.sx * q.syp, xpy = q.sxp * q.sy,
               xpyp = q.sxp * q.syp;
  return {xy + xyp + xpy - xpyp, xy - xyp + xpy + xpyp, xy + xyp - xpy + xpyp,
          -xy + xyp + xpy + xpyp};
}

std::array<double, 2> i_squared_closed_form(const StrengthQuad& q, double theta,
                                            double phi) {
  const double sx2 = q.sx * q.sx, sxp2 = q.sxp * q.sxp, sy2 = q.sy * q.sy,
               syp2 = q.syp * q.syp;
  const double base = (sx2 + sxp2) * (sy2 + syp2) +
                      2.0 * q.sx * q.sxp * (sy2 - syp2) * std::cos(theta) +
                      2.0 * q.sy * q.syp * (sx2 - sxp2) * std::cos(phi);
  const double cross =
      4.0 * q.sx * q.sxp * q.sy * q.syp * std::sin(theta) * std::sin(phi);
  return {base + cross, base - cross};
}

WBundle w_bundle(const StrengthQuad& q, double theta, double phi) {
  check_strengths(q);
  check_angles(theta, phi);
  WBundle out;
  const auto [ca, cb, cc, cd] = abcd_coefficients(q);
  out.coeff_a = ca;
  out.coeff_b = cb;
  out.coeff_c = cc;
  out.coeff_d = cd;
  const double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
  const double cp = std::cos(0.5 * phi), sp = std::sin(0.5 * phi);
  out.w(0, 0) = ca * ct * cp;
  out.w(0, 1) = cb * ct * sp;
  out.w(1, 0) = cc * st * cp;
  out.w(1, 1) = -cd * st * sp;

  // tr(W^T W) +- 2|det W| written as sums of squares, free of cancellation.
  const double p = out.w(0, 0), r = out.w(0, 1), s = out.w(1, 0), t = out.w(1, 1);
  const double plus_a = std::hypot(p + t, r - s);
  const double plus_b = std::hypot(p - t, r + s);
  const bool det_nonneg = p * t - r * s >= 0.0;
  out.i_plus = det_nonneg ? plus_a : plus_b;
  out.i_minus = det_nonneg ? plus_b : plus_a;
  const double s1w = 0.5 * (out.i_plus + out.i_minus);
  const double s2w = 0.5 * (out.i_plus - out.i_minus);
  out.w_eig_plus = s1w * s1w;
  out.w_eig_minus = s2w * s2w;

  const auto sv = linalg::singular_values(out.w);
  const auto closed = i_squared_closed_form(q, theta, phi);
  const double dev = std::max({std::abs(sv[0] - s1w), std::abs(sv[1] - s2w),
                               std::abs(closed[0] - out.i_plus * out.i_plus),
                               std::abs(closed[1] - out.i_minus * out.i_minus)});
  if (dev > 1e-8) {
    std::ostringstream os;
    os << "W bundle routes disagree by " << dev;
    throw Error(ErrorKind::internal_consistency, os.str());
  }
  return out;
}

double horodecki(const Mat3& t) {
  const auto s = linalg::singular_values(t);
  return 2.0 * std::hypot(s[0], s[1]);
}

BoundReport horodecki_report(const FanoState& state) {
  return make_report(Criterion::horodecki, horodecki(state.t),
                     Angles{pi / 2, pi / 2});
}

BoundReport horodecki_upper(const FanoState& state) {
  return make_report(Criterion::horodecki_upper, std::max(2.0, horodecki(state.t)));
}

BoundReport s0_bound(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi) {
  const WBundle wb = w_bundle(q, theta, phi);
  const auto st = correlation_singular_values(state);
  return make_report(Criterion::thm1, combine(st, wb.i_plus, wb.i_minus),
                     Angles{theta, phi});
}

BoundReport s0_tilde(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi) {
  // Relabeling Y <-> Y' flips the sign of the cos(theta) term of I+-^2 and
  // X <-> X' that of the cos(phi) term; pick the relabeling making both
  // non-negative, which maximizes I+ and I- simultaneously.
  StrengthQuad r = q;
  if ((q.sy * q.sy - q.syp * q.syp) * std::cos(theta) < 0.0) std::swap(r.sy, r.syp);
  if ((q.sx * q.sx - q.sxp * q.sxp) * std::cos(phi) < 0.0) std::swap(r.sx, r.sxp);
  BoundReport rep = s0_bound(state, r, theta, phi);
  rep.criterion = Criterion::cor3;
  return rep;
}

double j_max(const StrengthQuad& q) {
  check_strengths(q);
  return (2.0 - q.sx - q.sxp) * (2.0 - q.sy - q.syp) -
         2.0 * (1.0 - std::max(q.sx, q.sxp)) * (1.0 - std::max(q.sy, q.syp));
}

BoundReport st_bound(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi) {
  require_t_state(state, "thm2");
  const double v = s0_bound(state, q, theta, phi).value + j_max(q);
  return make_report(Criterion::thm2, v, Angles{theta, phi});
}

BoundReport st_tilde(const FanoState& state, const StrengthQuad& q, double theta,
                     double phi) {
  require_t_state(state, "cor6");
  const double v = s0_tilde(state, q, theta, phi).value + j_max(q);
  return make_report(Criterion::cor6, v, Angles{theta, phi});
}

BoundReport cor1_bound(const FanoState& state, double s_a, double s_b) {
  check_unit_interval(s_a, "s_a");
  check_unit_interval(s_b, "s_b");
  const auto st = correlation_singular_values(state);
  const double radius = std::hypot(st[0], st[1]);
  std::string notes;
  double angle = pi / 2;
  if (radius > 0.0) {
    const double sin_angle = std::sqrt(2.0 * st[0] * st[1]) / radius;
    angle = std::asin(std::min(1.0, sin_angle));
  } else {
    notes = "T vanishes; every pair of angles is optimal";
  }
  return make_report(Criterion::cor1, 2.0 * s_a * s_b * radius, Angles{angle, angle},
                     std::move(notes));
}

BoundReport cor2_sufficient(const FanoState& state, const StrengthQuad& q) {
  check_strengths(q);
  const auto st = correlation_singular_values(state);
  const double ip = std::hypot(q.sx * q.sy + q.sxp * q.syp, q.sx * q.syp + q.sxp * q.sy);
  const double im = std::hypot(q.sx * q.sy - q.sxp * q.syp, q.sx * q.syp - q.sxp * q.sy);
  const double v = 0.5 * (ip + im) * st[0] + 0.5 * (ip - im) * st[1];
  return make_report(Criterion::cor2, v, Angles{pi / 2, pi / 2});
}

BoundReport cor4_bound(const FanoState& state, double s_a, double s_b) {
  require_t_state(state, "cor4");
  BoundReport rep = cor1_bound(state, s_a, s_b);
  rep.criterion = Criterion::cor4;
  rep.value += 2.0 * (1.0 - s_a) * (1.0 - s_b);
  rep.violated = rep.value > 2.0;
  return rep;
}

StrengthThresholds strength_thresholds(double radius_r) {
  if (!(radius_r > 0.0) || !std::isfinite(radius_r))
    throw Error(ErrorKind::invalid_input, "radius must be positive");
  return {1.0 / std::sqrt(radius_r), 2.0 / (1.0 + radius_r)};
}

BoundReport thm3_bound(const FanoState& state, double s_a, double sy, double syp,
                       bool biased_tstate) {
  check_unit_interval(s_a, "s_a");
  check_unit_interval(sy, "sy");
  check_unit_interval(syp, "syp");
  if (sy < syp)
    throw Error(ErrorKind::invalid_input,
                "thm3 expects sy >= syp; swap Y and Y' before calling");
  if (biased_tstate) require_t_state(state, "thm3 (biased)");
  const auto st = correlation_singular_values(state);
  const double lead = sy * st[0], trail = syp * st[1];
  double v = 2.0 * s_a * std::hypot(lead, trail);
  if (biased_tstate) v += 2.0 * (1.0 - s_a) * (1.0 - syp);
  const double theta = 2.0 * std::atan2(trail, lead);
  return make_report(Criterion::thm3, v, Angles{theta, pi / 2});
}

Thm4Branches thm4_branches(double s1, const StrengthQuad& q) {
  Thm4Branches br;
  const double sx2 = q.sx * q.sx, sxp2 = q.sxp * q.sxp, sy2 = q.sy * q.sy,
               syp2 = q.syp * q.syp;
  br.a = q.sx * q.sxp * (sy2 - syp2);
  br.b = q.sy * q.syp * (sx2 - sxp2);
  br.c = 2.0 * q.sx * q.sxp * q.sy * q.syp;
  // With c == 0 one strength vanishes, ab == 0 and the interior stationary
  // point does not exist.
  br.branch_one = br.c > 0.0 && std::abs(br.a * br.b) <= br.c * br.c;
  br.branch_one_value = s1 * std::sqrt(2.0 * (sx2 + sxp2) * (sy2 + syp2));
  const auto abcd = abcd_coefficients(q);
  double m = 0.0;
  for (double e : abcd) m = std::max(m, std::abs(e));
  br.branch_two_value = s1 * m;
  return br;
}

BoundReport thm4_bound(const FanoState& state, const StrengthQuad& q,
                       bool biased_tstate) {
  check_strengths(q);
  const auto st = correlation_singular_values(state);
  if (std::abs(st[0] - st[1]) > 1e-8) {
    std::ostringstream os;
    os << "thm4 requires s1(T) == s2(T); got " << st[0] << " and " << st[1];
    throw Error(ErrorKind::domain, os.str());
  }
  if (biased_tstate) require_t_state(state, "thm4 (biased)");
  const Thm4Branches br = thm4_branches(st[0], q);
  const double sx2 = q.sx * q.sx, sxp2 = q.sxp * q.sxp, sy2 = q.sy * q.sy,
               syp2 = q.syp * q.syp;
  double value = 0.0;
  Angles ang;
  std::string notes;
  if (br.branch_one) {
    value = br.branch_one_value;
    const double cos_t = (sx2 + sxp2) * (sy2 - syp2) / (2.0 * q.sx * q.sxp * (sy2 + syp2));
    const double cos_p = (sx2 - sxp2) * (sy2 + syp2) / (2.0 * q.sy * q.syp * (sx2 + sxp2));
    ang = {std::acos(std::clamp(cos_t, -1.0, 1.0)), std::acos(std::clamp(cos_p, -1.0, 1.0))};
    notes = "interior stationary point";
  } else {
    value = br.branch_two_value;
    ang = {sgn(q.sy - q.syp) > 0 ? 0.0 : pi, sgn(q.sx - q.sxp) > 0 ? 0.0 : pi};
    notes = "boundary maximum";
  }
  if (biased_tstate) value += j_max(q);
  return make_report(Criterion::thm4, value, ang, std::move(notes));
}

BoundReport sgen_bound(const Scenario& sc, const FanoState& state) {
  const auto s_theta = linalg::singular_values(state.theta());
  const auto s_n = linalg::singular_values(chsh_n_matrix(sc));
  double v = 0.0;
  for (std::size_t j = 0; j < 4; ++j) v += s_theta[j] * s_n[j];
  return make_report(Criterion::sgen, v, Angles{sc.theta(), sc.phi()});
}

// --- compatibility ---------------------------------------------------------

double max_reversibility(const Observable& x) {
  const double s2 = x.strength * x.strength;
  const double up = (1.0 + x.bias) * (1.0 + x.bias) - s2;
  const double dn = (1.0 - x.bias) * (1.0 - x.bias) - s2;
  if (up < -1e-12 || dn < -1e-12)
    throw Error(ErrorKind::constraint, "observable violates strength + |bias| <= 1");
  return 0.5 * std::sqrt(std::max(0.0, up)) + 0.5 * std::sqrt(std::max(0.0, dn));
}

namespace {

struct PairGeometry {
  double sum_len = 0.0;   // |S x + S' x'|
  double diff_len = 0.0;  // |S x - S' x'|
  double cos_theta = 1.0;
  double sin_theta = 0.0;
};

PairGeometry geometry(const Observable& x, const Observable& xp) {
  const Vec3 p = x.strength * x.direction;
  const Vec3 q = xp.strength * xp.direction;
  PairGeometry g;
  g.sum_len = linalg::norm(p + q);
  g.diff_len = linalg::norm(p - q);
  g.cos_theta = std::clamp(linalg::dot(x.direction, xp.direction), -1.0, 1.0);
  g.sin_theta = linalg::norm(linalg::cross(x.direction, xp.direction));
  return g;
}

bool is_unbiased(const Observable& x) { return std::abs(x.bias) < 1e-12; }

// B^2 / R^2, with the R == 0 limit taken as 0 for B == 0 and +inf otherwise.
double bias_ratio(double bias, double r) {
  if (r > 0.0) return bias * bias / (r * r);
  return std::abs(bias) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

bool compat_busch(const Observable& x, const Observable& xp) {
  if (!is_unbiased(x) || !is_unbiased(xp))
    throw Error(ErrorKind::domain,
                "Busch condition applies to unbiased observables only; use compat_full");
  const PairGeometry g = geometry(x, xp);
  const double lhs = g.sum_len + g.diff_len;
  const bool sum_form = lhs <= 2.0 + kCompatSlack;
  // S S' sin(theta) <= sqrt(1 - S^2) sqrt(1 - S'^2), division free.
  const double sine_lhs = x.strength * xp.strength * g.sin_theta;
  const double sine_rhs = std::sqrt(std::max(0.0, 1.0 - x.strength * x.strength)) *
                          std::sqrt(std::max(0.0, 1.0 - xp.strength * xp.strength));
  const bool sine_form = sine_lhs <= sine_rhs + kCompatSlack;
  if (sum_form != sine_form && std::abs(lhs - 2.0) > 1e-8 &&
      std::abs(sine_lhs - sine_rhs) > 1e-8)
    throw Error(ErrorKind::internal_consistency,
                "Busch condition: sum and sine forms disagree away from the boundary");
  return sum_form;
}

bool compat_necessary(const Observable& x, const Observable& xp) {
  const PairGeometry g = geometry(x, xp);
  const double lhs = std::max(g.sum_len, std::abs(x.bias + xp.bias)) +
                     std::max(g.diff_len, std::abs(x.bias - xp.bias));
  return lhs <= 2.0 + kCompatSlack;
}

bool compat_full(const Observable& x, const Observable& xp) {
  return compat_report(x, xp).full;
}

CompatReport compat_report(const Observable& x, const Observable& xp) {
  CompatReport rep;
  const PairGeometry g = geometry(x, xp);
  rep.busch_lhs = g.sum_len + g.diff_len;
  if (is_unbiased(x) && is_unbiased(xp)) rep.busch = compat_busch(x, xp);
  rep.necessary_lhs = std::max(g.sum_len, std::abs(x.bias + xp.bias)) +
                      std::max(g.diff_len, std::abs(x.bias - xp.bias));
  rep.necessary = rep.necessary_lhs <= 2.0 + kCompatSlack;

  const double r = max_reversibility(x), rp = max_reversibility(xp);
  rep.reversibility_x = r;
  rep.reversibility_xp = rp;
  const double first = 1.0 - r * r - rp * rp;
  const double second = 1.0 - bias_ratio(x.bias, r) - bias_ratio(xp.bias, rp);
  if (std::isinf(second)) {
    rep.notes = "zero reversibility with nonzero bias; verdict from the sign of 1 - R^2 - R'^2";
    rep.full_lhs = first > 0.0   ? -std::numeric_limits<double>::infinity()
                   : first < 0.0 ? std::numeric_limits<double>::infinity()
                                 : 0.0;
  } else {
    rep.full_lhs = first * second;
  }
  const double rhs_base =
      x.strength * xp.strength * g.cos_theta - std::abs(x.bias * xp.bias);
  rep.full_rhs = rhs_base * rhs_base;
  rep.full = rep.full_lhs <= rep.full_rhs + kCompatSlack;
  return rep;
}

}  // namespace bellbound
