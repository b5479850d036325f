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

#include "qubit.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

#include "error.hpp"

namespace bellbound {

namespace {

using cplx = std::complex<double>;
using linalg::CMat4;

// Pauli matrices sigma_0..sigma_3 as 2x2 arrays.
constexpr std::array<std::array<cplx, 4>, 4> kPauli = {{
    {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)},
    {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)},
    {cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)},
    {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)},
}};

CMat4 kron(int mu, int nu) {
  CMat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m(2 * i + k, 2 * j + l) = kPauli[mu][2 * i + j] * kPauli[nu][2 * k + l];
  return m;
}

const std::array<std::array<CMat4, 4>, 4>& pauli_products() {
  static const auto table = [] {
    std::array<std::array<CMat4, 4>, 4> t;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) t[mu][nu] = kron(mu, nu);
    return t;
  }();
  return table;
}

double angle_between(const Vec3& p, const Vec3& q) {
  // atan2 form stays accurate near 0 and pi.
  return std::atan2(linalg::norm(linalg::cross(p, q)), linalg::dot(p, q));
}

}  // namespace

Observable make_observable(double bias, double strength, const Vec3& direction) {
  if (!std::isfinite(bias) || !std::isfinite(strength))
    throw Error(ErrorKind::invalid_input, "observable parameters must be finite");
  if (strength < 0.0 || strength > 1.0 + kConstraintSlack)
    throw Error(ErrorKind::constraint, "strength must lie in [0, 1]");
  if (strength + std::abs(bias) > 1.0 + kConstraintSlack) {
    std::ostringstream os;
    os << "strength + |bias| = " << strength + std::abs(bias) << " exceeds 1";
    throw Error(ErrorKind::constraint, os.str());
  }
  const double n = linalg::norm(direction);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6)
    throw Error(ErrorKind::invalid_input, "observable direction must be a unit vector");
  return Observable{bias, std::min(strength, 1.0), (1.0 / n) * direction};
}

Mat4 FanoState::theta() const {
  Mat4 m;
  m(0, 0) = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    m(0, i + 1) = b[i];
    m(i + 1, 0) = a[i];
    for (std::size_t j = 0; j < 3; ++j) m(i + 1, j + 1) = t(i, j);
  }
  return m;
}

bool FanoState::is_t_state(double tol) const {
  return linalg::norm(a) < tol && linalg::norm(b) < tol;
}

linalg::CMat4 density_matrix(const FanoState& s) {
  const Mat4 th = s.theta();
  const auto& pp = pauli_products();
  CMat4 rho;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const double c = th(mu, nu);
      if (c == 0.0) continue;
      rho = rho + cplx(0.25 * c, 0.0) * pp[mu][nu];
    }
  return rho;
}

FanoState fano_components(const linalg::CMat4& rho) {
  const auto& pp = pauli_products();
  auto expect = [&](int mu, int nu) {
    return linalg::trace(rho * pp[mu][nu]).real();
  };
  const double norm = linalg::trace(rho).real();
  FanoState s;
  for (int i = 0; i < 3; ++i) {
    s.a[i] = expect(i + 1, 0) / norm;
    s.b[i] = expect(0, i + 1) / norm;
    for (int j = 0; j < 3; ++j) s.t(i, j) = expect(i + 1, j + 1) / norm;
  }
  return s;
}

std::array<double, 4> state_eigenvalues(const FanoState& s) {
  return linalg::hermitian_eigenvalues_4(density_matrix(s));
}

FanoState state_from_fano(const Vec3& a, const Vec3& b, const Mat3& t) {
  FanoState s{a, b, t};
  for (double e : s.theta().a)
    if (!std::isfinite(e))
      throw Error(ErrorKind::invalid_input, "state components must be finite");
  if (linalg::norm(a) > 1.0 + kConstraintSlack || linalg::norm(b) > 1.0 + kConstraintSlack)
    throw Error(ErrorKind::unphysical_state, "Bloch vector longer than 1");
  if (linalg::max_abs(t) > 1.0 + kConstraintSlack)
    throw Error(ErrorKind::unphysical_state, "correlation matrix entry exceeds 1");
  const auto ev = state_eigenvalues(s);
  if (ev[3] < kPhysicalityTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << ev[3];
    throw Error(ErrorKind::unphysical_state, os.str());
  }
  return s;
}

std::array<double, 3> correlation_singular_values(const FanoState& s) {
  return linalg::singular_values(s.t);
}

double Scenario::theta() const { return angle_between(x.direction, xp.direction); }
double Scenario::phi() const { return angle_between(y.direction, yp.direction); }

StrengthQuad strengths_of(const Scenario& sc) {
  return {sc.x.strength, sc.xp.strength, sc.y.strength, sc.yp.strength};
}

void check_strengths(const StrengthQuad& q) {
  for (double s : {q.sx, q.sxp, q.sy, q.syp})
    if (!(s >= 0.0 && s <= 1.0 + kConstraintSlack))
      throw Error(ErrorKind::invalid_input, "strengths must lie in [0, 1]");
}

FanoState singlet() { return werner(1.0); }

FanoState werner(double w) {
  if (!(w >= -1.0 / 3.0 - 1e-12 && w <= 1.0 + 1e-12))
    throw Error(ErrorKind::unphysical_state, "Werner parameter must lie in [-1/3, 1]");
  return state_from_fano({}, {}, (-w) * Mat3::identity());
}

FanoState bell_diagonal(double t1, double t2, double t3) {
  // Eigenvalues of 1/4 (1 + sum t_i s_i x s_i); all four must be >= 0.
  const double lo = std::min({1 - t1 - t2 - t3, 1 - t1 + t2 + t3,
                              1 + t1 - t2 + t3, 1 + t1 + t2 - t3});
  if (lo < -1e-12)
    throw Error(ErrorKind::unphysical_state,
                "Bell-diagonal correlations lie outside the tetrahedron");
  return state_from_fano({}, {}, linalg::diagonal<3>({t1, t2, t3}));
}

FanoState product(const Vec3& a, const Vec3& b) {
  return state_from_fano(a, b, linalg::outer(a, b));
}

Mat3 random_rotation(Rng& rng) {
  // Uniform unit quaternion gives a Haar-distributed rotation.
  std::normal_distribution<double> g;
  Vec4 q{g(rng), g(rng), g(rng), g(rng)};
  const double n = linalg::norm(q);
  for (auto& e : q) e /= n;
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Mat3 r;
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - z * w);
  r(0, 2) = 2 * (x * z + y * w);
  r(1, 0) = 2 * (x * y + z * w);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - x * w);
  r(2, 0) = 2 * (x * z - y * w);
  r(2, 1) = 2 * (y * z + x * w);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

Vec3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double n = linalg::norm(v);
    if (n > 1e-12) return (1.0 / n) * v;
  }
}

FanoState random_state(Rng& rng, StateKind kind) {
  switch (kind) {
    case StateKind::tstate: {
      // Uniform point of the tetrahedron via flat Dirichlet weights.
      static constexpr std::array<Vec3, 4> kVertices = {
          Vec3{-1, -1, -1}, Vec3{-1, 1, 1}, Vec3{1, -1, 1}, Vec3{1, 1, -1}};
      std::exponential_distribution<double> ex(1.0);
      std::array<double, 4> w{};
      double total = 0.0;
      for (auto& e : w) total += (e = ex(rng));
      Vec3 t{};
      for (std::size_t k = 0; k < 4; ++k) t = t + (w[k] / total) * kVertices[k];
      const Mat3 o1 = random_rotation(rng);
      const Mat3 o2 = random_rotation(rng);
      FanoState s;
      s.t = o1 * linalg::diagonal<3>(t) * linalg::transpose(o2);
      return s;
    }
    case StateKind::general: {
      std::normal_distribution<double> g;
      linalg::CMat4 m;
      for (auto& e : m.a) e = cplx(g(rng), g(rng));
      linalg::CMat4 md;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) md(i, j) = std::conj(m(j, i));
      return fano_components(m * md);
    }
    case StateKind::pure: {
      std::normal_distribution<double> g;
      std::array<cplx, 4> psi;
      for (auto& e : psi) e = cplx(g(rng), g(rng));
      linalg::CMat4 rho;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
      return fano_components(rho);
    }
  }
  throw Error(ErrorKind::invalid_input, "unknown state kind");
}

FanoState random_state(std::uint64_t seed, StateKind kind) {
  Rng rng(seed);
  return random_state(rng, kind);
}

Observable random_observable(Rng& rng, std::optional<double> fixed_strength,
                             bool unbiased) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double strength = fixed_strength ? *fixed_strength : unit(rng);
  if (!(strength >= 0.0 && strength <= 1.0))
    throw Error(ErrorKind::invalid_input, "fixed strength must lie in [0, 1]");
  const Vec3 dir = random_unit_vector(rng);
  double bias = 0.0;
  if (!unbiased) {
    const double room = 1.0 - strength;
    bias = room * (2.0 * unit(rng) - 1.0);
  }
  return Observable{bias, strength, dir};
}

Observable random_observable(std::uint64_t seed, std::optional<double> fixed_strength,
                             bool unbiased) {
  Rng rng(seed);
  return random_observable(rng, fixed_strength, unbiased);
}

}  // namespace bellbound
