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

#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "chsh.hpp"
#include "construction.hpp"
#include "error.hpp"

namespace bellbound {

using Json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

[[noreturn]] void parse_fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::parse, key + ": " + what);
}

double number(const Json& j, const std::string& key) {
  if (!j.is_number()) parse_fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(key, "must be finite");
  return v;
}

template <std::size_t N>
std::array<double, N> numbers(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != N)
    parse_fail(key, "expected an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = number(j[i], key + "[" + std::to_string(i) + "]");
  return out;
}

const Json& member(const Json& obj, const std::string& name, const std::string& prefix) {
  const auto it = obj.find(name);
  if (it == obj.end()) parse_fail(prefix + name, "missing");
  return *it;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix, const std::string& hint = {}) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k))
      parse_fail(prefix + k, "unknown key" + (hint.empty() ? std::string() : "; " + hint));
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
  }
}

FanoState parse_state(const Json& s) {
  if (!s.is_object()) parse_fail("state", "expected an object");
  const Json& kind_j = member(s, "kind", "state.");
  if (!kind_j.is_string()) parse_fail("state.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "singlet") {
    reject_unknown(s, {"kind"}, "state.");
    return singlet();
  }
  if (kind == "werner") {
    reject_unknown(s, {"kind", "w"}, "state.");
    return werner(number(member(s, "w", "state."), "state.w"));
  }
  if (kind == "bell_diagonal") {
    reject_unknown(s, {"kind", "t"}, "state.");
    const auto t = numbers<3>(member(s, "t", "state."), "state.t");
    return bell_diagonal(t[0], t[1], t[2]);
  }
  if (kind == "fano") {
    reject_unknown(s, {"kind", "a", "b", "t"}, "state.");
    const Vec3 a = s.contains("a") ? numbers<3>(s["a"], "state.a") : Vec3{};
    const Vec3 b = s.contains("b") ? numbers<3>(s["b"], "state.b") : Vec3{};
    const Json& tj = member(s, "t", "state.");
    if (!tj.is_array() || tj.size() != 3) parse_fail("state.t", "expected a 3x3 array");
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto row = numbers<3>(tj[i], "state.t[" + std::to_string(i) + "]");
      for (std::size_t k = 0; k < 3; ++k) t(i, k) = row[k];
    }
    return state_from_fano(a, b, t);
  }
  if (kind == "random") {
    reject_unknown(s, {"kind", "type", "seed"}, "state.");
    const Json& ty = member(s, "type", "state.");
    if (!ty.is_string()) parse_fail("state.type", "expected a string");
    const std::string type = ty.get<std::string>();
    StateKind sk;
    if (type == "tstate") {
      sk = StateKind::tstate;
    } else if (type == "general") {
      sk = StateKind::general;
    } else if (type == "pure") {
      sk = StateKind::pure;
    } else {
      parse_fail("state.type", "expected tstate, general or pure");
    }
    const Json& sj = member(s, "seed", "state.");
    if (!sj.is_number_unsigned()) parse_fail("state.seed", "expected a non-negative integer");
    return random_state(sj.get<std::uint64_t>(), sk);
  }
  parse_fail("state.kind", "unknown kind '" + kind +
                               "' (singlet, werner, bell_diagonal, fano, random)");
}

Observable parse_observable(const Json& o, const std::string& key) {
  if (!o.is_object()) parse_fail(key, "expected an object");
  reject_unknown(o, {"bias", "strength", "direction"}, key + ".");
  const double bias = o.contains("bias") ? number(o["bias"], key + ".bias") : 0.0;
  const double strength = number(member(o, "strength", key + "."), key + ".strength");
  const Vec3 dir = numbers<3>(member(o, "direction", key + "."), key + ".direction");
  try {
    return make_observable(bias, strength, dir);
  } catch (const Error& e) {
    throw Error(e.kind(), key + ": " + e.what());
  }
}

Angles parse_angles(const Json& a) {
  if (!a.is_object()) parse_fail("angles", "expected an object with theta and phi");
  reject_unknown(a, {"theta", "phi"}, "angles.", "angles are radians under theta and phi");
  const double theta = number(member(a, "theta", "angles."), "angles.theta");
  const double phi = number(member(a, "phi", "angles."), "angles.phi");
  if (theta < 0.0 || theta > pi) parse_fail("angles.theta", "must lie in [0, pi] radians");
  if (phi < 0.0 || phi > pi) parse_fail("angles.phi", "must lie in [0, pi] radians");
  return {theta, phi};
}

Json rounded(double v) { return Json(round12(v)); }

Json vec_json(const Vec3& v) { return Json::array({rounded(v[0]), rounded(v[1]), rounded(v[2])}); }

Json observable_json(const Observable& o) {
  Json j;
  j["bias"] = rounded(o.bias);
  j["strength"] = rounded(o.strength);
  j["direction"] = vec_json(o.direction);
  return j;
}

Json angles_json(const Angles& a) {
  Json j;
  j["theta"] = rounded(a.theta);
  j["phi"] = rounded(a.phi);
  return j;
}

bool same(double u, double v) { return std::abs(u - v) <= 1e-12; }

BoundReport thm3_any_order(const FanoState& s, const StrengthQuad& q, bool biased) {
  BoundReport r = thm3_bound(s, q.sx, std::max(q.sy, q.syp), std::min(q.sy, q.syp), biased);
  // With Y and Y' exchanged the optimum uses -X' in place of X'.
  if (q.sy < q.syp) r.optimal_angles->theta = pi - r.optimal_angles->theta;
  return r;
}

// Relative angles at which the unbiased bound is maximized, when a closed
// form is known for these strengths.
std::optional<std::pair<Angles, std::string>> optimal_angles(const FanoState& state,
                                                             const StrengthQuad& q) {
  if (same(q.sx, q.sxp) && same(q.sy, q.syp))
    return std::pair{*cor1_bound(state, q.sx, q.sy).optimal_angles, std::string("cor1")};
  const auto st = correlation_singular_values(state);
  if (std::abs(st[0] - st[1]) <= 1e-8)
    return std::pair{*thm4_bound(state, q, false).optimal_angles, std::string("thm4")};
  if (same(q.sx, q.sxp))
    return std::pair{*thm3_any_order(state, q, false).optimal_angles, std::string("thm3")};
  return std::nullopt;
}

struct NotApplicable {
  std::string reason;
};

void need(bool cond, const std::string& reason) {
  if (!cond) throw NotApplicable{reason};
}

Json report_json(const BoundReport& r, const std::string& variant) {
  Json j;
  j["criterion"] = std::string(criterion_name(r.criterion));
  if (!variant.empty()) j["variant"] = variant;
  j["value"] = rounded(r.value);
  j["violated"] = r.violated;
  if (r.optimal_angles) j["optimal_angles"] = angles_json(*r.optimal_angles);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json state_summary(const ScenarioFile& f) {
  Json j = Json::parse(f.state_json);
  const auto st = correlation_singular_values(f.state);
  Json s;
  s["t_state"] = f.state.is_t_state();
  s["singular_values"] = Json::array({rounded(st[0]), rounded(st[1]), rounded(st[2])});
  j["summary"] = s;
  return j;
}

Scenario reference_scenario(const StrengthQuad& q, const Angles& a,
                            const std::array<double, 4>& bs) {
  const DirectionSet d = reference_frames(a.theta, a.phi);
  return {make_observable(bs[0], q.sx, d.x), make_observable(bs[1], q.sxp, d.xp),
          make_observable(bs[2], q.sy, d.y), make_observable(bs[3], q.syp, d.yp)};
}


}  // namespace

BoundReport evaluate_criterion(const FanoState& s, Criterion c, const StrengthQuad& q,
                               std::optional<Angles> angles, bool biased) {
  check_strengths(q);
  auto need_angles = [&]() {
    if (!angles)
      throw Error(ErrorKind::invalid_input,
                  std::string(criterion_name(c)) + " needs fixed angles");
    return *angles;
  };
  auto need_equal_sides = [&]() {
    if (!same(q.sx, q.sxp) || !same(q.sy, q.syp))
      throw Error(ErrorKind::domain,
                  std::string(criterion_name(c)) + " needs equal strengths on each side");
  };
  switch (c) {
    case Criterion::horodecki: return horodecki_report(s);
    case Criterion::horodecki_upper: return horodecki_upper(s);
    case Criterion::thm1: {
      const Angles a = need_angles();
      return s0_bound(s, q, a.theta, a.phi);
    }
    case Criterion::thm2: {
      const Angles a = need_angles();
      return st_bound(s, q, a.theta, a.phi);
    }
    case Criterion::cor1: need_equal_sides(); return cor1_bound(s, q.sx, q.sy);
    case Criterion::cor2: return cor2_sufficient(s, q);
    case Criterion::cor3: {
      const Angles a = need_angles();
      return s0_tilde(s, q, a.theta, a.phi);
    }
    case Criterion::cor4: need_equal_sides(); return cor4_bound(s, q.sx, q.sy);
    case Criterion::cor6: {
      const Angles a = need_angles();
      return st_tilde(s, q, a.theta, a.phi);
    }
    case Criterion::thm3:
      if (!same(q.sx, q.sxp))
        throw Error(ErrorKind::domain, "thm3 needs equal strengths on the A side");
      return thm3_any_order(s, q, biased);
    case Criterion::thm4: return thm4_bound(s, q, biased);
    case Criterion::sgen: break;
  }
  throw Error(ErrorKind::invalid_input, "sgen needs explicit observables");
}

bool ScenarioFile::biased() const {
  if (!biases) return false;
  for (double b : *biases)
    if (b != 0.0) return true;
  return false;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double out = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), out);
  return out;
}

ScenarioFile parse_scenario(const std::string& json_text) {
  const Json doc = parse_json(json_text);
  if (!doc.is_object()) parse_fail("<root>", "expected a JSON object");
  // achieve output carries extra report keys; they are accepted and ignored.
  reject_unknown(doc,
                 {"state", "strengths", "angles", "biases", "seed", "observables",
                  "criterion", "recipe", "target_bound", "attained_chsh"},
                 "");
  ScenarioFile f;
  const Json& sj = member(doc, "state", "");
  f.state = parse_state(sj);
  Json echo = sj;
  echo.erase("summary");
  f.state_json = echo.dump();

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) parse_fail("seed", "expected a non-negative integer");
    f.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("observables")) {
    const Json& o = doc["observables"];
    if (!o.is_object()) parse_fail("observables", "expected an object with x, xp, y, yp");
    reject_unknown(o, {"x", "xp", "y", "yp"}, "observables.");
    Scenario sc{parse_observable(member(o, "x", "observables."), "observables.x"),
                parse_observable(member(o, "xp", "observables."), "observables.xp"),
                parse_observable(member(o, "y", "observables."), "observables.y"),
                parse_observable(member(o, "yp", "observables."), "observables.yp")};
    f.observables = sc;
    f.strengths = strengths_of(sc);
    f.angles = Angles{sc.theta(), sc.phi()};
    f.biases = std::array<double, 4>{sc.x.bias, sc.xp.bias, sc.y.bias, sc.yp.bias};
    return f;
  }

  const auto q = numbers<4>(member(doc, "strengths", ""), "strengths");
  const char* names[4] = {"strengths[0]", "strengths[1]", "strengths[2]", "strengths[3]"};
  for (int i = 0; i < 4; ++i)
    if (q[i] < 0.0 || q[i] > 1.0) parse_fail(names[i], "must lie in [0, 1]");
  f.strengths = {q[0], q[1], q[2], q[3]};
  if (doc.contains("angles")) f.angles = parse_angles(doc["angles"]);
  if (doc.contains("biases")) {
    const auto b = numbers<4>(doc["biases"], "biases");
    for (int i = 0; i < 4; ++i)
      if (std::abs(b[i]) + q[i] > 1.0 + kConstraintSlack)
        throw Error(ErrorKind::constraint,
                    "biases[" + std::to_string(i) + "]: strength + |bias| exceeds 1");
    f.biases = b;
  }
  return f;
}

std::string cmd_bound(const std::string& scenario_json,
                      const std::optional<std::string>& only) {
  const ScenarioFile f = parse_scenario(scenario_json);
  if (only) parse_criterion(*only);
  const FanoState& s = f.state;
  const StrengthQuad& q = f.strengths;
  const bool t_state = s.is_t_state();
  const bool unbiased = !f.biased();
  const auto st = correlation_singular_values(s);
  const bool equal_sv = std::abs(st[0] - st[1]) <= 1e-8;
  const bool equal_a = same(q.sx, q.sxp);
  const bool equal_sides = equal_a && same(q.sy, q.syp);

  std::optional<std::pair<Angles, std::string>> eff;
  if (f.angles) {
    eff = std::pair{*f.angles, std::string()};
  } else {
    eff = optimal_angles(s, q);
  }
  auto angles = [&]() {
    need(eff.has_value(), "no angles given and no closed-form optimum for these strengths");
    return eff->first;
  };
  auto angle_note = [&](BoundReport r) {
    if (eff && !eff->second.empty()) r.notes = "evaluated at the " + eff->second + " optimal angles";
    return r;
  };
  const std::string kNotT = "not a T-state";
  const std::string kBiased = "biased observables";

  struct Item {
    std::string name, variant;
    std::function<BoundReport()> eval;
  };
  const std::vector<Item> items = {
      {"horodecki", "", [&] { return horodecki_report(s); }},
      {"horodecki-upper", "", [&] { return horodecki_upper(s); }},
      {"thm1", "", [&] {
         need(unbiased, kBiased);
         const Angles a = angles();
         return angle_note(s0_bound(s, q, a.theta, a.phi));
       }},
      {"thm2", "", [&] {
         need(t_state, kNotT);
         const Angles a = angles();
         return angle_note(st_bound(s, q, a.theta, a.phi));
       }},
      {"cor1", "", [&] {
         need(unbiased, kBiased);
         need(equal_sides, "strengths differ within a side");
         return cor1_bound(s, q.sx, q.sy);
       }},
      {"cor2", "", [&] {
         need(unbiased, kBiased);
         return cor2_sufficient(s, q);
       }},
      {"cor3", "", [&] {
         need(unbiased, kBiased);
         const Angles a = angles();
         return angle_note(s0_tilde(s, q, a.theta, a.phi));
       }},
      {"cor4", "", [&] {
         need(t_state, kNotT);
         need(equal_sides, "strengths differ within a side");
         return cor4_bound(s, q.sx, q.sy);
       }},
      {"cor6", "", [&] {
         need(t_state, kNotT);
         const Angles a = angles();
         return angle_note(st_tilde(s, q, a.theta, a.phi));
       }},
      {"thm3", "unbiased", [&] {
         need(unbiased, kBiased);
         need(equal_a, "strengths differ on the A side");
         return thm3_any_order(s, q, false);
       }},
      {"thm3", "biased", [&] {
         need(t_state, kNotT);
         need(equal_a, "strengths differ on the A side");
         return thm3_any_order(s, q, true);
       }},
      {"thm4", "unbiased", [&] {
         need(unbiased, kBiased);
         need(equal_sv, "the two largest singular values of T differ");
         return thm4_bound(s, q, false);
       }},
      {"thm4", "biased", [&] {
         need(t_state, kNotT);
         need(equal_sv, "the two largest singular values of T differ");
         return thm4_bound(s, q, true);
       }},
      {"sgen", "", [&] {
         if (f.observables) return sgen_bound(*f.observables, s);
         const Angles a = angles();
         return angle_note(sgen_bound(
             reference_scenario(q, a, f.biases.value_or(std::array<double, 4>{})), s));
       }},
  };

  Json out;
  out["state"] = state_summary(f);
  out["strengths"] = Json::array({rounded(q.sx), rounded(q.sxp), rounded(q.sy), rounded(q.syp)});
  if (f.angles) out["angles"] = angles_json(*f.angles);
  if (f.biases) {
    const auto& b = *f.biases;
    out["biases"] = Json::array({rounded(b[0]), rounded(b[1]), rounded(b[2]), rounded(b[3])});
  }
  if (f.observables) {
    const ChshVariants v = chsh(*f.observables, s);
    Json c;
    c["canonical"] = rounded(v.canonical);
    c["best_relabeling"] = rounded(v.max());
    out["chsh"] = c;
  }
  Json applicable = Json::array(), inapplicable = Json::array();
  for (const Item& it : items) {
    if (only && *only != it.name) continue;
    try {
      applicable.push_back(report_json(it.eval(), it.variant));
    } catch (const NotApplicable& na) {
      Json j;
      j["criterion"] = it.name;
      if (!it.variant.empty()) j["variant"] = it.variant;
      j["reason"] = na.reason;
      inapplicable.push_back(j);
    }
  }
  out["criteria"] = applicable;
  out["inapplicable"] = inapplicable;
  return out.dump(2) + "\n";
}

std::string cmd_achieve(const std::string& scenario_json,
                        const std::optional<std::string>& criterion, bool biased) {
  const ScenarioFile f = parse_scenario(scenario_json);
  const StrengthQuad& q = f.strengths;
  const auto st = correlation_singular_values(f.state);
  Criterion c;
  if (criterion) {
    c = parse_criterion(*criterion);
  } else if (f.angles) {
    c = biased ? Criterion::thm2 : Criterion::thm1;
  } else if (same(q.sx, q.sxp) && same(q.sy, q.syp)) {
    c = biased ? Criterion::cor4 : Criterion::cor1;
  } else if (std::abs(st[0] - st[1]) <= 1e-8) {
    c = Criterion::thm4;
  } else if (same(q.sx, q.sxp)) {
    c = Criterion::thm3;
  } else {
    throw Error(ErrorKind::invalid_input,
                "no default construction for these strengths without angles; pass a criterion");
  }
  if (c == Criterion::thm2 || c == Criterion::cor4) biased = true;
  if (biased && !f.state.is_t_state())
    throw Error(ErrorKind::domain, std::string(criterion_name(c)) +
                                       " with biases requires a T-state: not a T-state");

  const AchievingConfig cfg = achieve_criterion(f.state, c, q, f.angles, biased);
  const Scenario& sc = cfg.scenario;
  Json out;
  out["criterion"] = std::string(criterion_name(c));
  out["recipe"] = std::string(recipe_name(cfg.recipe));
  out["target_bound"] = rounded(cfg.target_bound);
  out["attained_chsh"] = rounded(cfg.attained_chsh);
  out["state"] = Json::parse(f.state_json);
  out["angles"] = angles_json({sc.theta(), sc.phi()});
  Json obs;
  obs["x"] = observable_json(sc.x);
  obs["xp"] = observable_json(sc.xp);
  obs["y"] = observable_json(sc.y);
  obs["yp"] = observable_json(sc.yp);
  out["observables"] = obs;
  return out.dump(2) + "\n";
}

std::string cmd_compat(const std::string& pair_json) {
  const Json doc = parse_json(pair_json);
  Observable x, xp;
  if (doc.is_array()) {
    if (doc.size() != 2) parse_fail("<root>", "expected exactly two observables");
    x = parse_observable(doc[0], "[0]");
    xp = parse_observable(doc[1], "[1]");
  } else if (doc.is_object()) {
    reject_unknown(doc, {"x", "xp"}, "");
    x = parse_observable(member(doc, "x", ""), "x");
    xp = parse_observable(member(doc, "xp", ""), "xp");
  } else {
    parse_fail("<root>", "expected [obs, obs] or {\"x\": obs, \"xp\": obs}");
  }
  const CompatReport r = compat_report(x, xp);
  Json out;
  if (r.busch) {
    out["busch"] = *r.busch;
  } else {
    out["busch"] = nullptr;
  }
  out["necessary"] = r.necessary;
  out["full"] = r.full;
  Json d;
  d["busch_lhs"] = rounded(r.busch_lhs);
  d["necessary_lhs"] = rounded(r.necessary_lhs);
  d["full_lhs"] = rounded(r.full_lhs);
  d["full_rhs"] = rounded(r.full_rhs);
  out["details"] = d;
  out["max_reversibility"] = Json::array({rounded(r.reversibility_x), rounded(r.reversibility_xp)});
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out.dump(2) + "\n";
}

namespace {

struct ScanRow {
  double parameter = 0.0;
  double unbiased = 0.0;
  std::optional<double> biased;
};

using ScanFn = std::function<ScanRow(double)>;

// Bisection for f(p) = 2 between a and b, where f - 2 changes sign.
double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a) - 2.0;
  for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m) - 2.0;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

Json crossings(const std::vector<ScanRow>& rows, const ScanFn& fn, bool biased) {
  Json out = Json::array();
  auto value = [&](double p) {
    const ScanRow r = fn(p);
    return biased ? *r.biased : r.unbiased;
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (biased && (!rows[i - 1].biased || !rows[i].biased)) continue;
    const double u = biased ? *rows[i - 1].biased : rows[i - 1].unbiased;
    const double v = biased ? *rows[i].biased : rows[i].unbiased;
    if ((u > 2.0) != (v > 2.0))
      out.push_back(rounded(bisect(value, rows[i - 1].parameter, rows[i].parameter)));
  }
  return out;
}

}  // namespace

std::string cmd_scan(const ScanParams& params, const std::string& format) {
  if (format != "csv" && format != "json")
    throw Error(ErrorKind::invalid_input, "format must be csv or json");
  if (params.steps < 2) throw Error(ErrorKind::invalid_input, "steps must be >= 2");
  if (!std::isfinite(params.from) || !std::isfinite(params.to) || !(params.from < params.to))
    throw Error(ErrorKind::invalid_input, "range must satisfy from < to");
  if (params.strength < 0.0 || params.strength > 1.0)
    throw Error(ErrorKind::invalid_input, "strength must lie in [0, 1]");

  const FanoState state =
      params.state_json ? parse_state(parse_json(*params.state_json)) : singlet();
  const double s = params.strength;
  ScanFn fn;
  double lo = 0.0, hi = 1.0;
  if (params.family == "strength-sweep") {
    fn = [&](double p) {
      ScanRow r{p, cor1_bound(state, p, p).value, std::nullopt};
      if (state.is_t_state()) r.biased = cor4_bound(state, p, p).value;
      return r;
    };
  } else if (params.family == "werner-sweep") {
    lo = -1.0 / 3.0;
    fn = [&](double p) {
      const FanoState w = werner(p);
      return ScanRow{p, cor1_bound(w, s, s).value, cor4_bound(w, s, s).value};
    };
  } else if (params.family == "angle-sweep") {
    hi = pi;
    fn = [&](double p) {
      const StrengthQuad q{s, s, s, s};
      ScanRow r{p, s0_bound(state, q, p, p).value, std::nullopt};
      if (state.is_t_state()) r.biased = st_bound(state, q, p, p).value;
      return r;
    };
  } else {
    throw Error(ErrorKind::invalid_input, "unknown family '" + params.family +
                                              "' (strength-sweep, werner-sweep, angle-sweep)");
  }
  if (params.from < lo - 1e-15 || params.to > hi + 1e-15)
    throw Error(ErrorKind::invalid_input, "range outside the family's domain [" +
                                              shortest(lo) + ", " + shortest(hi) + "]");

  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(params.steps));
  for (int i = 0; i < params.steps; ++i) {
    const double p = i + 1 == params.steps
                         ? params.to
                         : params.from + (params.to - params.from) * i / (params.steps - 1);
    rows.push_back(fn(p));
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "parameter,unbiased_bound,biased_bound,unbiased_violated,biased_violated\n";
    for (const ScanRow& r : rows) {
      os << shortest(r.parameter) << ',' << shortest(r.unbiased) << ','
         << (r.biased ? shortest(*r.biased) : "") << ',' << (r.unbiased > 2.0 ? 1 : 0)
         << ',' << (r.biased ? (*r.biased > 2.0 ? "1" : "0") : "") << '\n';
    }
    return os.str();
  }

  Json out;
  out["family"] = params.family;
  Json jr = Json::array();
  for (const ScanRow& r : rows) {
    Json j;
    j["parameter"] = rounded(r.parameter);
    j["unbiased_bound"] = rounded(r.unbiased);
    j["biased_bound"] = r.biased ? rounded(*r.biased) : Json(nullptr);
    j["unbiased_violated"] = r.unbiased > 2.0;
    j["biased_violated"] = r.biased ? Json(*r.biased > 2.0) : Json(nullptr);
    jr.push_back(j);
  }
  out["rows"] = jr;
  Json cr;
  cr["unbiased"] = crossings(rows, fn, false);
  cr["biased"] = crossings(rows, fn, true);
  out["crossings"] = cr;
  if (params.family == "strength-sweep") {
    const auto st = correlation_singular_values(state);
    const double r = std::hypot(st[0], st[1]);
    if (r > 0.0) {
      const StrengthThresholds th = strength_thresholds(r);
      Json t;
      t["unbiased"] = rounded(th.unbiased);
      t["biased"] = rounded(th.biased);
      out["thresholds"] = t;
    }
  }
  if (params.family == "angle-sweep") {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].unbiased > rows[arg].unbiased) arg = i;
    // Golden-section refinement inside the neighbouring grid cells.
    double a = rows[arg == 0 ? 0 : arg - 1].parameter;
    double b = rows[std::min(arg + 1, rows.size() - 1)].parameter;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
      const double c = b - g * (b - a), d = a + g * (b - a);
      if (fn(c).unbiased >= fn(d).unbiased) {
        b = d;
      } else {
        a = c;
      }
    }
    const double best = 0.5 * (a + b);
    Json m;
    m["grid_argmax"] = rounded(rows[arg].parameter);
    m["refined_argmax"] = rounded(best);
    m["value"] = rounded(fn(best).unbiased);
    out["maximum"] = m;
  }
  return out.dump(2) + "\n";
}

VerifyOutput cmd_verify(const std::string& criterion, int trials, std::uint64_t seed,
                        double tolerance, int restarts, const std::string& format) {
  if (format != "csv" && format != "json")
    throw Error(ErrorKind::invalid_input, "format must be csv or json");
  const AuditReport rep = audit_bound(criterion, trials, seed, tolerance, restarts);
  VerifyOutput out;
  out.passed = rep.passed;
  if (!rep.passed) {
    std::ostringstream os;
    os << "audit failed for " << criterion << ": " << rep.failing_seeds.size()
       << " failing trial(s); max overshoot " << shortest(rep.max_overshoot)
       << ", max undershoot " << shortest(rep.max_undershoot) << "; seeds:";
    for (std::uint64_t s : rep.failing_seeds) os << ' ' << s;
    out.failure_summary = os.str();
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "trial,bound,oracle,gap\n";
    for (const AuditRow& r : rep.rows)
      os << r.trial << ',' << shortest(r.bound) << ',' << shortest(r.oracle) << ','
         << shortest(r.gap) << '\n';
    out.text = os.str();
    return out;
  }
  Json j;
  j["criterion"] = rep.criterion;
  j["trials"] = trials;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["tight"] = rep.tight;
  j["passed"] = rep.passed;
  j["max_overshoot"] = rounded(rep.max_overshoot);
  j["max_undershoot"] = rounded(rep.max_undershoot);
  j["failing_seeds"] = rep.failing_seeds;
  Json rows = Json::array();
  for (const AuditRow& r : rep.rows) {
    Json row;
    row["trial"] = r.trial;
    row["seed"] = r.seed;
    row["bound"] = rounded(r.bound);
    row["oracle"] = rounded(r.oracle);
    row["gap"] = rounded(r.gap);
    rows.push_back(row);
  }
  j["rows"] = rows;
  out.text = j.dump(2) + "\n";
  return out;
}

}  // namespace bellbound
