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

#include "bellbound/bellbound.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "chsh.hpp"
#include "commands.hpp"
#include "construction.hpp"
#include "error.hpp"
#include "oracle.hpp"

struct bb_state {
  bellbound::FanoState state;
};

struct bb_audit {
  bellbound::AuditReport report;
};

namespace {

using namespace bellbound;

thread_local std::string g_last_error;

bb_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return BB_ERR_INVALID_INPUT;
    case ErrorKind::constraint: return BB_ERR_CONSTRAINT;
    case ErrorKind::unphysical_state: return BB_ERR_UNPHYSICAL;
    case ErrorKind::domain: return BB_ERR_DOMAIN;
    case ErrorKind::internal_consistency: return BB_ERR_INTERNAL;
    case ErrorKind::construction_failure: return BB_ERR_CONSTRUCTION;
    case ErrorKind::parse: return BB_ERR_PARSE;
  }
  return BB_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes and the thread-local
// error message.
template <class F>
bb_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BB_ERR_INTERNAL;
  }
}

bb_status null_arg(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return BB_ERR_INVALID_INPUT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <std::size_t N>
void copy_name(char (&dst)[N], std::string_view src) {
  const std::size_t n = std::min(N - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

StrengthQuad quad(const bb_strengths& s) { return {s.sx, s.sxp, s.sy, s.syp}; }

Observable observable(const bb_observable& o) {
  return make_observable(o.bias, o.strength, {o.direction[0], o.direction[1], o.direction[2]});
}

bb_observable to_c(const Observable& o) {
  return {o.bias, o.strength, {o.direction[0], o.direction[1], o.direction[2]}};
}

Scenario scenario(const bb_observable obs[4]) {
  return {observable(obs[0]), observable(obs[1]), observable(obs[2]), observable(obs[3])};
}

void fill_report(const BoundReport& r, bb_bound_report* out) {
  out->value = r.value;
  out->violated = r.violated ? 1 : 0;
  out->has_angles = r.optimal_angles ? 1 : 0;
  out->optimal_angles = r.optimal_angles ? bb_angles{r.optimal_angles->theta, r.optimal_angles->phi}
                                         : bb_angles{0.0, 0.0};
  copy_name(out->criterion, criterion_name(r.criterion));
}

bb_status make_state(FanoState s, bb_state** out) {
  *out = new bb_state{s};
  return BB_OK;
}

std::optional<Angles> angles_of(const bb_angles* a) {
  if (!a) return std::nullopt;
  return Angles{a->theta, a->phi};
}

}  // namespace

extern "C" {

const char* bb_version(void) { return "0.1.0"; }

const char* bb_last_error(void) { return g_last_error.c_str(); }

const char* bb_status_name(bb_status status) {
  switch (status) {
    case BB_OK: return "ok";
    case BB_ERR_INVALID_INPUT: return "invalid-input";
    case BB_ERR_CONSTRAINT: return "constraint";
    case BB_ERR_UNPHYSICAL: return "unphysical-state";
    case BB_ERR_DOMAIN: return "domain";
    case BB_ERR_CONSTRUCTION: return "construction-failure";
    case BB_ERR_INTERNAL: return "internal-consistency";
    case BB_ERR_PARSE: return "parse";
    case BB_ERR_AUDIT_FAILED: return "audit-failed";
  }
  return "unknown";
}

void bb_string_free(char* s) { std::free(s); }

bb_status bb_state_singlet(bb_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] { return make_state(singlet(), out); });
}

bb_status bb_state_werner(double w, bb_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] { return make_state(werner(w), out); });
}

bb_status bb_state_bell_diagonal(double t1, double t2, double t3, bb_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] { return make_state(bell_diagonal(t1, t2, t3), out); });
}

bb_status bb_state_from_fano(const double a[3], const double b[3], const double t[9],
                             bb_state** out) {
  if (!a || !b || !t) return null_arg("a, b and t");
  if (!out) return null_arg("out");
  return guarded([&] {
    Mat3 m;
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = t[i];
    return make_state(state_from_fano({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, m), out);
  });
}

bb_status bb_state_random(uint64_t seed, bb_state_kind kind, bb_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    StateKind k;
    switch (kind) {
      case BB_STATE_TSTATE: k = StateKind::tstate; break;
      case BB_STATE_GENERAL: k = StateKind::general; break;
      case BB_STATE_PURE: k = StateKind::pure; break;
      default: throw Error(ErrorKind::invalid_input, "unknown state kind");
    }
    return make_state(random_state(seed, k), out);
  });
}

void bb_state_free(bb_state* state) { delete state; }

bb_status bb_state_fano(const bb_state* state, double a[3], double b[3], double t[9]) {
  if (!state) return null_arg("state");
  if (!a || !b || !t) return null_arg("a, b and t");
  for (std::size_t i = 0; i < 3; ++i) {
    a[i] = state->state.a[i];
    b[i] = state->state.b[i];
  }
  for (std::size_t i = 0; i < 9; ++i) t[i] = state->state.t.a[i];
  return BB_OK;
}

bb_status bb_state_is_t_state(const bb_state* state, int* out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  *out = state->state.is_t_state() ? 1 : 0;
  return BB_OK;
}

bb_status bb_state_singular_values(const bb_state* state, double out[3]) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto s = correlation_singular_values(state->state);
    for (std::size_t i = 0; i < 3; ++i) out[i] = s[i];
    return BB_OK;
  });
}

bb_status bb_chsh(const bb_state* state, const bb_observable observables[4], double* out) {
  if (!state) return null_arg("state");
  if (!observables) return null_arg("observables");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = chsh(scenario(observables), state->state).canonical;
    return BB_OK;
  });
}

bb_status bb_bound(const bb_state* state, const char* criterion,
                   const bb_strengths* strengths, const bb_angles* angles, int biased,
                   bb_bound_report* out) {
  if (!state) return null_arg("state");
  if (!criterion) return null_arg("criterion");
  if (!strengths) return null_arg("strengths");
  if (!out) return null_arg("out");
  return guarded([&] {
    const BoundReport r = evaluate_criterion(state->state, parse_criterion(criterion),
                                             quad(*strengths), angles_of(angles), biased != 0);
    fill_report(r, out);
    return BB_OK;
  });
}

bb_status bb_sgen(const bb_state* state, const bb_observable observables[4],
                  bb_bound_report* out) {
  if (!state) return null_arg("state");
  if (!observables) return null_arg("observables");
  if (!out) return null_arg("out");
  return guarded([&] {
    fill_report(sgen_bound(scenario(observables), state->state), out);
    return BB_OK;
  });
}

bb_status bb_j_max(const bb_strengths* strengths, double* out) {
  if (!strengths) return null_arg("strengths");
  if (!out) return null_arg("out");
  return guarded([&] {
    const StrengthQuad q = quad(*strengths);
    check_strengths(q);
    *out = j_max(q);
    return BB_OK;
  });
}

bb_status bb_achieve(const bb_state* state, const char* criterion,
                     const bb_strengths* strengths, const bb_angles* angles, int biased,
                     bb_achieving_config* out) {
  if (!state) return null_arg("state");
  if (!criterion) return null_arg("criterion");
  if (!strengths) return null_arg("strengths");
  if (!out) return null_arg("out");
  return guarded([&] {
    const AchievingConfig cfg =
        achieve_criterion(state->state, parse_criterion(criterion), quad(*strengths),
                          angles_of(angles), biased != 0);
    out->observables[0] = to_c(cfg.scenario.x);
    out->observables[1] = to_c(cfg.scenario.xp);
    out->observables[2] = to_c(cfg.scenario.y);
    out->observables[3] = to_c(cfg.scenario.yp);
    out->target_bound = cfg.target_bound;
    out->attained_chsh = cfg.attained_chsh;
    copy_name(out->recipe, recipe_name(cfg.recipe));
    return BB_OK;
  });
}

bb_status bb_compat(const bb_observable* x, const bb_observable* xp, int* busch,
                    int* necessary, int* full) {
  if (!x || !xp) return null_arg("x and xp");
  if (!busch || !necessary || !full) return null_arg("busch, necessary and full");
  return guarded([&] {
    const CompatReport r = compat_report(observable(*x), observable(*xp));
    *busch = r.busch ? (*r.busch ? 1 : 0) : -1;
    *necessary = r.necessary ? 1 : 0;
    *full = r.full ? 1 : 0;
    return BB_OK;
  });
}

bb_status bb_audit_run(const char* criterion, int trials, uint64_t seed, double tolerance,
                       int restarts, bb_audit** out) {
  if (!criterion) return null_arg("criterion");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new bb_audit{audit_bound(criterion, trials, seed, tolerance, restarts)};
    return BB_OK;
  });
}

void bb_audit_free(bb_audit* audit) { delete audit; }

bb_status bb_audit_summary(const bb_audit* audit, int* passed, double* max_overshoot,
                           double* max_undershoot) {
  if (!audit) return null_arg("audit");
  if (passed) *passed = audit->report.passed ? 1 : 0;
  if (max_overshoot) *max_overshoot = audit->report.max_overshoot;
  if (max_undershoot) *max_undershoot = audit->report.max_undershoot;
  return BB_OK;
}

bb_status bb_audit_row_count(const bb_audit* audit, size_t* out) {
  if (!audit) return null_arg("audit");
  if (!out) return null_arg("out");
  *out = audit->report.rows.size();
  return BB_OK;
}

bb_status bb_audit_row(const bb_audit* audit, size_t index, uint64_t* seed, double* bound,
                       double* oracle) {
  if (!audit) return null_arg("audit");
  if (index >= audit->report.rows.size()) {
    g_last_error = "row index out of range";
    return BB_ERR_INVALID_INPUT;
  }
  const AuditRow& r = audit->report.rows[index];
  if (seed) *seed = r.seed;
  if (bound) *bound = r.bound;
  if (oracle) *oracle = r.oracle;
  return BB_OK;
}

bb_status bb_audit_failing_seeds(const bb_audit* audit, uint64_t* seeds, size_t capacity,
                                 size_t* count) {
  if (!audit) return null_arg("audit");
  if (!count) return null_arg("count");
  const auto& fs = audit->report.failing_seeds;
  *count = fs.size();
  if (seeds)
    for (std::size_t i = 0; i < std::min(capacity, fs.size()); ++i) seeds[i] = fs[i];
  return BB_OK;
}

bb_status bb_cmd_bound(const char* scenario_json, const char* criterion, char** out_json) {
  if (!scenario_json) return null_arg("scenario_json");
  if (!out_json) return null_arg("out_json");
  return guarded([&] {
    *out_json = dup_string(cmd_bound(scenario_json, criterion ? std::optional<std::string>(criterion)
                                                              : std::nullopt));
    return BB_OK;
  });
}

bb_status bb_cmd_achieve(const char* scenario_json, const char* criterion, int biased,
                         char** out_json) {
  if (!scenario_json) return null_arg("scenario_json");
  if (!out_json) return null_arg("out_json");
  return guarded([&] {
    *out_json = dup_string(cmd_achieve(
        scenario_json, criterion ? std::optional<std::string>(criterion) : std::nullopt,
        biased != 0));
    return BB_OK;
  });
}

bb_status bb_cmd_compat(const char* pair_json, char** out_json) {
  if (!pair_json) return null_arg("pair_json");
  if (!out_json) return null_arg("out_json");
  return guarded([&] {
    *out_json = dup_string(cmd_compat(pair_json));
    return BB_OK;
  });
}

bb_status bb_cmd_scan(const char* params_json, const char* format, char** out) {
  if (!params_json) return null_arg("params_json");
  if (!format) return null_arg("format");
  if (!out) return null_arg("out");
  return guarded([&] {
    using Json = nlohmann::json;
    Json p;
    try {
      p = Json::parse(params_json);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
    }
    if (!p.is_object()) throw Error(ErrorKind::parse, "scan parameters must be an object");
    ScanParams sp;
    try {
      sp.family = p.at("family").get<std::string>();
      sp.from = p.at("from").get<double>();
      sp.to = p.at("to").get<double>();
      sp.steps = p.value("steps", sp.steps);
      sp.strength = p.value("strength", sp.strength);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse, std::string("scan parameters: ") + e.what());
    }
    if (p.contains("state")) sp.state_json = p["state"].dump();
    *out = dup_string(cmd_scan(sp, format));
    return BB_OK;
  });
}

bb_status bb_cmd_verify(const char* criterion, int trials, uint64_t seed, double tolerance,
                        int restarts, const char* format, char** out) {
  if (!criterion) return null_arg("criterion");
  if (!format) return null_arg("format");
  if (!out) return null_arg("out");
  return guarded([&] {
    const VerifyOutput v = cmd_verify(criterion, trials, seed, tolerance, restarts, format);
    *out = dup_string(v.text);
    if (!v.passed) {
      g_last_error = v.failure_summary;
      return BB_ERR_AUDIT_FAILED;
    }
    return BB_OK;
  });
}

}  // extern "C"
