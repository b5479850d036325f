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

// Exercises the shared library through its public header only.

#include <cmath>
#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "bellbound/bellbound.h"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTsirelson = 2.8284271247461903;

struct StateGuard {
  bb_state* s = nullptr;
  ~StateGuard() { bb_state_free(s); }
};

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(bb_version(), "0.1.0");
  EXPECT_STREQ(bb_status_name(BB_OK), "ok");
  EXPECT_NE(std::string(bb_status_name(BB_ERR_DOMAIN)), "");
}

TEST(CApi, SingletBoundAndAchieve) {
  StateGuard g;
  ASSERT_EQ(bb_state_singlet(&g.s), BB_OK);
  double sv[3];
  ASSERT_EQ(bb_state_singular_values(g.s, sv), BB_OK);
  EXPECT_NEAR(sv[0], 1.0, 1e-15);
  int t_state = 0;
  ASSERT_EQ(bb_state_is_t_state(g.s, &t_state), BB_OK);
  EXPECT_EQ(t_state, 1);

  const bb_strengths unit{1, 1, 1, 1};
  const bb_angles right{kPi / 2, kPi / 2};
  bb_bound_report rep;
  ASSERT_EQ(bb_bound(g.s, "thm1", &unit, &right, 0, &rep), BB_OK);
  EXPECT_NEAR(rep.value, kTsirelson, 1e-12);
  EXPECT_EQ(rep.violated, 1);
  EXPECT_STREQ(rep.criterion, "thm1");

  bb_achieving_config cfg;
  ASSERT_EQ(bb_achieve(g.s, "thm1", &unit, &right, 0, &cfg), BB_OK);
  EXPECT_NEAR(cfg.attained_chsh, kTsirelson, 1e-12);
  EXPECT_STREQ(cfg.recipe, "appendixA");
  double value = 0.0;
  ASSERT_EQ(bb_chsh(g.s, cfg.observables, &value), BB_OK);
  EXPECT_NEAR(value, kTsirelson, 1e-12);
  bb_bound_report sg;
  ASSERT_EQ(bb_sgen(g.s, cfg.observables, &sg), BB_OK);
  EXPECT_GE(sg.value, kTsirelson - 1e-12);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  bb_state* s = nullptr;
  EXPECT_EQ(bb_state_werner(2.0, &s), BB_ERR_UNPHYSICAL);
  EXPECT_EQ(s, nullptr);
  EXPECT_STRNE(bb_last_error(), "");
  EXPECT_EQ(bb_state_singlet(nullptr), BB_ERR_INVALID_INPUT);

  StateGuard g;
  ASSERT_EQ(bb_state_random(3, BB_STATE_GENERAL, &g.s), BB_OK);
  const bb_strengths unit{1, 1, 1, 1};
  const bb_angles a{1.0, 1.0};
  bb_bound_report rep;
  EXPECT_EQ(bb_bound(g.s, "thm2", &unit, &a, 0, &rep), BB_ERR_DOMAIN);
  EXPECT_NE(std::string(bb_last_error()).find("T-state"), std::string::npos);
  EXPECT_EQ(bb_bound(g.s, "nonsense", &unit, &a, 0, &rep), BB_ERR_INVALID_INPUT);
  const bb_strengths bad{1.5, 1, 1, 1};
  EXPECT_EQ(bb_bound(g.s, "thm1", &bad, &a, 0, &rep), BB_ERR_INVALID_INPUT);

  const bb_observable x{0.5, 0.6, {1, 0, 0}};
  const bb_observable xp{0.0, 1.0, {0, 1, 0}};
  int busch = 0, nec = 0, full = 0;
  EXPECT_EQ(bb_compat(&x, &xp, &busch, &nec, &full), BB_ERR_CONSTRAINT);
}

TEST(CApi, FanoRoundTrip) {
  const double a[3] = {0, 0, 0.2}, b[3] = {0.1, 0, 0};
  const double t[9] = {-0.5, 0, 0, 0, -0.5, 0, 0, 0, -0.4};
  StateGuard g;
  ASSERT_EQ(bb_state_from_fano(a, b, t, &g.s), BB_OK);
  double a2[3], b2[3], t2[9];
  ASSERT_EQ(bb_state_fano(g.s, a2, b2, t2), BB_OK);
  EXPECT_EQ(std::memcmp(t, t2, sizeof t), 0);
  EXPECT_EQ(a2[2], 0.2);
  int t_state = 1;
  ASSERT_EQ(bb_state_is_t_state(g.s, &t_state), BB_OK);
  EXPECT_EQ(t_state, 0);
}

TEST(CApi, JMaxAndCompat) {
  const bb_strengths q{1, 0.5, 1, 0.5};
  double j = 0.0;
  ASSERT_EQ(bb_j_max(&q, &j), BB_OK);
  EXPECT_NEAR(j, 0.25, 1e-15);
  const bb_observable x{0.0, 1.0, {1, 0, 0}};
  const bb_observable xp{0.0, 1.0, {0, 1, 0}};
  int busch = -2, nec = -2, full = -2;
  ASSERT_EQ(bb_compat(&x, &xp, &busch, &nec, &full), BB_OK);
  EXPECT_EQ(busch, 0);
  EXPECT_EQ(nec, 0);
  EXPECT_EQ(full, 0);
  const bb_observable bx{0.2, 0.5, {1, 0, 0}};
  ASSERT_EQ(bb_compat(&bx, &bx, &busch, &nec, &full), BB_OK);
  EXPECT_EQ(busch, -1);
  EXPECT_EQ(full, 1);
}

TEST(CApi, AuditHandle) {
  bb_audit* audit = nullptr;
  ASSERT_EQ(bb_audit_run("thm1", 3, 5, 1e-3, 4, &audit), BB_OK);
  int passed = 0;
  double over = 1.0, under = 1.0;
  ASSERT_EQ(bb_audit_summary(audit, &passed, &over, &under), BB_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_LE(over, 1e-9);
  size_t n = 0;
  ASSERT_EQ(bb_audit_row_count(audit, &n), BB_OK);
  EXPECT_EQ(n, 3u);
  uint64_t seed = 0;
  double bound = 0.0, oracle = 0.0;
  ASSERT_EQ(bb_audit_row(audit, 2, &seed, &bound, &oracle), BB_OK);
  EXPECT_GE(bound, oracle - 1e-9);
  EXPECT_EQ(bb_audit_row(audit, 3, &seed, &bound, &oracle), BB_ERR_INVALID_INPUT);
  size_t count = 7;
  ASSERT_EQ(bb_audit_failing_seeds(audit, nullptr, 0, &count), BB_OK);
  EXPECT_EQ(count, 0u);
  bb_audit_free(audit);
  EXPECT_EQ(bb_audit_run("nope", 3, 5, 1e-3, 4, &audit), BB_ERR_INVALID_INPUT);
}

TEST(CApi, JsonCommands) {
  char* out = nullptr;
  ASSERT_EQ(bb_cmd_bound(R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1]})", "cor1", &out), BB_OK);
  ASSERT_NE(out, nullptr);
  EXPECT_NE(std::string(out).find("\"cor1\""), std::string::npos);
  bb_string_free(out);

  out = nullptr;
  EXPECT_EQ(bb_cmd_bound("{not json", nullptr, &out), BB_ERR_PARSE);
  EXPECT_EQ(out, nullptr);

  ASSERT_EQ(bb_cmd_achieve(R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1]})", nullptr, 0, &out), BB_OK);
  EXPECT_NE(std::string(out).find("attained_chsh"), std::string::npos);
  bb_string_free(out);

  ASSERT_EQ(bb_cmd_compat(R"([{"bias": 0, "strength": 0.5, "direction": [1, 0, 0]},
                              {"bias": 0, "strength": 0.5, "direction": [0, 1, 0]}])",
                          &out),
            BB_OK);
  bb_string_free(out);

  ASSERT_EQ(bb_cmd_scan(R"({"family": "werner-sweep", "from": 0, "to": 1, "steps": 5})", "csv",
                        &out),
            BB_OK);
  EXPECT_EQ(std::string(out).rfind("parameter,", 0), 0u);
  bb_string_free(out);

  ASSERT_EQ(bb_cmd_verify("horodecki-upper", 3, 1, 1e-3, 4, "csv", &out), BB_OK);
  bb_string_free(out);
  bb_string_free(nullptr);
}

}  // namespace
