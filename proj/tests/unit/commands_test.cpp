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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "bounds.hpp"
#include "commands.hpp"
#include "test_support.hpp"

namespace bellbound {
namespace {

using nlohmann::json;
using std::numbers::pi;
using std::numbers::sqrt2;
using testing::expect_error;

constexpr const char* kSinglet = R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1]})";

const json* find_criterion(const json& report, const std::string& name,
                           const std::string& variant = "") {
  for (const json& c : report["criteria"]) {
    if (c["criterion"] != name) continue;
    if (!variant.empty() && c.value("variant", "") != variant) continue;
    return &c;
  }
  return nullptr;
}

TEST(Parse, StateKinds) {
  EXPECT_EQ(parse_scenario(R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1]})").state.t,
            -1.0 * Mat3::identity());
  const ScenarioFile w = parse_scenario(R"({"state": {"kind": "werner", "w": 0.5},
                                            "strengths": [1, 0.5, 0.25, 0]})");
  EXPECT_NEAR(w.state.t(1, 1), -0.5, 1e-15);
  EXPECT_EQ(w.strengths.syp, 0.0);
  const ScenarioFile bd = parse_scenario(
      R"({"state": {"kind": "bell_diagonal", "t": [0.5, -0.2, 0.1]}, "strengths": [1, 1, 1, 1]})");
  EXPECT_EQ(bd.state.t(1, 1), -0.2);
  const ScenarioFile f = parse_scenario(R"({"state": {"kind": "fano", "a": [0, 0, 0.1],
      "b": [0, 0, 0], "t": [[-0.5, 0, 0], [0, -0.5, 0], [0, 0, -0.5]]}, "strengths": [1, 1, 1, 1]})");
  EXPECT_EQ(f.state.a[2], 0.1);
  const ScenarioFile r = parse_scenario(
      R"({"state": {"kind": "random", "type": "tstate", "seed": 4}, "strengths": [1, 1, 1, 1]})");
  EXPECT_EQ(r.state.t, random_state(4, StateKind::tstate).t);
}

TEST(Parse, Errors) {
  expect_error(ErrorKind::parse, [] { parse_scenario("{"); });
  expect_error(ErrorKind::parse, [] { parse_scenario(R"({"state": {"kind": "singlet"}})"); });
  expect_error(ErrorKind::parse, [] { parse_scenario(R"({"state": {"kind": "singlet"}, "extra": 1})"); });
  expect_error(ErrorKind::parse, [] { parse_scenario(R"({"state": {"kind": "bogus"}})"); });
  expect_error(ErrorKind::parse, [] {
    parse_scenario(R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1],
                    "angles": {"theta_deg": 90, "phi": 1}})");
  });
  expect_error(ErrorKind::unphysical_state, [] { parse_scenario(R"({"state": {"kind": "werner", "w": 2}, "strengths": [1, 1, 1, 1]})"); });
  try {
    parse_scenario(R"({"state": {"kind": "singlet"}, "strenghts": [1, 1, 1, 1]})");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("strenghts"), std::string::npos);
  }
}

TEST(Parse, ConstraintViolations) {
  expect_error(ErrorKind::constraint, [] {
    parse_scenario(R"({"state": {"kind": "singlet"}, "strengths": [0.9, 1, 1, 1],
                       "biases": [0.5, 0, 0, 0]})");
  });
}

TEST(Bound, SingletProjective) {
  const json r = json::parse(cmd_bound(
      R"({"state": {"kind": "singlet"}, "strengths": [1, 1, 1, 1],
          "angles": {"theta": 1.5707963267948966, "phi": 1.5707963267948966}})",
      std::nullopt));
  EXPECT_NEAR((*find_criterion(r, "horodecki"))["value"].get<double>(), 2.8284271, 1e-7);
  EXPECT_NEAR((*find_criterion(r, "thm1"))["value"].get<double>(), 2.8284271, 1e-7);
  EXPECT_TRUE((*find_criterion(r, "thm1"))["violated"].get<bool>());
}

TEST(Bound, WernerBelowThreshold) {
  const json r = json::parse(cmd_bound(
      R"({"state": {"kind": "werner", "w": 0.6}, "strengths": [1, 1, 1, 1]})", std::nullopt));
  const json& h = *find_criterion(r, "horodecki");
  EXPECT_NEAR(h["value"].get<double>(), 1.6971, 1e-4);
  EXPECT_FALSE(h["violated"].get<bool>());
}

TEST(Bound, BiasedWindow) {
  const json r = json::parse(cmd_bound(
      R"({"state": {"kind": "singlet"}, "strengths": [0.835, 0.835, 0.835, 0.835]})", std::nullopt));
  EXPECT_GT((*find_criterion(r, "thm2"))["value"].get<double>(), 2.0);
  EXPECT_LT((*find_criterion(r, "thm1"))["value"].get<double>(), 2.0);
}

TEST(Bound, InapplicableCriteriaAreListed) {
  const json r = json::parse(cmd_bound(
      R"({"state": {"kind": "random", "type": "general", "seed": 3}, "strengths": [1, 0.5, 1, 0.5]})",
      std::nullopt));
  bool saw_thm2 = false;
  for (const json& c : r["inapplicable"])
    if (c["criterion"] == "thm2") {
      saw_thm2 = true;
      EXPECT_FALSE(c["reason"].get<std::string>().empty());
    }
  EXPECT_TRUE(saw_thm2);
}

TEST(Bound, SingleCriterion) {
  const json r = json::parse(cmd_bound(kSinglet, std::string("cor1")));
  ASSERT_EQ(r["criteria"].size(), 1u);
  EXPECT_EQ(r["criteria"][0]["criterion"], "cor1");
  expect_error(ErrorKind::invalid_input,
               [] { cmd_bound(kSinglet, std::string("nope")); });
}

TEST(Achieve, SingletAttainsMaximum) {
  const json a = json::parse(cmd_achieve(kSinglet, std::nullopt, false));
  EXPECT_NEAR(a["attained_chsh"].get<double>(), 2.0 * sqrt2, 1e-10);
  for (const char* k : {"x", "xp", "y", "yp"}) EXPECT_TRUE(a["observables"].contains(k));
}

TEST(Achieve, RoundTripThroughBound) {
  for (const char* scenario :
       {R"({"state": {"kind": "random", "type": "tstate", "seed": 12},
            "strengths": [0.9, 0.6, 0.8, 0.7], "angles": {"theta": 1.1, "phi": 2.0}})",
        R"({"state": {"kind": "random", "type": "general", "seed": 13},
            "strengths": [0.9, 0.6, 0.8, 0.7], "angles": {"theta": 0.4, "phi": 2.9}})"}) {
    const bool tstate = std::string(scenario).find("tstate") != std::string::npos;
    const std::string crit = tstate ? "thm2" : "thm1";
    const std::string out = cmd_achieve(scenario, crit, false);
    const json a = json::parse(out);
    const json b = json::parse(cmd_bound(out, crit));
    ASSERT_EQ(b["criteria"].size(), 1u);
    EXPECT_NEAR(b["criteria"][0]["value"].get<double>(), a["attained_chsh"].get<double>(), 1e-9);
    EXPECT_NEAR(a["target_bound"].get<double>(), a["attained_chsh"].get<double>(), 1e-9);
  }
}

TEST(Achieve, PreconditionFailure) {
  expect_error(ErrorKind::domain, [] {
    cmd_achieve(R"({"state": {"kind": "random", "type": "general", "seed": 3},
                    "strengths": [1, 1, 1, 1], "angles": {"theta": 1, "phi": 1}})",
                std::string("thm2"), false);
  });
}

TEST(Compat, Examples) {
  const double h = 1.0 / sqrt2;
  std::ostringstream boundary;
  boundary.precision(17);
  boundary << R"([{"bias": 0, "strength": )" << h << R"(, "direction": [1, 0, 0]},
                  {"bias": 0, "strength": )" << h << R"(, "direction": [0, 1, 0]}])";
  const json b = json::parse(cmd_compat(boundary.str()));
  EXPECT_TRUE(b["busch"].get<bool>());
  EXPECT_TRUE(b["necessary"].get<bool>());
  EXPECT_TRUE(b["full"].get<bool>());
  const json p = json::parse(cmd_compat(R"({"x": {"bias": 0, "strength": 1, "direction": [1, 0, 0]},
                                            "xp": {"bias": 0, "strength": 1, "direction": [0, 1, 0]}})"));
  EXPECT_FALSE(p["busch"].get<bool>());
  EXPECT_FALSE(p["necessary"].get<bool>());
  EXPECT_FALSE(p["full"].get<bool>());
  const json biased = json::parse(cmd_compat(R"([{"bias": 0.2, "strength": 0.8, "direction": [1, 0, 0]},
                                                 {"bias": -0.2, "strength": 0.8, "direction": [0, 1, 0]}])"));
  EXPECT_TRUE(biased["busch"].is_null());
  EXPECT_FALSE(biased["necessary"].get<bool>());
  EXPECT_FALSE(biased["full"].get<bool>());
  expect_error(ErrorKind::parse, [] { cmd_compat("[1, 2, 3]"); });
}

TEST(Scan, StrengthSweepCrossings) {
  ScanParams p;
  p.family = "strength-sweep";
  p.from = 0.80;
  p.to = 0.86;
  p.steps = 61;
  const json r = json::parse(cmd_scan(p, "json"));
  EXPECT_NEAR(r["crossings"]["biased"][0].get<double>(), 0.828427, 1e-6);
  EXPECT_NEAR(r["crossings"]["unbiased"][0].get<double>(), 0.840896, 1e-6);
  const std::string csv = cmd_scan(p, "csv");
  EXPECT_EQ(csv, cmd_scan(p, "csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 62);
}

TEST(Scan, WernerOnset) {
  ScanParams p;
  p.family = "werner-sweep";
  p.steps = 11;
  const json r = json::parse(cmd_scan(p, "json"));
  ASSERT_FALSE(r["crossings"]["unbiased"].empty());
  EXPECT_NEAR(r["crossings"]["unbiased"][0].get<double>(), 1.0 / sqrt2, 1e-9);
}

TEST(Scan, AngleSweepMaximum) {
  ScanParams p;
  p.family = "angle-sweep";
  p.from = 0.0;
  p.to = pi;
  p.steps = 37;
  p.strength = 0.9;
  const json r = json::parse(cmd_scan(p, "json"));
  EXPECT_NEAR(r["maximum"]["refined_argmax"].get<double>(), pi / 2, 1e-6);
  p.state_json = R"({"kind": "bell_diagonal", "t": [0.9, 0.3, -0.3]})";
  const json b = json::parse(cmd_scan(p, "json"));
  EXPECT_NEAR(std::sin(b["maximum"]["refined_argmax"].get<double>()), std::sqrt(0.54 / 0.9), 1e-6);
}

TEST(Scan, RejectsBadParameters) {
  ScanParams p;
  p.family = "strength-sweep";
  p.steps = 1;
  expect_error(ErrorKind::invalid_input, [&] { cmd_scan(p, "csv"); });
  p.steps = 5;
  p.family = "other";
  expect_error(ErrorKind::invalid_input, [&] { cmd_scan(p, "csv"); });
}

TEST(Verify, ReportsAndDeterminism) {
  const VerifyOutput a = cmd_verify("thm1", 5, 7, 1e-3, 4, "csv");
  const VerifyOutput b = cmd_verify("thm1", 5, 7, 1e-3, 4, "csv");
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(std::count(a.text.begin(), a.text.end(), '\n'), 6);
  const json j = json::parse(cmd_verify("sgen", 4, 1, 1e-3, 4, "json").text);
  EXPECT_TRUE(j.is_object());
}

TEST(Format, Helpers) {
  EXPECT_EQ(shortest(0.1), "0.1");
  EXPECT_EQ(shortest(2.0), "2");
  EXPECT_EQ(round12(2.0 * sqrt2), 2.82842712475);
}

}  // namespace
}  // namespace bellbound
