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

// JSON/CSV front end shared by the C API and the command-line tool.
//
// Scenario files look like
//
//   {
//     "state": {"kind": "werner", "w": 0.8},
//     "strengths": [1, 1, 0.9, 0.9],
//     "angles": {"theta": 1.5707963, "phi": 1.5707963},
//     "biases": [0, 0, 0.1, -0.1],
//     "seed": 3
//   }
//
// State kinds: singlet; werner {w}; bell_diagonal {t: [3]}; fano {a: [3],
// b: [3], t: [[3],[3],[3]]}; random {type: tstate|general|pure, seed}.
// "observables" {x, xp, y, yp} with {bias, strength, direction} may replace
// strengths, angles and biases; achieve writes this form.

#ifndef BELLBOUND_COMMANDS_HPP
#define BELLBOUND_COMMANDS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "bounds.hpp"
#include "oracle.hpp"

namespace bellbound {

struct ScenarioFile {
  FanoState state;
  std::string state_json;  // the "state" object as given, for echoing
  StrengthQuad strengths;
  std::optional<Angles> angles;
  std::optional<std::array<double, 4>> biases;
  std::optional<Scenario> observables;
  std::optional<std::uint64_t> seed;

  bool biased() const;
};

/// Throws Error(parse) naming the offending key, Error(unphysical_state) for
/// states that fail the physicality check.
ScenarioFile parse_scenario(const std::string& json_text);

/// Pretty-printed JSON report of every criterion, applicable or not.
/// `only` restricts the output to one criterion name.
std::string cmd_bound(const std::string& scenario_json,
                      const std::optional<std::string>& only);

/// Explicit achieving observables for `criterion` (chosen from the scenario
/// when empty). `biased` selects the T-state variants of thm3 and thm4.
std::string cmd_achieve(const std::string& scenario_json,
                        const std::optional<std::string>& criterion, bool biased);

/// Input: [obs, obs] or {"x": obs, "xp": obs}.
std::string cmd_compat(const std::string& pair_json);

struct ScanParams {
  std::string family;  // strength-sweep | werner-sweep | angle-sweep
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  double strength = 1.0;                 // werner-sweep and angle-sweep
  std::optional<std::string> state_json;  // defaults to the singlet
};

/// `format` is "csv" or "json".
std::string cmd_scan(const ScanParams& params, const std::string& format);

struct VerifyOutput {
  std::string text;
  bool passed = true;
  std::string failure_summary;  // failing seeds, one line
};

VerifyOutput cmd_verify(const std::string& criterion, int trials, std::uint64_t seed,
                        double tolerance, int restarts, const std::string& format);

/// Evaluates one criterion. Throws invalid_input when `angles` are needed
/// but missing, domain when the state or strengths fall outside its domain.
/// thm3 accepts either order of the B-side strengths. sgen is rejected; it
/// needs explicit observables.
BoundReport evaluate_criterion(const FanoState& state, Criterion c,
                               const StrengthQuad& q, std::optional<Angles> angles,
                               bool biased);

/// Shortest round-trip decimal representation.
std::string shortest(double v);
/// v rounded to 12 significant digits.
double round12(double v);

}  // namespace bellbound

#endif  // BELLBOUND_COMMANDS_HPP
