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

// Brute-force numerical maximization of the CHSH value, used to audit the
// closed-form bounds. Nothing here calls into bounds.hpp when computing the
// objective; the optimizer only sees expectation values.

#ifndef BELLBOUND_ORACLE_HPP
#define BELLBOUND_ORACLE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"

namespace bellbound {

enum class BiasMode {
  fixed_zero,
  fixed_values,     // OptimizeSpec::fixed_biases
  free_extremal,    // |B| = 1 - S, best of the 16 sign patterns
  free_continuous,  // B = (1 - S) sin(p) with p optimized
};

struct OptimizeSpec {
  FanoState state;
  StrengthQuad strengths;
  std::optional<Angles> fixed_angles;
  BiasMode bias_mode = BiasMode::fixed_zero;
  std::array<double, 4> fixed_biases{};  // x, xp, y, yp
  bool all_relabelings = false;          // maximize the best of four variants
  int restarts = 32;
  std::uint64_t seed = 0;
  double refine_tolerance = 1e-8;
  std::optional<Scenario> warm_start;
};

struct OptimizeResult {
  double best_value = 0.0;
  Scenario best_scenario;
  long evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with restarts. Start k depends only on (seed, k), so raising
/// `restarts` never lowers the result. The warm start, if any, is start 0.
OptimizeResult maximize_chsh(const OptimizeSpec& spec);

/// splitmix64 finalizer, used to derive per-trial and per-start seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct AuditRow {
  int trial = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;
  double oracle = 0.0;
  double gap = 0.0;  // bound - oracle
};

struct AuditReport {
  std::string criterion;
  bool tight = true;  // undershoot is checked only for tight criteria
  double tolerance = 1e-3;
  std::vector<AuditRow> rows;
  double max_overshoot = 0.0;   // max(oracle - bound, 0)
  double max_undershoot = 0.0;  // max(bound - oracle, 0)
  std::vector<std::uint64_t> failing_seeds;
  bool passed = true;
};

/// Oracle values may exceed a bound by at most this much.
inline constexpr double kOvershootTolerance = 1e-9;

/// Criteria accepted by audit_bound.
std::vector<std::string> auditable_criteria();

/// Samples `trials` random instances from the criterion's domain, evaluates
/// the closed-form bound and the oracle, and collects the gaps. The criterion
/// "zero-strength" checks that the oracle stays at or below 2 when Y' has no
/// strength. Threads: BELLBOUND_THREADS or the hardware concurrency.
AuditReport audit_bound(const std::string& criterion, int trials, std::uint64_t seed,
                        double tolerance = 1e-3, int restarts = 32);

}  // namespace bellbound

#endif  // BELLBOUND_ORACLE_HPP
