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

// Command-line front end. Exit codes: 0 ok, 1 internal error, 2 parse or
// precondition error, 3 unphysical state, 4 construction failure, 5 audit
// failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellbound/bellbound.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

int exit_code(bb_status s) {
  switch (s) {
    case BB_OK: return 0;
    case BB_ERR_INVALID_INPUT:
    case BB_ERR_CONSTRAINT:
    case BB_ERR_DOMAIN:
    case BB_ERR_PARSE: return kExitUsage;
    case BB_ERR_UNPHYSICAL: return 3;
    case BB_ERR_CONSTRUCTION: return 4;
    case BB_ERR_AUDIT_FAILED: return 5;
    case BB_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << text;
}

// Writes the returned string (if any) and converts the status to an exit code.
int finish(bb_status status, char* text, const std::string& output) {
  if (text) {
    write_output(output, text);
    bb_string_free(text);
  }
  if (status != BB_OK)
    std::cerr << "bellbound: " << bb_status_name(status) << ": " << bb_last_error() << "\n";
  return exit_code(status);
}

void require_json(const std::string& format) {
  if (format != "json") throw UsageError("this command only writes json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight CHSH bounds for unsharp qubit observables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bb_version()));

  std::string input, criterion, output, format = "json";
  int trials = 200;
  int restarts = 32;
  std::uint64_t seed = 0;
  double tolerance = 1e-3;
  bool biased = false;

  auto* bound = app.add_subcommand("bound", "Evaluate every bound for a scenario file");
  bound->add_option("--input", input, "Scenario JSON file ('-' for stdin)")->required();
  bound->add_option("--criterion", criterion, "Report only this criterion");
  bound->add_option("--output", output, "Write to this file instead of stdout");
  bound->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* achieve = app.add_subcommand("achieve", "Construct measurements attaining a bound");
  achieve->add_option("--input", input, "Scenario JSON file ('-' for stdin)")->required();
  achieve->add_option("--criterion", criterion, "Bound to attain");
  achieve->add_flag("--biased", biased, "Use the T-state variant with biases");
  achieve->add_option("--output", output, "Write to this file instead of stdout");
  achieve->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string verify_format = "csv";
  auto* verify = app.add_subcommand("verify", "Audit a bound against the numerical optimizer");
  verify->add_option("--criterion", criterion, "Criterion to audit")->required();
  verify->add_option("--trials", trials, "Number of random trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Base seed");
  verify->add_option("--tolerance", tolerance, "Allowed undershoot for tight bounds")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--restarts", restarts, "Optimizer restarts per trial")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", output, "Write to this file instead of stdout");
  verify->add_option("--format", verify_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string family, range, scan_format = "csv";
  double from = 0.0, to = 1.0, strength = 1.0;
  int steps = 101;
  auto* scan = app.add_subcommand("scan", "Sweep a parameter and tabulate bounds");
  scan->add_option("--family", family, "strength-sweep, werner-sweep or angle-sweep")
      ->required()
      ->check(CLI::IsMember({"strength-sweep", "werner-sweep", "angle-sweep"}));
  auto* from_opt = scan->add_option("--from", from, "Start of the range");
  auto* to_opt = scan->add_option("--to", to, "End of the range");
  auto* range_opt = scan->add_option("--range", range, "Range as FROM:TO");
  range_opt->excludes(from_opt)->excludes(to_opt);
  scan->add_option("--steps", steps, "Number of grid points");
  scan->add_option("--strength", strength, "Common strength for werner and angle sweeps");
  scan->add_option("--input", input, "Scenario JSON whose state is swept (default singlet)");
  scan->add_option("--output", output, "Write to this file instead of stdout");
  scan->add_option("--format", scan_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* compat = app.add_subcommand("compat", "Joint measurability of two observables");
  compat->add_option("--input", input, "JSON file with two observables ('-' for stdin)")
      ->required();
  compat->add_option("--output", output, "Write to this file instead of stdout");
  compat->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const char* crit = criterion.empty() ? nullptr : criterion.c_str();
    char* text = nullptr;
    if (*bound) {
      require_json(format);
      const std::string doc = read_input(input);
      const bb_status st = bb_cmd_bound(doc.c_str(), crit, &text);
      return finish(st, text, output);
    }
    if (*achieve) {
      require_json(format);
      const std::string doc = read_input(input);
      const bb_status st = bb_cmd_achieve(doc.c_str(), crit, biased ? 1 : 0, &text);
      return finish(st, text, output);
    }
    if (*compat) {
      require_json(format);
      const std::string doc = read_input(input);
      const bb_status st = bb_cmd_compat(doc.c_str(), &text);
      return finish(st, text, output);
    }
    if (*verify) {
      const bb_status st = bb_cmd_verify(crit, trials, seed, tolerance, restarts,
                                         verify_format.c_str(), &text);
      return finish(st, text, output);
    }
    if (*scan) {
      if (!range.empty()) {
        const auto colon = range.find(':');
        if (colon == std::string::npos) throw UsageError("--range expects FROM:TO");
        try {
          from = std::stod(range.substr(0, colon));
          to = std::stod(range.substr(colon + 1));
        } catch (const std::exception&) {
          throw UsageError("--range expects two numbers as FROM:TO");
        }
      }
      nlohmann::json params{{"family", family}, {"from", from}, {"to", to},
                            {"steps", steps}, {"strength", strength}};
      if (!input.empty()) {
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(read_input(input));
        } catch (const nlohmann::json::parse_error& e) {
          throw UsageError(std::string("malformed JSON in --input: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("state"))
          throw UsageError("--input must contain a \"state\" object");
        params["state"] = doc["state"];
      }
      const std::string p = params.dump();
      const bb_status st = bb_cmd_scan(p.c_str(), scan_format.c_str(), &text);
      return finish(st, text, output);
    }
  } catch (const UsageError& e) {
    std::cerr << "bellbound: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
