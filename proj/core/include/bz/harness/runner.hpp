#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bz/harness/scenario.hpp"
#include "bz/sweep_report.hpp"

namespace bz::harness {

enum class Status { none, pass, fail, inconclusive, error };

const char* to_string(Status s);

struct VerdictSummary {
  std::string scenario;
  ScenarioKind kind = ScenarioKind::carleson;
  std::vector<std::string> theorems;
  // Key numbers in emission order.
  std::vector<std::pair<std::string, std::string>> values;
  // none unless the scenario declares an expectation or fails with an error.
  Status status = Status::none;
  std::vector<std::string> failed;
  std::string error;

  // One line of space separated key=value pairs.
  std::string line() const;
};

struct ScenarioResult {
  VerdictSummary summary;
  std::optional<SweepReport> report;
};

ScenarioResult run_scenario(const Scenario& scenario);

struct RunOptions {
  // Overrides the config's output directory; nothing is written when both are empty.
  std::filesystem::path output_dir;
};

struct RunResult {
  std::vector<ScenarioResult> results;
  std::filesystem::path output_dir;
  int exit_code = 0;
};

// Runs every scenario (in parallel), writes <out>/<name>.csv for sweeps and
// <out>/summary.txt. Exit code 0 all pass, 1 any failure or error, 2 any
// inconclusive expectation.
RunResult run_all(const std::vector<Scenario>& scenarios, const RunOptions& options = {});

int exit_code_of(const std::vector<ScenarioResult>& results);

}  // namespace bz::harness
