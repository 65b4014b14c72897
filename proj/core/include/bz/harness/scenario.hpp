#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bz/harness/config.hpp"
#include "bz/specs.hpp"

namespace bz::harness {

enum class ScenarioKind { carleson, tg, weight_check, scale_check, test_function };

const char* to_string(ScenarioKind k);

// expect.<name> = <value> [tol = <t>]
struct Expectation {
  std::string name;
  std::string value;
  std::optional<double> tol;
  int line = 0;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::carleson;
  int line = 0;

  std::string weight;
  std::string target_weight;
  std::string scale;
  std::string target_scale;
  std::vector<std::string> measure;
  std::string symbol;
  std::vector<FunctionSpec> functions;
  int random_polys = 0;
  int random_degree = 8;

  double p = 2.0;
  double q = 2.0;
  int max_level = 14;
  double disc_radius = 0.7;
  std::optional<double> gamma;
  int angular_cap = 4096;
  bool test_functions = true;
  int depth = 16;
  std::uint64_t seed = 1;

  std::vector<Expectation> expectations;
  std::filesystem::path base_dir;
  // From the global "output" key; empty when not given.
  std::filesystem::path output;
};

// Validates keys, grammars and the parameter constraints; throws ParseError
// with the offending line. Global keys (seed, J, angular_cap) act as defaults.
std::vector<Scenario> build_scenarios(const Config& config);

}  // namespace bz::harness
