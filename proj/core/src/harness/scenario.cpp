#include "bz/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "bz/errors.hpp"

namespace bz::harness {

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::carleson:
      return "carleson";
    case ScenarioKind::tg:
      return "tg";
    case ScenarioKind::weight_check:
      return "weight-check";
    case ScenarioKind::scale_check:
      return "scale-check";
    case ScenarioKind::test_function:
      return "test-function";
  }
  return "unknown";
}

namespace {

ScenarioKind parse_kind(const std::string& v, int line) {
  if (v == "carleson") return ScenarioKind::carleson;
  if (v == "tg") return ScenarioKind::tg;
  if (v == "weight-check") return ScenarioKind::weight_check;
  if (v == "scale-check") return ScenarioKind::scale_check;
  if (v == "test-function") return ScenarioKind::test_function;
  throw ParseError("unknown scenario kind '" + v + "'", line);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("expected true or false, got '" + v + "'", line);
}

const std::set<std::string>& allowed_expectations(ScenarioKind k) {
  static const std::map<ScenarioKind, std::set<std::string>> table = {
      {ScenarioKind::carleson, {"bounded", "vanishing", "slope", "sup", "lb_band"}},
      {ScenarioKind::tg, {"bounded", "vanishing", "slope", "sup"}},
      {ScenarioKind::weight_check, {"dhat", "dcheck"}},
      {ScenarioKind::scale_check, {"class"}},
      {ScenarioKind::test_function, {"band"}},
  };
  return table.at(k);
}

Expectation parse_expectation(const ConfigEntry& e) {
  Expectation x;
  x.name = e.key.substr(7);
  x.line = e.line;
  std::string value = e.value;
  const auto tol = value.find(" tol");
  if (tol != std::string::npos) {
    std::string rest = value.substr(tol + 4);
    value = value.substr(0, tol);
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'tol = <value>'", e.line);
    rest = rest.substr(eq + 1);
    rest.erase(0, rest.find_first_not_of(' '));
    try {
      x.tol = parse_number(rest);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), e.line);
    }
  }
  while (!value.empty() && value.back() == ' ') value.pop_back();
  x.value = value;
  return x;
}

template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& err) {
    if (err.line() > 0) throw;
    throw ParseError(err.what(), line);
  } catch (const Error& err) {
    throw ParseError(err.what(), line);
  }
}

void check_expectation(const Scenario& s, const Expectation& x) {
  if (!allowed_expectations(s.kind).count(x.name)) {
    throw ParseError("expectation '" + x.name + "' does not apply to " + to_string(s.kind) +
                         " scenarios",
                     x.line);
  }
  if (x.name == "bounded" || x.name == "vanishing") {
    parse_bool(x.value, x.line);
  } else if (x.name == "dhat" || x.name == "dcheck" || x.name == "class") {
    if (x.value != "member" && x.value != "non-member") {
      throw ParseError("expected member or non-member", x.line);
    }
  } else {
    at_line(x.line, [&] { return parse_number(x.value); });
  }
}

}  // namespace

std::vector<Scenario> build_scenarios(const Config& config) {
  Scenario defaults;
  defaults.base_dir = config.base_dir;
  for (const auto& g : config.globals) {
    at_line(g.line, [&] {
      if (g.key == "seed") {
        defaults.seed = static_cast<std::uint64_t>(parse_integer(g.value));
      } else if (g.key == "J") {
        defaults.max_level = static_cast<int>(parse_integer(g.value));
      } else if (g.key == "angular_cap") {
        defaults.angular_cap = static_cast<int>(parse_integer(g.value));
      } else if (g.key == "output") {
        defaults.output = g.value;
      } else {
        throw ParseError("unknown global key '" + g.key + "'", g.line);
      }
      return 0;
    });
  }

  std::vector<Scenario> out;
  for (const auto& sec : config.scenarios) {
    Scenario s = defaults;
    s.name = sec.name;
    s.line = sec.line;
    std::optional<ScenarioKind> kind;
    std::set<std::string> seen;
    for (const auto& e : sec.entries) {
      const bool repeatable = e.key == "measure.component" || e.key == "function";
      if (!repeatable && !seen.insert(e.key).second) {
        throw ParseError("duplicate key '" + e.key + "'", e.line);
      }
      at_line(e.line, [&] {
        if (e.key == "kind") {
          kind = parse_kind(e.value, e.line);
        } else if (e.key == "weight") {
          parse_weight(e.value, config.base_dir);
          s.weight = e.value;
        } else if (e.key == "target_weight") {
          parse_weight(e.value, config.base_dir);
          s.target_weight = e.value;
        } else if (e.key == "scale") {
          parse_scale(e.value, config.base_dir);
          s.scale = e.value;
        } else if (e.key == "target_scale") {
          parse_scale(e.value, config.base_dir);
          s.target_scale = e.value;
        } else if (e.key == "measure.component") {
          DiscMeasure probe;
          add_measure_component(probe, e.value, config.base_dir);
          s.measure.push_back(e.value);
        } else if (e.key == "g") {
          parse_symbol(e.value, 8);
          s.symbol = e.value;
        } else if (e.key == "function") {
          s.functions.push_back(parse_function(e.value));
        } else if (e.key == "random_polys") {
          s.random_polys = static_cast<int>(parse_integer(e.value));
        } else if (e.key == "random_degree") {
          s.random_degree = static_cast<int>(parse_integer(e.value));
        } else if (e.key == "p") {
          s.p = parse_number(e.value);
        } else if (e.key == "q") {
          s.q = parse_number(e.value);
        } else if (e.key == "J") {
          s.max_level = static_cast<int>(parse_integer(e.value));
        } else if (e.key == "disc_radius") {
          s.disc_radius = parse_number(e.value);
        } else if (e.key == "gamma") {
          s.gamma = parse_number(e.value);
        } else if (e.key == "angular_cap") {
          s.angular_cap = static_cast<int>(parse_integer(e.value));
        } else if (e.key == "test_functions") {
          s.test_functions = parse_bool(e.value, e.line);
        } else if (e.key == "depth") {
          s.depth = static_cast<int>(parse_integer(e.value));
        } else if (e.key == "seed") {
          s.seed = static_cast<std::uint64_t>(parse_integer(e.value));
        } else if (e.key.rfind("expect.", 0) == 0) {
          s.expectations.push_back(parse_expectation(e));
        } else {
          throw ParseError("unknown key '" + e.key + "'", e.line);
        }
        return 0;
      });
    }

    s.kind = kind ? *kind : (s.symbol.empty() ? ScenarioKind::carleson : ScenarioKind::tg);
    const bool has_p = seen.count("p") > 0;
    const bool has_q = seen.count("q") > 0;
    auto need = [&](bool ok, const std::string& what) {
      if (!ok) throw ParseError("scenario '" + s.name + "' is missing " + what, sec.line);
    };
    switch (s.kind) {
      case ScenarioKind::carleson:
        need(!s.weight.empty(), "weight");
        need(!s.scale.empty(), "scale");
        need(!s.measure.empty(), "measure.component");
        need(has_p, "p");
        need(has_q, "q");
        break;
      case ScenarioKind::tg:
        need(!s.weight.empty(), "weight");
        need(!s.scale.empty(), "scale");
        need(!s.symbol.empty(), "g");
        need(has_p, "p");
        need(has_q, "q");
        break;
      case ScenarioKind::weight_check:
        need(!s.weight.empty(), "weight");
        break;
      case ScenarioKind::scale_check:
        need(!s.scale.empty(), "scale");
        break;
      case ScenarioKind::test_function:
        need(!s.weight.empty(), "weight");
        need(!s.scale.empty(), "scale");
        need(has_p, "p");
        break;
    }
    if (!(s.p > 0.0) || !std::isfinite(s.p)) throw ParseError("p must be positive", sec.line);
    if (s.kind != ScenarioKind::test_function && (!(s.q >= s.p) || !std::isfinite(s.q))) {
      throw ParseError("scenario '" + s.name + "' violates p <= q", sec.line);
    }
    const bool sweeps = s.kind == ScenarioKind::carleson || s.kind == ScenarioKind::tg;
    if (sweeps && (s.max_level < 8 || s.max_level > 40)) {
      throw ParseError("J must lie in [8, 40]", sec.line);
    }
    if (s.kind == ScenarioKind::test_function && (s.max_level < 1 || s.max_level > 40)) {
      throw ParseError("J must lie in [1, 40]", sec.line);
    }
    if (!(s.disc_radius > 0.0 && s.disc_radius < 1.0)) {
      throw ParseError("disc_radius must lie in (0, 1)", sec.line);
    }
    if (s.angular_cap < 1) throw ParseError("angular_cap must be positive", sec.line);
    if (s.depth < 2 || s.depth > 900) throw ParseError("depth must lie in [2, 900]", sec.line);
    if (s.random_polys < 0 || s.random_degree < 0) {
      throw ParseError("random corpus sizes must be non-negative", sec.line);
    }
    if (s.gamma && !(*s.gamma > 0.0)) throw ParseError("gamma must be positive", sec.line);
    for (const auto& x : s.expectations) check_expectation(s, x);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace bz::harness
