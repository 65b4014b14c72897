#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "bz/errors.hpp"
#include "bz/harness/catalog.hpp"
#include "bz/harness/config.hpp"
#include "bz/harness/runner.hpp"
#include "bz/harness/scenario.hpp"
#include "bz/parallel.hpp"
#include "bz/scale.hpp"
#include "bz/specs.hpp"
#include "bz/sweep_report.hpp"
#include "bz/weights.hpp"

namespace {

constexpr int kUsageError = 3;

std::vector<bz::harness::Scenario> load(const std::string& source) {
  using namespace bz::harness;
  if (!source.empty() && source[0] == '@') {
    const CatalogEntry* e = catalog_find(source.substr(1));
    if (!e) throw bz::ParseError("no catalog entry named '" + source.substr(1) + "'", 0);
    return build_scenarios(parse_config(e->config));
  }
  return build_scenarios(load_config(source));
}

void print_ratios(const std::vector<double>& ratios) {
  std::cout << "ratios=";
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    std::cout << (i ? "," : "") << bz::format_number(ratios[i]);
  }
  std::cout << '\n';
}

int weight_check(const std::string& spec, int depth) {
  const bz::RadialWeight w = bz::parse_weight(spec);
  const auto hat = bz::check_dhat(w, depth);
  const auto check = bz::check_dcheck(w, depth);
  std::cout << "weight=" << w.description() << '\n'
            << "tail_exponent=" << bz::format_number(bz::fit_tail_exponent(w, depth)) << '\n'
            << "dhat=" << bz::to_string(hat.verdict) << '\n'
            << "dhat_C=" << bz::format_number(hat.constant_C) << '\n'
            << "dhat_diagnostic=" << hat.diagnostic << '\n';
  print_ratios(hat.ratios);
  std::cout << "dcheck=" << bz::to_string(check.verdict) << '\n'
            << "dcheck_C=" << bz::format_number(check.constant_C) << '\n'
            << "dcheck_K=" << bz::format_number(check.constant_K) << '\n'
            << "dcheck_diagnostic=" << check.diagnostic << '\n';
  return 0;
}

int scale_check(const std::string& spec) {
  const bz::ScaleFunction psi = bz::parse_scale(spec);
  const auto dbl = bz::check_square_doubling(psi);
  const auto env = bz::growth_envelope(psi);
  std::cout << "scale=" << psi.description() << '\n'
            << "square_doubling=" << (dbl.member ? "member" : "non-member") << '\n'
            << "square_doubling_band=" << bz::format_number(dbl.band.min) << ','
            << bz::format_number(dbl.band.max) << '\n';
  try {
    const auto mono = bz::check_essential_monotone(psi);
    std::cout << "direction=" << bz::to_string(mono.direction) << '\n'
              << "monotone_constant=" << bz::format_number(mono.constant) << '\n';
  } catch (const bz::NotInClassError& e) {
    std::cout << "direction=none\nmonotone_diagnostic=" << e.what() << '\n';
  }
  std::cout << "envelope=" << bz::format_number(env.c1) << ',' << bz::format_number(env.c2) << ','
            << bz::format_number(env.C1) << ',' << bz::format_number(env.C2) << '\n';
  return 0;
}

int run(const std::string& source, const std::string& out) {
  const auto scenarios = load(source);
  bz::harness::RunOptions opts;
  opts.output_dir = out;
  const auto result = bz::harness::run_all(scenarios, opts);
  for (const auto& r : result.results) std::cout << r.summary.line() << '\n';
  return result.exit_code;
}

int sweep(const std::string& source, const std::string& name, const std::string& out) {
  const auto scenarios = load(source);
  const bz::harness::Scenario* pick = nullptr;
  for (const auto& s : scenarios) {
    if (name.empty() || s.name == name) {
      pick = &s;
      break;
    }
  }
  if (!pick) throw bz::ParseError(name.empty() ? "config has no scenarios" : "no scenario '" + name + "'", 0);
  if (!out.empty()) {
    bz::harness::RunOptions opts;
    opts.output_dir = out;
    const auto result = bz::harness::run_all({*pick}, opts);
    std::cout << result.results.front().summary.line() << '\n';
    return result.exit_code;
  }
  const auto res = bz::harness::run_scenario(*pick);
  if (res.report) std::cout << res.report->csv();
  std::cerr << res.summary.line() << '\n';
  return bz::harness::exit_code_of({res});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for weighted Bergman-Zygmund spaces"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: BZCHECK_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string source;
  std::string out;
  std::string name;
  std::string filter;
  std::string spec;
  bool show = false;
  int depth = 16;

  auto* run_cmd = app.add_subcommand("run", "Run every scenario of a config file or @catalog-entry");
  run_cmd->add_option("config", source, "Config path or @name")->required();
  run_cmd->add_option("-o,--out", out, "Output directory for CSV and summary files");

  auto* cat_cmd = app.add_subcommand("catalog", "List the built-in scenario catalog");
  cat_cmd->add_option("filter", filter, "Substring filter on entry names");
  cat_cmd->add_flag("--show", show, "Print the config text of the matching entries");

  auto* wc_cmd = app.add_subcommand("weight-check", "Doubling class checks of a weight spec");
  wc_cmd->add_option("spec", spec, "Weight spec, e.g. \"power alpha=1\"")->required();
  wc_cmd->add_option("--depth", depth, "Dyadic grid depth")->check(CLI::Range(2, 900));

  auto* sc_cmd = app.add_subcommand("scale-check", "Class L checks of a scale spec");
  sc_cmd->add_option("spec", spec, "Scale spec, e.g. \"logpow beta=1\"")->required();

  auto* sw_cmd = app.add_subcommand("sweep", "Run a single scenario; CSV to stdout without --out");
  sw_cmd->add_option("config", source, "Config path or @name")->required();
  sw_cmd->add_option("-s,--scenario", name, "Scenario name (default: the first)");
  sw_cmd->add_option("-o,--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (threads > 0) bz::set_thread_budget(threads);

  try {
    if (*run_cmd) return run(source, out);
    if (*sw_cmd) return sweep(source, name, out);
    if (*wc_cmd) return weight_check(spec, depth);
    if (*sc_cmd) return scale_check(spec);
    if (*cat_cmd) {
      for (const auto* e : bz::harness::catalog_filter(filter)) {
        if (show) {
          std::cout << "# @" << e->name << '\n' << e->config << '\n';
        } else {
          std::cout << e->name << "  " << e->summary << '\n';
        }
      }
      return 0;
    }
  } catch (const bz::ParseError& e) {
    std::cerr << "bzcheck: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "bzcheck: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
