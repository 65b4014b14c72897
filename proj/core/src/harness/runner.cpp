#include "bz/harness/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "bz/carleson.hpp"
#include "bz/errors.hpp"
#include "bz/operators.hpp"
#include "bz/parallel.hpp"

namespace bz::harness {

const char* to_string(Status s) {
  switch (s) {
    case Status::none:
      return "none";
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
    case Status::error:
      return "error";
  }
  return "unknown";
}

namespace {

enum class Outcome { pass, fail, inconclusive };

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

Outcome compare_flag(const Expectation& x, bool decided, bool actual) {
  if (!decided) return Outcome::inconclusive;
  return (x.value == "true") == actual ? Outcome::pass : Outcome::fail;
}

Outcome compare_abs(const Expectation& x, double actual) {
  const double v = parse_number(x.value);
  const double tol = x.tol.value_or(0.05);
  return std::isfinite(actual) && std::abs(actual - v) <= tol ? Outcome::pass : Outcome::fail;
}

Outcome compare_rel(const Expectation& x, double actual) {
  const double v = parse_number(x.value);
  const double tol = x.tol.value_or(0.05);
  return std::isfinite(actual) && std::abs(actual - v) <= tol * std::abs(v) ? Outcome::pass
                                                                           : Outcome::fail;
}

Outcome compare_at_most(const Expectation& x, double actual) {
  return std::isfinite(actual) && actual <= parse_number(x.value) ? Outcome::pass : Outcome::fail;
}

Outcome compare_verdict(const Expectation& x, Verdict v) {
  if (v == Verdict::inconclusive) return Outcome::inconclusive;
  return x.value == to_string(v) ? Outcome::pass : Outcome::fail;
}

double spread(const std::vector<double>& v) {
  double lo = HUGE_VAL;
  double hi = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || !(x > 0.0)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi > 0.0 ? hi / lo : std::nan("");
}

void put(VerdictSummary& s, const std::string& key, double v) {
  s.values.emplace_back(key, format_number(v));
}

void put(VerdictSummary& s, const std::string& key, const std::string& v) {
  s.values.emplace_back(key, v);
}

void put_sweep(VerdictSummary& s, const SweepReport& r) {
  put(s, "verdict_bounded", to_string(r.verdict_bounded));
  put(s, "verdict_vanishing", to_string(r.verdict_vanishing));
  put(s, "sup", r.global_sup_estimate);
  put(s, "disc_sup", r.disc_sup_estimate);
  put(s, "slope", r.boundary_exponent);
  put(s, "log_growth", r.log_growth_exponent);
  put(s, "errors", static_cast<double>(r.error_count));
}

Outcome sweep_expectation(const Expectation& x, const SweepReport& r, double lb_band) {
  if (x.name == "bounded") {
    return compare_flag(x, r.verdict_bounded != BoundedVerdict::inconclusive,
                        r.verdict_bounded == BoundedVerdict::bounded);
  }
  if (x.name == "vanishing") {
    return compare_flag(x, r.verdict_vanishing != VanishingVerdict::inconclusive,
                        r.verdict_vanishing == VanishingVerdict::vanishing);
  }
  if (x.name == "slope") return compare_abs(x, r.boundary_exponent);
  if (x.name == "sup") return compare_rel(x, r.global_sup_estimate);
  if (x.name == "lb_band") return compare_at_most(x, lb_band);
  throw ParameterError("unhandled expectation " + x.name);
}

DiscMeasure build_measure(const Scenario& s) {
  DiscMeasure mu;
  for (const auto& c : s.measure) add_measure_component(mu, c, s.base_dir);
  return mu;
}

std::vector<AnalyticFunction> build_corpus(const Scenario& s, const CarlesonContext& ctx) {
  std::vector<AnalyticFunction> corpus;
  for (const auto& f : s.functions) corpus.push_back(f.resolve(ctx));
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < s.random_polys; ++i) {
    std::vector<Complex> c(static_cast<std::size_t>(s.random_degree) + 1);
    for (auto& v : c) {
      const double re = unit(rng);
      const double im = unit(rng);
      v = Complex(re, im);
    }
    corpus.push_back(AnalyticFunction::polynomial(std::move(c)));
  }
  return corpus;
}

template <class Eval>
void apply_expectations(const Scenario& s, VerdictSummary& sum, Eval&& eval) {
  if (s.expectations.empty()) return;
  bool any_fail = false;
  bool any_open = false;
  for (const auto& x : s.expectations) {
    const Outcome o = eval(x);
    if (o == Outcome::fail) {
      any_fail = true;
      sum.failed.push_back("expect." + x.name);
    } else if (o == Outcome::inconclusive) {
      any_open = true;
      sum.failed.push_back("expect." + x.name + "?");
    }
  }
  sum.status = any_fail ? Status::fail : any_open ? Status::inconclusive : Status::pass;
}

void run_carleson(const Scenario& s, ScenarioResult& res) {
  auto& sum = res.summary;
  const RadialWeight omega = parse_weight(s.weight, s.base_dir);
  const ScaleFunction psi = parse_scale(s.scale, s.base_dir);
  const ScaleFunction phi = s.target_scale.empty() ? psi : parse_scale(s.target_scale, s.base_dir);
  const auto ctx = CarlesonContext::make(omega, psi, phi, build_measure(s), s.p, s.q, s.disc_radius);
  SweepOptions opts;
  opts.angular_cap = s.angular_cap;
  opts.test_functions = s.test_functions;
  opts.gamma = s.gamma;
  res.report = sweep(ctx, s.max_level, opts);
  const SweepReport& r = *res.report;
  put_sweep(sum, r);
  double lb_band = std::nan("");
  if (s.test_functions) {
    std::vector<double> lb;
    for (const auto& m : r.annulus_maxima) {
      for (const auto& e : r.entries) {
        if (e.level == m.level && std::isfinite(e.embed_lb_ratio)) {
          lb.push_back(e.embed_lb_ratio);
          break;
        }
      }
    }
    lb_band = spread(lb);
    put(sum, "gamma", s.gamma ? *s.gamma : sweep_gamma(ctx));
    put(sum, "lb_band", lb_band);
  }
  const auto corpus = build_corpus(s, ctx);
  if (!corpus.empty()) put(sum, "embedding_norm", embedding_norm_estimate(ctx, corpus));
  apply_expectations(s, sum, [&](const Expectation& x) { return sweep_expectation(x, r, lb_band); });
}

void run_tg(const Scenario& s, ScenarioResult& res) {
  auto& sum = res.summary;
  const RadialWeight omega = parse_weight(s.weight, s.base_dir);
  const RadialWeight nu = s.target_weight.empty() ? omega : parse_weight(s.target_weight, s.base_dir);
  const ScaleFunction psi = parse_scale(s.scale, s.base_dir);
  const ScaleFunction phi = s.target_scale.empty() ? psi : parse_scale(s.target_scale, s.base_dir);
  const auto ctx =
      OperatorContext::make(omega, nu, psi, phi, s.p, s.q, parse_symbol(s.symbol, s.max_level));
  TgSweepOptions opts;
  opts.angular_cap = s.angular_cap;
  opts.disc_radius = s.disc_radius;
  res.report = tg_sweep(ctx, s.max_level, opts);
  put_sweep(sum, *res.report);
  put(sum, "g", ctx.g.description());
  apply_expectations(s, sum,
                     [&](const Expectation& x) { return sweep_expectation(x, *res.report, 0.0); });
}

void run_weight_check(const Scenario& s, ScenarioResult& res) {
  auto& sum = res.summary;
  const RadialWeight omega = parse_weight(s.weight, s.base_dir);
  const auto hat = check_dhat(omega, s.depth);
  const auto check = check_dcheck(omega, s.depth);
  put(sum, "weight", quoted(omega.description()));
  put(sum, "dhat", to_string(hat.verdict));
  put(sum, "dhat_C", hat.constant_C);
  put(sum, "dcheck", to_string(check.verdict));
  put(sum, "dcheck_C", check.constant_C);
  put(sum, "dcheck_K", check.constant_K);
  put(sum, "tail_exponent", fit_tail_exponent(omega, s.depth));
  apply_expectations(s, sum, [&](const Expectation& x) {
    return compare_verdict(x, x.name == "dhat" ? hat.verdict : check.verdict);
  });
}

void run_scale_check(const Scenario& s, ScenarioResult& res) {
  auto& sum = res.summary;
  const ScaleFunction psi = parse_scale(s.scale, s.base_dir);
  Verdict verdict = Verdict::member;
  const auto doubling = check_square_doubling(psi);
  put(sum, "scale", quoted(psi.description()));
  put(sum, "doubling_min", doubling.band.min);
  put(sum, "doubling_max", doubling.band.max);
  if (!doubling.member) verdict = Verdict::non_member;
  try {
    const auto mono = check_essential_monotone(psi);
    put(sum, "direction", to_string(mono.direction));
    put(sum, "monotone_constant", mono.constant);
  } catch (const NotInClassError&) {
    put(sum, "direction", "none");
    verdict = Verdict::non_member;
  }
  const auto env = growth_envelope(psi);
  put(sum, "envelope_c2", env.c2);
  put(sum, "envelope_C2", env.C2);
  put(sum, "class", to_string(verdict));
  apply_expectations(s, sum, [&](const Expectation& x) { return compare_verdict(x, verdict); });
}

void run_test_function(const Scenario& s, ScenarioResult& res) {
  auto& sum = res.summary;
  const RadialWeight omega = parse_weight(s.weight, s.base_dir);
  const ScaleFunction psi = parse_scale(s.scale, s.base_dir);
  const auto ctx = CarlesonContext::make(omega, psi, psi, DiscMeasure::area(omega), s.p, s.p,
                                         s.disc_radius);
  const double gamma = s.gamma ? *s.gamma : default_gamma(omega, psi);
  std::vector<double> norms(static_cast<std::size_t>(s.max_level) + 1);
  parallel_for(norms.size(), [&](std::size_t j) {
    norms[j] = test_function_norm_power(ctx, Complex(level_radius(static_cast<int>(j))), gamma);
  });
  const double band = spread(norms);
  put(sum, "gamma", gamma);
  put(sum, "norm_min", *std::min_element(norms.begin(), norms.end()));
  put(sum, "norm_max", *std::max_element(norms.begin(), norms.end()));
  put(sum, "band", band);
  apply_expectations(s, sum, [&](const Expectation& x) { return compare_at_most(x, band); });
}

std::vector<std::string> theorems_of(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::carleson:
      return {"embedding-bounded", "embedding-compact"};
    case ScenarioKind::tg:
      return {"tg-bounded", "tg-compact"};
    case ScenarioKind::weight_check:
    case ScenarioKind::scale_check:
      return {"class-checks"};
    case ScenarioKind::test_function:
      return {"lemma-checks"};
  }
  return {};
}

}  // namespace

std::string VerdictSummary::line() const {
  std::string out = "scenario=" + scenario + " kind=" + to_string(kind) + " theorem=" + join(theorems);
  for (const auto& [k, v] : values) out += " " + k + "=" + v;
  if (status != Status::none) out += std::string(" status=") + to_string(status);
  if (!failed.empty()) out += " failed=" + join(failed);
  if (!error.empty()) out += " error=" + quoted(error);
  return out;
}

ScenarioResult run_scenario(const Scenario& s) {
  ScenarioResult res;
  res.summary.scenario = s.name;
  res.summary.kind = s.kind;
  res.summary.theorems = theorems_of(s.kind);
  try {
    switch (s.kind) {
      case ScenarioKind::carleson:
        run_carleson(s, res);
        break;
      case ScenarioKind::tg:
        run_tg(s, res);
        break;
      case ScenarioKind::weight_check:
        run_weight_check(s, res);
        break;
      case ScenarioKind::scale_check:
        run_scale_check(s, res);
        break;
      case ScenarioKind::test_function:
        run_test_function(s, res);
        break;
    }
  } catch (const std::exception& e) {
    res.summary.status = Status::error;
    res.summary.error = e.what();
    res.summary.failed.clear();
    res.report.reset();
  }
  return res;
}

int exit_code_of(const std::vector<ScenarioResult>& results) {
  bool open = false;
  for (const auto& r : results) {
    if (r.summary.status == Status::fail || r.summary.status == Status::error) return 1;
    if (r.summary.status == Status::inconclusive) open = true;
  }
  return open ? 2 : 0;
}

RunResult run_all(const std::vector<Scenario>& scenarios, const RunOptions& options) {
  RunResult out;
  out.results.resize(scenarios.size());
  parallel_for(scenarios.size(), [&](std::size_t i) { out.results[i] = run_scenario(scenarios[i]); });
  out.exit_code = exit_code_of(out.results);
  out.output_dir = options.output_dir;
  if (out.output_dir.empty() && !scenarios.empty()) out.output_dir = scenarios.front().output;
  if (out.output_dir.empty()) return out;

  std::filesystem::create_directories(out.output_dir);
  for (const auto& r : out.results) {
    if (!r.report) continue;
    std::ofstream csv(out.output_dir / (r.summary.scenario + ".csv"), std::ios::binary);
    csv << r.report->csv();
    if (!csv) throw Error("cannot write CSV for " + r.summary.scenario);
  }
  std::ofstream summary(out.output_dir / "summary.txt", std::ios::binary);
  for (const auto& r : out.results) summary << r.summary.line() << '\n';
  if (!summary) throw Error("cannot write summary file");
  return out;
}

}  // namespace bz::harness
