#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bz/errors.hpp"
#include "bz/harness/catalog.hpp"
#include "bz/harness/config.hpp"
#include "bz/harness/runner.hpp"
#include "bz/harness/scenario.hpp"

namespace {

using namespace bz;
using namespace bz::harness;

const std::filesystem::path data_dir = BZ_TEST_DATA_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("bz_harness_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Config, SectionsAndGlobals) {
  const auto c = parse_config("# comment\nseed = 7\n\n[scenario.a]\np = 2\n[scenario.b]\nq=3\n");
  ASSERT_EQ(c.globals.size(), 1u);
  EXPECT_EQ(c.globals[0].key, "seed");
  ASSERT_EQ(c.scenarios.size(), 2u);
  EXPECT_EQ(c.scenarios[0].name, "a");
  EXPECT_EQ(c.scenarios[0].line, 4);
  EXPECT_EQ(c.scenarios[1].entries[0].value, "3");
  EXPECT_EQ(c.scenarios[1].entries[0].line, 7);
}

TEST(Config, Errors) {
  auto line_of = [](std::string_view text) {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("[scenario.a]\n[scenario.a]\n"), 2);
  EXPECT_EQ(line_of("[scenario.a]\njust text\n"), 2);
  EXPECT_EQ(line_of("[scenario.a]\np =\n"), 2);
  EXPECT_EQ(line_of("[section]\n"), 1);
  EXPECT_EQ(line_of("[scenario.a b]\n"), 1);
}

TEST(Scenarios, MissingPIsAParseErrorAtTheSection) {
  try {
    build_scenarios(load_config(data_dir / "missing_p.conf"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing p"), std::string::npos);
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Scenarios, ConstraintsAreEnforced) {
  const std::string base = "[scenario.x]\nweight = power alpha=0\nscale = const\n"
                           "measure.component = area weight=power alpha=0\n";
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 1\n")), ParseError);
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 2\nJ = 7\n")), ParseError);
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 2\nexpect.dhat = member\n")), ParseError);
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 2\ncolour = red\n")), ParseError);
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 2\np = 3\n")), ParseError);
  EXPECT_THROW(build_scenarios(parse_config(base + "p = 2\nq = 2\nweight = bogus\n")), ParseError);
  const auto ok = build_scenarios(parse_config("J = 9\nseed = 5\n" + base + "p = 1\nq = 2\nexpect.slope = 1 tol = 0.1\n"));
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_EQ(ok[0].max_level, 9);
  EXPECT_EQ(ok[0].seed, 5u);
  EXPECT_EQ(ok[0].kind, ScenarioKind::carleson);
  ASSERT_EQ(ok[0].expectations.size(), 1u);
  EXPECT_EQ(ok[0].expectations[0].tol.value(), 0.1);
}

TEST(Scenarios, KindInference) {
  const auto s = build_scenarios(parse_config(
      "[scenario.t]\nweight = power alpha=1\nscale = const\ng = logsym\np = 2\nq = 2\n"
      "[scenario.w]\nkind = weight-check\nweight = loginvsq\n"));
  EXPECT_EQ(s[0].kind, ScenarioKind::tg);
  EXPECT_EQ(s[1].kind, ScenarioKind::weight_check);
}

TEST(Runner, IdentityScenarioPasses) {
  const auto res = run_scenario(build_scenarios(parse_config(catalog_find("identity")->config)).front());
  EXPECT_EQ(res.summary.status, Status::pass);
  const std::string line = res.summary.line();
  EXPECT_NE(line.find("scenario=identity kind=carleson theorem=embedding-bounded,embedding-compact"),
            std::string::npos);
  EXPECT_NE(line.find("verdict_bounded=bounded"), std::string::npos);
  EXPECT_NE(line.find("status=pass"), std::string::npos);
}

TEST(Runner, StatusOnlyWithExpectations) {
  const auto s = build_scenarios(parse_config(
      "[scenario.plain]\nweight = power alpha=0\nscale = const\n"
      "measure.component = area weight=power alpha=1\np = 2\nq = 2\nJ = 8\ntest_functions = false\n"));
  const auto res = run_scenario(s.front());
  EXPECT_EQ(res.summary.status, Status::none);
  EXPECT_EQ(res.summary.line().find("status="), std::string::npos);
}

TEST(Runner, NumericErrorsBecomeScenarioErrors) {
  // Parses, but the tabulated scale fails the class checks at run time.
  const auto s = build_scenarios(parse_config(
      "[scenario.bad]\nweight = power alpha=0\nscale = table path=exp_scale.tab\n"
      "measure.component = area weight=power alpha=1\np = 2\nq = 2\nJ = 8\nexpect.bounded = true\n"
      "[scenario.good]\nweight = power alpha=0\nscale = const\n"
      "measure.component = area weight=power alpha=1\np = 2\nq = 2\nJ = 8\ntest_functions = false\n"
      "expect.bounded = true\n",
      data_dir));
  const auto all = run_all(s);
  ASSERT_EQ(all.results.size(), 2u);
  EXPECT_EQ(all.results[0].summary.status, Status::error);
  EXPECT_FALSE(all.results[0].summary.error.empty());
  EXPECT_EQ(all.results[1].summary.status, Status::pass);
  EXPECT_EQ(all.exit_code, 1);
}

TEST(Runner, ExitCodes) {
  auto with = [](Status st) {
    ScenarioResult r;
    r.summary.status = st;
    return r;
  };
  EXPECT_EQ(exit_code_of({with(Status::pass), with(Status::none)}), 0);
  EXPECT_EQ(exit_code_of({with(Status::pass), with(Status::inconclusive)}), 2);
  EXPECT_EQ(exit_code_of({with(Status::inconclusive), with(Status::fail)}), 1);
  EXPECT_EQ(exit_code_of({with(Status::error)}), 1);
}

TEST(Runner, OutputsAreDeterministicAndIsolated) {
  const std::string text = slurp(data_dir / "mixed.conf");
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  RunOptions oa;
  oa.output_dir = a;
  RunOptions ob;
  ob.output_dir = b;
  const auto ra = run_all(build_scenarios(parse_config(text)), oa);
  const auto rb = run_all(build_scenarios(parse_config(text)), ob);
  EXPECT_EQ(ra.exit_code, 1);
  for (const char* f : {"good.csv", "wrong.csv", "summary.txt"}) {
    ASSERT_TRUE(std::filesystem::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  // The passing scenario alone writes the same CSV as in the mixed run.
  const auto c = scratch("det_c");
  RunOptions oc;
  oc.output_dir = c;
  auto only_good = build_scenarios(parse_config(text));
  only_good.pop_back();
  EXPECT_EQ(run_all(only_good, oc).exit_code, 0);
  EXPECT_EQ(slurp(c / "good.csv"), slurp(a / "good.csv"));
  const std::string summary = slurp(a / "summary.txt");
  EXPECT_NE(summary.find("scenario=good"), std::string::npos);
  EXPECT_NE(summary.find("scenario=wrong"), std::string::npos);
  EXPECT_NE(summary.find("status=fail failed=expect.bounded"), std::string::npos);
  for (const auto& d : {a, b, c}) std::filesystem::remove_all(d);
}

TEST(Runner, WeightAndScaleChecks) {
  const auto s = build_scenarios(parse_config(catalog_find("weight-class-zoo")->config));
  for (const auto& sc : s) {
    const auto r = run_scenario(sc);
    EXPECT_EQ(r.summary.status, Status::pass) << r.summary.line();
    EXPECT_FALSE(r.report);
  }
}

TEST(Runner, TestFunctionScenario) {
  const auto s = build_scenarios(parse_config(
      "[scenario.fa]\nkind = test-function\nweight = power alpha=1\nscale = logpow beta=1\n"
      "p = 2\nJ = 12\nexpect.band = 10\n"));
  const auto r = run_scenario(s.front());
  EXPECT_EQ(r.summary.status, Status::pass) << r.summary.line();
  EXPECT_NE(r.summary.line().find("theorem=lemma-checks"), std::string::npos);
}

TEST(Catalog, NamesAndFilter) {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"identity", "power-family", "zygmund-boundary", "atom", "sector",
                                             "bloch-tg", "lacunary-tg", "weight-class-zoo"}));
  const auto tg = catalog_filter("tg");
  ASSERT_EQ(tg.size(), 2u);
  EXPECT_EQ(tg[0]->name, "bloch-tg");
  EXPECT_EQ(tg[1]->name, "lacunary-tg");
  EXPECT_TRUE(catalog_filter("no-such-entry").empty());
  EXPECT_EQ(catalog_filter("").size(), catalog().size());
  EXPECT_EQ(catalog_find("nope"), nullptr);
  for (const auto& e : catalog()) EXPECT_NO_THROW(build_scenarios(parse_config(e.config))) << e.name;
  EXPECT_EQ(build_scenarios(parse_config(catalog_find("power-family")->config)).size(), 24u);
}

}  // namespace
