#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "latgen/tools/experiments.hpp"
#include "latgen/tools/formats.hpp"
#include "test_support.hpp"

using namespace latgen::tools;

TEST(LoglogSlope, ExactPowerLaw) {
  const std::vector<double> x{64, 128, 256, 512};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.8));
  EXPECT_NEAR(loglog_slope(x, y), -1.8, 1e-12);
  EXPECT_THROW(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_TRUE(std::isnan(loglog_slope(std::vector<double>{1, 2}, std::vector<double>{1, -1})));
}

TEST(FitProportional, Deviation) {
  const std::vector<double> work{1, 2, 4};
  const std::vector<double> t{2, 4, 8};
  const auto fit = fit_proportional(work, t);
  EXPECT_NEAR(fit.constant, 2.0, 1e-12);
  EXPECT_NEAR(fit.max_deviation, 1.0, 1e-12);
  const std::vector<double> noisy{1, 4, 8};
  EXPECT_GT(fit_proportional(work, noisy).max_deviation, 1.2);
}

TEST(Experiments, UnknownId) {
  latgen::testutil::TempDir dir;
  EXPECT_THROW(run_experiment("nope", dir.path()), UsageError);
  EXPECT_EQ(experiment_ids().size(), 10u);
}

TEST(Experiments, OracleSuitePassesAndWritesReport) {
  latgen::testutil::TempDir dir;
  const auto report = run_experiment("oracle-suite", dir.path());
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checks.size(), 10u);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.value << " " << c.limit;
  const auto json = nlohmann::json::parse(latgen::testutil::slurp(dir.file("oracle-suite.report.json")));
  EXPECT_EQ(json["id"], "oracle-suite");
  EXPECT_EQ(json["passed"], true);
  EXPECT_EQ(json["checks"].size(), 10u);
  const auto csv = latgen::testutil::slurp(dir.file("oracle-suite.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "check,value,limit,relation,passed");
}

TEST(Experiments, ReportJsonShape) {
  ExperimentReport r;
  r.id = "demo";
  r.checks.push_back({"a", 1.0, 2.0, "<=", "derived", true});
  r.checks.push_back({"b", 3.0, 2.0, "<=", "published", false});
  EXPECT_FALSE(r.passed());
  std::ostringstream out;
  write_report_json(out, r);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["checks"][1]["name"], "b");
  EXPECT_EQ(j["checks"][1]["passed"], false);
}
