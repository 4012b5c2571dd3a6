#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcirc/experiment.hpp"

using namespace gcirc;

namespace {

std::string tmp_path(const std::string& name) { return std::string(GCIRC_TEST_TMPDIR) + "/" + name; }

nlohmann::json without_timestamp(nlohmann::json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("plan parsing") {
  std::istringstream in(
      "# comment line\n"
      "group = 4,2^9\n"
      "base = rademacher   # trailing comment\n"
      "alpha = 1\n"
      "hermitian = true\n"
      "trials = 7\n"
      "checks = limit_distance,lindeberg\n"
      "pooled-ks-max = 0.1\n");
  const auto plan = read_plan(in);
  CHECK(plan.group == "4,2^9");
  CHECK(plan.ensemble.base == BaseDistribution::rademacher);
  CHECK(plan.ensemble.alpha == 1.0);
  CHECK(plan.ensemble.hermitian);
  CHECK(plan.trials == 7);
  CHECK(plan.checks == std::vector<Check>{Check::limit_distance, Check::lindeberg});
  CHECK(plan.thresholds.pooled_ks_max == 0.1);
  CHECK_NOTHROW(plan.validate());

  std::istringstream bad_line("group 12\n");
  CHECK_THROWS_AS(read_plan(bad_line), std::invalid_argument);
  std::istringstream bad_key("colour = red\n");
  CHECK_THROWS_AS(read_plan(bad_key), std::invalid_argument);

  ExperimentPlan p;
  CHECK_THROWS_AS(apply_plan_setting(p, "trials", "-3"), std::invalid_argument);
  CHECK_THROWS_AS(apply_plan_setting(p, "alpha", "0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(apply_plan_setting(p, "hermitian", "maybe"), std::invalid_argument);
  CHECK_THROWS_AS(parse_checks("limit_distance,spectrum"), std::invalid_argument);
  CHECK(parse_checks("covariance,,covariance") == std::vector<Check>{Check::covariance});
}

TEST_CASE("plan validation") {
  ExperimentPlan p;
  p.trials = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(p), std::invalid_argument);
  p.trials = 3;
  p.checks.clear();
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.checks = {Check::limit_distance};
  p.group = "0,3";
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.group = "12";
  p.ensemble.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.ensemble.alpha = 1.0;
  p.ensemble.hermitian = true;
  p.group = "4,2";  // p2 = 1/2 is allowed
  CHECK_NOTHROW(run_experiment(p));
}

TEST_CASE("reports do not depend on the number of jobs") {
  ExperimentPlan p;
  p.group = "8,3,2";
  p.ensemble.base = BaseDistribution::uniform;
  p.ensemble.alpha = 0.4;
  p.ensemble.seed = 11;
  p.trials = 9;
  p.checks = {Check::limit_distance, Check::norm_curve, Check::lindeberg};
  const auto one = run_experiment(p);
  p.jobs = 3;
  const auto three = run_experiment(p);
  p.jobs = 16;
  const auto many = run_experiment(p);
  CHECK(without_timestamp(one.report) == without_timestamp(three.report));
  CHECK(without_timestamp(one.report) == without_timestamp(many.report));
  CHECK(one.passed == three.passed);

  p.ensemble.seed = 12;
  CHECK(without_timestamp(run_experiment(p).report) != without_timestamp(one.report));
}

TEST_CASE("report schema") {
  ExperimentPlan p;
  p.group = "3,2^6";
  p.ensemble.base = BaseDistribution::rademacher;
  p.ensemble.alpha = 1.0;
  p.ensemble.hermitian = true;
  p.trials = 4;
  p.out_path = tmp_path("report.json");
  p.csv_path = tmp_path("eigs.csv");
  const auto r = run_experiment(p);
  for (const auto& key : report_fields()) CHECK_MESSAGE(r.report.contains(key), key);
  CHECK(r.report["group_size"] == 192);
  CHECK(r.report["p2"]["num"] == 1);
  CHECK(r.report["p2"]["den"] == 3);
  CHECK(r.report["pooled_ks_im"].is_null());
  CHECK(r.report["checks"].contains("limit_distance"));

  std::ifstream in(p.out_path);
  const auto file = nlohmann::json::parse(in);
  CHECK(file == r.report);

  std::ifstream csv(p.csv_path);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "trial,character_index,re_lambda,im_lambda,is_real_character");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 4 * 192);
}

TEST_CASE("covariance and selftest checks") {
  ExperimentPlan p;
  p.group = "4,2";
  p.ensemble.base = BaseDistribution::rademacher;
  p.ensemble.alpha = 1.0;
  p.ensemble.hermitian = true;
  p.checks = {Check::covariance};
  p.trials = 999;
  const auto few = run_experiment(p);
  CHECK_FALSE(few.passed);
  CHECK_FALSE(few.report["checks"]["covariance"]["passed"].get<bool>());

  p.trials = 20000;
  p.ensemble.seed = 3;
  const auto enough = run_experiment(p);
  CHECK(enough.report["checks"]["covariance"]["passed"].get<bool>());
  CHECK(enough.report["checks"]["covariance"]["max_deviation"].get<double>() < 0.05);

  ExperimentPlan s;
  s.group = "2^6";
  s.checks = {Check::selftest};
  s.trials = 1;
  const auto st = run_experiment(s);
  CHECK(st.report["checks"]["selftest"]["passed"].get<bool>());
  CHECK(st.report["checks"]["selftest"]["failed"].empty());
}

TEST_CASE("histogram examples") {
  const std::vector<double> constant(10, 3.5);
  const auto hc = emit_histogram(constant, 4);
  CHECK(hc.counts[0] == 10);
  CHECK(hc.counts[1] + hc.counts[2] + hc.counts[3] == 0);

  const auto h2 = emit_histogram(std::vector<double>{-1.0, 1.0}, 2);
  CHECK(h2.counts == std::vector<std::size_t>{1, 1});
  CHECK(h2.lo == -1.0);
  CHECK(h2.hi == 1.0);

  CHECK_THROWS_AS(emit_histogram(std::vector<double>{1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(emit_histogram(std::vector<double>{}, 4), std::invalid_argument);

  // Symmetric sample: first and last bins agree up to sampling noise.
  std::vector<double> xs;
  for (std::size_t i = 0; i < 20000; ++i) {
    CounterRng rng(1, 2, i);
    const auto [a, b] = rng.normal_pair();
    xs.push_back(a);
    xs.push_back(-a);
    (void)b;
  }
  const auto hs = emit_histogram(xs, 10);
  std::size_t total = 0;
  for (auto c : hs.counts) total += c;
  CHECK(total == xs.size());
  // Mirrored pairs can only split across a bin edge through rounding.
  auto close = [](std::size_t a, std::size_t b) { return (a > b ? a - b : b - a) <= 3; };
  CHECK(close(hs.counts.front(), hs.counts.back()));
  CHECK(close(hs.counts[4], hs.counts[5]));

  std::ostringstream os;
  write_histogram_csv(os, h2, "re");
  CHECK(os.str() == "part,bin,lo,hi,count\nre,0,-1,0,1\nre,1,0,1,1\n");
}
