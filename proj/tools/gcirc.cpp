// Command-line driver: selftest, group-info, experiment, histogram.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gcirc/experiment.hpp"
#include "gcirc/group.hpp"
#include "gcirc/selftest.hpp"

namespace {

int cmd_selftest() {
  const auto results = gcirc::run_selftest();
  for (const auto& r : results)
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
  const bool ok = gcirc::all_passed(results);
  std::cout << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  return ok ? 0 : 1;
}

int cmd_group_info(const std::string& spec) {
  const auto g = gcirc::parse_group_spec(spec);
  const auto p = gcirc::p2(g);
  std::cout << "group: " << g.to_string() << '\n'
            << "N: " << g.size() << '\n'
            << "p2: " << p.num << '/' << p.den << '\n'
            << "involution_count: " << gcirc::involution_count(g) << '\n'
            << "real_character_count: " << gcirc::real_character_count(g) << '\n';
  return 0;
}

int cmd_histogram(const std::string& path, std::size_t bins) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + " is empty");

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error(path + " has no '" + name + "' column");
  };
  const std::size_t re_col = column("re_lambda");
  const std::size_t im_col = column("im_lambda");

  std::vector<double> re, im;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(re_col, im_col)) throw std::runtime_error("short row in " + path + ": " + line);
    re.push_back(std::stod(cells[re_col]));
    im.push_back(std::stod(cells[im_col]));
  }

  gcirc::write_histogram_csv(std::cout, gcirc::emit_histogram(re, bins), "re");
  const bool complex_spectrum = std::any_of(im.begin(), im.end(), [](double v) { return v != 0.0; });
  if (complex_spectrum) gcirc::write_histogram_csv(std::cout, gcirc::emit_histogram(im, bins), "im", false);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random G-circulant matrices over finite abelian groups"};
  app.require_subcommand(1);

  app.add_subcommand("selftest", "Run exact-count and transform-oracle checks");

  auto* info = app.add_subcommand("group-info", "Print N, p2, involution and real-character counts");
  std::string info_spec;
  info->add_option("spec", info_spec, "Group spec, e.g. 4,2,5 or 3,2^10")->required();

  auto* exp = app.add_subcommand("experiment", "Sample spectra and check them against the limit law");
  std::string config_path;
  exp->add_option("--config", config_path, "Plan file with key = value lines (flags override it)");
  std::string group, base, checks, out, csv;
  double alpha = 0.0, beta = 1.0;
  bool hermitian = false;
  std::size_t trials = 0, jobs = 1;
  std::uint64_t seed = 0;
  auto* o_group = exp->add_option("--group", group, "Group spec");
  auto* o_base = exp->add_option("--base", base, "gaussian | rademacher | uniform");
  auto* o_alpha = exp->add_option("--alpha", alpha, "E Y^2, in [0, 1]");
  auto* o_beta = exp->add_option("--beta", beta, "Involution-entry variance (Hermitian only)");
  auto* o_herm = exp->add_flag("--hermitian", hermitian, "Impose Y_{a^-1} = conj(Y_a)");
  auto* o_trials = exp->add_option("--trials", trials, "Number of independent matrices");
  auto* o_seed = exp->add_option("--seed", seed, "Master seed");
  auto* o_checks = exp->add_option("--checks", checks, "limit_distance,covariance,norm_curve,lindeberg,selftest");
  auto* o_out = exp->add_option("--out", out, "JSON report path");
  auto* o_csv = exp->add_option("--csv", csv, "Per-trial eigenvalue CSV path");
  auto* o_jobs = exp->add_option("--jobs", jobs, "Concurrent trials")->check(CLI::PositiveNumber);
  std::vector<std::string> overrides;
  exp->add_option("--set", overrides, "Extra plan key=value (thresholds), repeatable");

  auto* hist = app.add_subcommand("histogram", "Histogram of eigenvalues from a CSV");
  std::string hist_in;
  std::size_t bins = 20;
  hist->add_option("--in", hist_in, "CSV with re_lambda and im_lambda columns")->required();
  hist->add_option("--bins", bins, "Number of equal-width bins (>= 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("selftest")) return cmd_selftest();
    if (app.got_subcommand(info)) return cmd_group_info(info_spec);
    if (app.got_subcommand(hist)) return cmd_histogram(hist_in, bins);

    gcirc::ExperimentPlan plan;
    plan.trials = 0;  // must come from the file or --trials
    plan.checks.clear();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open plan file " + config_path);
      plan = gcirc::read_plan(in, plan);
    }
    auto set = [&](CLI::Option* opt, const char* key, const std::string& value) {
      if (opt->count() > 0) gcirc::apply_plan_setting(plan, key, value);
    };
    set(o_group, "group", group);
    set(o_base, "base", base);
    set(o_alpha, "alpha", o_alpha->as<std::string>());
    set(o_beta, "beta", o_beta->as<std::string>());
    if (o_herm->count() > 0) plan.ensemble.hermitian = hermitian;
    set(o_trials, "trials", o_trials->as<std::string>());
    set(o_seed, "seed", o_seed->as<std::string>());
    set(o_checks, "checks", checks);
    set(o_out, "out", out);
    set(o_csv, "csv", csv);
    set(o_jobs, "jobs", o_jobs->as<std::string>());
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      gcirc::apply_plan_setting(plan, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (plan.checks.empty()) plan.checks = {gcirc::Check::limit_distance};

    const auto result = gcirc::run_experiment(plan);
    if (plan.out_path.empty()) std::cout << result.report.dump(2) << '\n';
    std::cerr << (result.passed ? "all checks passed" : "one or more checks FAILED") << '\n';
    return result.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
