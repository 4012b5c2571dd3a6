#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gcirc/ensembles.hpp"

namespace gcirc {

enum class Check { limit_distance, covariance, norm_curve, lindeberg, selftest };

std::string_view to_string(Check check);
Check parse_check(std::string_view name);
/// Comma-separated list, e.g. "limit_distance,covariance".
std::vector<Check> parse_checks(std::string_view list);

/// Pass/fail thresholds. A negative value selects the documented automatic default.
struct Thresholds {
  double pooled_ks_max = 0.02;
  /// Default 1.63 / sqrt(N), the 99% KS null quantile for one spectrum.
  double per_trial_ks_median_max = -1.0;
  double corr_max = 0.05;
  double covariance_tol = 0.05;
  double norm_ratio_min = 0.8;
  double norm_ratio_max = 1.3;
  double lindeberg_epsilon = 1.0;
  double lindeberg_max = 1e-6;
  double lindeberg_pass_fraction = 0.95;
};

struct ExperimentPlan {
  std::string group = "2^12";
  EnsembleConfig ensemble;
  std::size_t trials = 20;
  std::vector<Check> checks{Check::limit_distance};
  std::string out_path;   // JSON report; empty for none
  std::string csv_path;   // per-trial eigenvalues; empty for none
  std::size_t jobs = 1;
  Thresholds thresholds;

  /// Throws std::invalid_argument with an actionable message.
  void validate() const;
};

/// Sets one plan field from its key (the CLI flag names without dashes).
void apply_plan_setting(ExperimentPlan& plan, std::string_view key, std::string_view value);
/// Reads "key = value" lines; '#' starts a comment.
ExperimentPlan read_plan(std::istream& in, ExperimentPlan base = {});

struct ExperimentResult {
  nlohmann::json report;
  bool passed = false;
};

/// Samples the trials (concurrently up to plan.jobs), evaluates the checks
/// against limit_for(ensemble, p2(group)) and writes the requested outputs.
/// The report is independent of plan.jobs; only its "timestamp" key varies.
ExperimentResult run_experiment(const ExperimentPlan& plan);

/// Report keys every experiment report carries.
const std::vector<std::string>& report_fields();

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the maximum lands in the last bin.
/// Throws for bins < 2 or an empty sample.
Histogram emit_histogram(std::span<const double> samples, std::size_t bins);

/// Rows part,bin,lo,hi,count.
void write_histogram_csv(std::ostream& os, const Histogram& h, std::string_view part, bool header = true);

}  // namespace gcirc
