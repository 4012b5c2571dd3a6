#include "gcirc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "gcirc/limit_laws.hpp"
#include "gcirc/selftest.hpp"
#include "gcirc/spectra.hpp"

namespace gcirc {

std::string_view to_string(Check check) {
  switch (check) {
    case Check::limit_distance: return "limit_distance";
    case Check::covariance: return "covariance";
    case Check::norm_curve: return "norm_curve";
    case Check::lindeberg: return "lindeberg";
    case Check::selftest: return "selftest";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::limit_distance, Check::covariance, Check::norm_curve, Check::lindeberg, Check::selftest})
    if (to_string(c) == name) return c;
  throw std::invalid_argument("unknown check '" + std::string(name) +
                              "' (expected limit_distance, covariance, norm_curve, lindeberg or selftest)");
}

std::vector<Check> parse_checks(std::string_view list) {
  std::vector<Check> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto token = list.substr(0, comma);
    if (!token.empty()) {
      const Check c = parse_check(token);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

void ExperimentPlan::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (checks.empty()) throw std::invalid_argument("at least one check must be requested (--checks)");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  (void)parse_group_spec(group);
  ensemble.validate();
}

namespace {

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("bad number for " + std::string(key) + ": '" + v + "'");
  return x;
}

std::uint64_t to_u64(std::string_view key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || v.front() == '-')
    throw std::invalid_argument("bad integer for " + std::string(key) + ": '" + v + "'");
  return x;
}

bool to_bool(std::string_view key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("bad boolean for " + std::string(key) + ": '" + v + "'");
}

}  // namespace

void apply_plan_setting(ExperimentPlan& plan, std::string_view key_in, std::string_view value_in) {
  const std::string key = trimmed(key_in);
  const std::string v = trimmed(value_in);
  Thresholds& t = plan.thresholds;
  if (key == "group") plan.group = v;
  else if (key == "base") plan.ensemble.base = parse_base_distribution(v);
  else if (key == "alpha") plan.ensemble.alpha = to_double(key, v);
  else if (key == "beta") plan.ensemble.beta = to_double(key, v);
  else if (key == "hermitian") plan.ensemble.hermitian = to_bool(key, v);
  else if (key == "seed") plan.ensemble.seed = to_u64(key, v);
  else if (key == "trials") plan.trials = to_u64(key, v);
  else if (key == "checks") plan.checks = parse_checks(v);
  else if (key == "out") plan.out_path = v;
  else if (key == "csv") plan.csv_path = v;
  else if (key == "jobs") plan.jobs = to_u64(key, v);
  else if (key == "pooled-ks-max") t.pooled_ks_max = to_double(key, v);
  else if (key == "per-trial-ks-median-max") t.per_trial_ks_median_max = to_double(key, v);
  else if (key == "corr-max") t.corr_max = to_double(key, v);
  else if (key == "covariance-tol") t.covariance_tol = to_double(key, v);
  else if (key == "norm-ratio-min") t.norm_ratio_min = to_double(key, v);
  else if (key == "norm-ratio-max") t.norm_ratio_max = to_double(key, v);
  else if (key == "lindeberg-epsilon") t.lindeberg_epsilon = to_double(key, v);
  else if (key == "lindeberg-max") t.lindeberg_max = to_double(key, v);
  else if (key == "lindeberg-pass-fraction") t.lindeberg_pass_fraction = to_double(key, v);
  else throw std::invalid_argument("unknown plan key '" + key + "'");
}

ExperimentPlan read_plan(std::istream& in, ExperimentPlan plan) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trimmed(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": expected key = value");
    apply_plan_setting(plan, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
  return plan;
}

const std::vector<std::string>& report_fields() {
  static const std::vector<std::string> fields{
      "group",  "group_size", "ensemble", "trials",       "pooled_ks_re", "pooled_ks_im",
      "per_trial_ks_median",  "corr_re_im", "max_abs_imag", "p2",         "limit_params",
      "checks", "passed",     "timestamp"};
  return fields;
}

namespace {

struct TrialOutput {
  Spectrum spectrum;
  double lindeberg = 0.0;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<TrialOutput> run_trials(const GroupSpec& g, const ExperimentPlan& plan, bool want_lindeberg) {
  std::vector<TrialOutput> out(plan.trials);
  const FourierPlan<double> fourier(g);
  const std::size_t jobs = std::min(plan.jobs, plan.trials);
  std::vector<std::exception_ptr> errors(jobs);

  auto worker = [&](std::size_t id) {
    try {
      for (std::size_t t = id; t < plan.trials; t += jobs) {
        const EntryTable table = sample_entries(g, plan.ensemble, t);
        out[t].spectrum = eigenvalues(table, fourier);
        if (want_lindeberg) out[t].lindeberg = lindeberg_statistic(table, plan.thresholds.lindeberg_epsilon);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t id = 0; id < jobs; ++id) threads.emplace_back(worker, id);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

nlohmann::json law_json(const LimitLaw& law) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : law.components)
    components.push_back({{"weight", c.weight}, {"var_re", c.var_re}, {"var_im", c.var_im}});
  return {{"kind", law.kind == LawKind::real_gaussian_mixture ? "real_gaussian_mixture" : "complex_gaussian_mixture"},
          {"components", components},
          {"description", law.describe()}};
}

nlohmann::json covariance_check(const GroupSpec& g, const ExperimentPlan& plan, const std::vector<TrialOutput>& trials,
                                double p2v) {
  const double tol = plan.thresholds.covariance_tol;
  if (trials.size() < 1000)
    return {{"passed", false}, {"reason", "covariance check needs at least 1000 trials"}, {"tolerance", tol}};

  std::vector<Spectrum> spectra;
  spectra.reserve(trials.size());
  for (const auto& t : trials) spectra.push_back(t.spectrum);

  const auto involutions = involution_subgroup(g);
  const bool all_pairs = g.size() <= 64;
  double worst = 0.0;
  std::size_t pairs = 0;
  std::vector<std::size_t> worst_pair{0, 0};
  for (std::size_t t1 = 0; t1 < g.size(); ++t1) {
    for (std::size_t t2 = all_pairs ? 0 : t1; t2 < (all_pairs ? g.size() : t1 + 1); ++t2) {
      const Character c1{t1}, c2{t2};
      const CharacterRelation rel{c1 == c2, c1 == conj(g, c2), restrictions_agree(g, c1, c2, involutions)};
      const Eigen::Matrix4d predicted = predicted_pair_covariance(rel, is_real_character(g, c1),
                                                                  is_real_character(g, c2), plan.ensemble, p2v);
      const auto empirical = empirical_eigen_covariance(spectra, c1, c2);
      const double dev = (empirical.moments - predicted).cwiseAbs().maxCoeff();
      if (dev > worst) {
        worst = dev;
        worst_pair = {t1, t2};
      }
      ++pairs;
    }
  }
  return {{"passed", worst <= tol}, {"max_deviation", worst}, {"worst_pair", worst_pair},
          {"pairs_checked", pairs},  {"tolerance", tol}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const GroupSpec g = parse_group_spec(plan.group);
  const Rational p = p2(g);
  const LimitLaw law = limit_for(plan.ensemble, p);
  const auto has = [&](Check c) { return std::find(plan.checks.begin(), plan.checks.end(), c) != plan.checks.end(); };

  const auto trials = run_trials(g, plan, has(Check::lindeberg));
  const double n = static_cast<double>(g.size());

  // Distances to the limit law: pooled over all trials and per trial.
  std::vector<std::complex<double>> pooled;
  pooled.reserve(trials.size() * g.size());
  double max_imag = 0.0;
  std::vector<double> per_trial;
  const bool real_law = law.kind == LawKind::real_gaussian_mixture;
  for (const auto& t : trials) {
    const auto& ev = t.spectrum.eigenvalues;
    pooled.insert(pooled.end(), ev.data(), ev.data() + ev.size());
    max_imag = std::max(max_imag, max_abs_imag(t.spectrum));
    std::span<const std::complex<double>> one(ev.data(), static_cast<std::size_t>(ev.size()));
    if (real_law) {
      std::vector<double> re(one.size());
      std::transform(one.begin(), one.end(), re.begin(), [](auto z) { return z.real(); });
      per_trial.push_back(ks_distance_real(re, law));
    } else {
      const auto d = distance_complex(one, law);
      per_trial.push_back(std::max(d.ks_re, d.ks_im));
    }
  }

  nlohmann::json report;
  report["group"] = g.to_string();
  report["group_size"] = g.size();
  report["ensemble"] = {{"base", std::string(to_string(plan.ensemble.base))},
                        {"alpha", plan.ensemble.alpha},
                        {"beta", plan.ensemble.beta},
                        {"hermitian", plan.ensemble.hermitian},
                        {"seed", plan.ensemble.seed}};
  report["trials"] = plan.trials;
  report["p2"] = {{"num", p.num}, {"den", p.den}, {"value", p.value()}};
  report["limit_params"] = law_json(law);
  report["max_abs_imag"] = max_imag;

  double pooled_ks = 0.0;
  if (real_law) {
    std::vector<double> re(pooled.size());
    std::transform(pooled.begin(), pooled.end(), re.begin(), [](auto z) { return z.real(); });
    pooled_ks = ks_distance_real(re, law);
    report["pooled_ks_re"] = pooled_ks;
    report["pooled_ks_im"] = nullptr;
    report["corr_re_im"] = nullptr;
  } else {
    const auto d = distance_complex(pooled, law);
    pooled_ks = std::max(d.ks_re, d.ks_im);
    report["pooled_ks_re"] = d.ks_re;
    report["pooled_ks_im"] = d.ks_im;
    report["corr_re_im"] = d.abs_corr_re_im;
  }
  const double per_trial_median = median(per_trial);
  report["per_trial_ks_median"] = per_trial_median;

  const Thresholds& th = plan.thresholds;
  nlohmann::json checks = nlohmann::json::object();
  bool passed = true;

  if (has(Check::limit_distance)) {
    const double median_max = th.per_trial_ks_median_max >= 0.0 ? th.per_trial_ks_median_max : 1.63 / std::sqrt(n);
    bool ok = pooled_ks < th.pooled_ks_max && per_trial_median < median_max;
    nlohmann::json c{{"pooled_ks_max", th.pooled_ks_max}, {"per_trial_ks_median_max", median_max}};
    if (real_law) {
      const double imag_max = 1e-9 * std::sqrt(n);
      ok = ok && max_imag < imag_max;
      c["max_abs_imag_max"] = imag_max;
    } else {
      ok = ok && report["corr_re_im"].get<double>() < th.corr_max;
      c["corr_max"] = th.corr_max;
    }
    c["passed"] = ok;
    checks["limit_distance"] = c;
    passed = passed && ok;
  }

  if (has(Check::covariance)) {
    auto c = covariance_check(g, plan, trials, p.value());
    passed = passed && c["passed"].get<bool>();
    checks["covariance"] = c;
  }

  if (has(Check::norm_curve)) {
    nlohmann::json c;
    if (g.size() < 2) {
      c = {{"passed", false}, {"reason", "norm ratio undefined for the trivial group"}};
    } else {
      double sum = 0.0;
      for (const auto& t : trials) sum += spectral_norm(t.spectrum) / std::sqrt(std::log(n));
      const double mean = sum / static_cast<double>(trials.size());
      const bool ok = mean >= th.norm_ratio_min && mean <= th.norm_ratio_max;
      c = {{"passed", ok}, {"mean_ratio", mean}, {"min", th.norm_ratio_min}, {"max", th.norm_ratio_max}};
    }
    passed = passed && c["passed"].get<bool>();
    checks["norm_curve"] = c;
  }

  if (has(Check::lindeberg)) {
    std::size_t below = 0;
    double worst = 0.0;
    for (const auto& t : trials) {
      below += t.lindeberg < th.lindeberg_max ? 1 : 0;
      worst = std::max(worst, t.lindeberg);
    }
    const double fraction = static_cast<double>(below) / static_cast<double>(trials.size());
    const bool ok = fraction >= th.lindeberg_pass_fraction;
    checks["lindeberg"] = {{"passed", ok},
                           {"epsilon", th.lindeberg_epsilon},
                           {"statistic_max", th.lindeberg_max},
                           {"fraction_below", fraction},
                           {"required_fraction", th.lindeberg_pass_fraction},
                           {"worst_statistic", worst}};
    passed = passed && ok;
  }

  if (has(Check::selftest)) {
    const auto results = run_selftest();
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& r : results)
      if (!r.passed) failed.push_back(r.name);
    checks["selftest"] = {{"passed", failed.empty()}, {"checks_run", results.size()}, {"failed", failed}};
    passed = passed && failed.empty();
  }

  report["checks"] = checks;
  report["passed"] = passed;
  report["timestamp"] = utc_timestamp();

  if (!plan.csv_path.empty()) {
    std::ofstream csv(plan.csv_path);
    if (!csv) throw std::runtime_error("cannot open " + plan.csv_path + " for writing");
    csv.precision(17);
    std::vector<int> real_flags(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) real_flags[c] = is_real_character(g, Character{c}) ? 1 : 0;
    csv << "trial,character_index,re_lambda,im_lambda,is_real_character\n";
    for (std::size_t t = 0; t < trials.size(); ++t) {
      const auto& ev = trials[t].spectrum.eigenvalues;
      for (Eigen::Index c = 0; c < ev.size(); ++c)
        csv << t << ',' << c << ',' << ev[c].real() << ',' << ev[c].imag() << ',' << real_flags[static_cast<std::size_t>(c)]
            << '\n';
    }
    if (!csv) throw std::runtime_error("write failed for " + plan.csv_path);
  }
  if (!plan.out_path.empty()) {
    std::ofstream out(plan.out_path);
    if (!out) throw std::runtime_error("cannot open " + plan.out_path + " for writing");
    out << report.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + plan.out_path);
  }
  return {std::move(report), passed};
}

Histogram emit_histogram(std::span<const double> samples, std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
  if (samples.empty()) throw std::invalid_argument("histogram of an empty sample");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  Histogram h{*mn, *mx, std::vector<std::size_t>(bins, 0)};
  const double width = h.hi - h.lo;
  for (double x : samples) {
    std::size_t b = 0;
    if (width > 0.0) b = std::min(bins - 1, static_cast<std::size_t>((x - h.lo) / width * static_cast<double>(bins)));
    ++h.counts[b];
  }
  return h;
}

void write_histogram_csv(std::ostream& os, const Histogram& h, std::string_view part, bool header) {
  if (header) os << "part,bin,lo,hi,count\n";
  const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    os << part << ',' << b << ',' << h.lo + width * static_cast<double>(b) << ','
       << h.lo + width * static_cast<double>(b + 1) << ',' << h.counts[b] << '\n';
}

}  // namespace gcirc
