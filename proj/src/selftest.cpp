#include "gcirc/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gcirc/ensembles.hpp"

namespace gcirc {

std::vector<GroupSpec> selftest_groups() {
  return {make_group({12}), make_group({8, 3}), make_group({2, 2, 2, 2, 2, 2}), make_group({4, 2, 5}),
          make_group({2, 2, 2, 2, 3})};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::vector<std::size_t> restriction_class_sizes(const GroupSpec& g, const std::vector<Element>& subgroup) {
  std::map<std::vector<std::uint64_t>, std::size_t> classes;
  std::vector<std::uint64_t> key(subgroup.size());
  for (std::size_t t = 0; t < g.size(); ++t) {
    for (std::size_t i = 0; i < subgroup.size(); ++i) key[i] = phase_numerator(g, Character{t}, subgroup[i]);
    ++classes[key];
  }
  std::vector<std::size_t> sizes;
  for (const auto& [k, count] : classes) sizes.push_back(count);
  return sizes;
}

namespace {

ComplexVector<double> random_function(const GroupSpec& g, std::uint64_t seed) {
  ComplexVector<double> v(static_cast<Eigen::Index>(g.size()));
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    CounterRng rng(seed, 0x5e1f, static_cast<std::uint64_t>(a));
    const auto [x, y] = rng.normal_pair();
    v[a] = {x, y};
  }
  return v;
}

CheckResult involution_check(const GroupSpec& g) {
  std::size_t doubled_zero = 0;
  for (std::size_t a = 0; a < g.size(); ++a) doubled_zero += mul(g, Element{a}, Element{a}) == identity(g) ? 1 : 0;
  const std::size_t real_chars = real_character_count(g);
  std::ostringstream os;
  os << "involutions=" << involution_count(g) << " enumerated=" << doubled_zero << " real_characters=" << real_chars;
  return {"involutions_equal_real_characters[" + g.to_string() + "]",
          doubled_zero == involution_count(g) && real_chars == doubled_zero, os.str()};
}

CheckResult restriction_check(const GroupSpec& g) {
  const auto subgroup = involution_subgroup(g);
  const auto sizes = restriction_class_sizes(g, subgroup);
  const std::size_t expected = g.size() / subgroup.size();
  const bool ok = sizes.size() == subgroup.size() &&
                  std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == expected; });
  std::ostringstream os;
  os << "|A|=" << subgroup.size() << " classes=" << sizes.size() << " expected_multiplicity=" << expected;
  return {"restriction_multiplicity[" + g.to_string() + "]", ok, os.str()};
}

CheckResult orthogonality_check(const GroupSpec& g, double tol) {
  const std::size_t n = g.size();
  double worst = 0.0;
  for (std::size_t t1 = 0; t1 < n; ++t1) {
    for (std::size_t t2 = 0; t2 < n; ++t2) {
      std::complex<double> s{};
      for (std::size_t a = 0; a < n; ++a)
        s += char_value(g, Character{t1}, Element{a}) * std::conj(char_value(g, Character{t2}, Element{a}));
      const double target = t1 == t2 ? static_cast<double>(n) : 0.0;
      worst = std::max(worst, std::abs(s - target) / static_cast<double>(n));
    }
  }
  std::ostringstream os;
  os << "max deviation/N=" << worst;
  return {"character_orthogonality[" + g.to_string() + "]", worst < tol, os.str()};
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  std::vector<CheckResult> results;
  for (const GroupSpec& g : selftest_groups()) {
    results.push_back(involution_check(g));
    results.push_back(restriction_check(g));
    results.push_back(orthogonality_check(g, options.tolerance));

    FourierPlan<double> plan(g);
    if (options.tamper_plan) options.tamper_plan(g, plan);

    double oracle_err = 0.0, parseval_err = 0.0, roundtrip_err = 0.0;
    for (std::size_t k = 0; k < options.random_functions; ++k) {
      const GroupFunction<double> f{g, random_function(g, k)};
      const auto fast = fft_fast(f, plan);
      const auto slow = dft_naive(f);
      const double scale = std::max(1.0, f.values.norm());
      oracle_err = std::max(oracle_err, (fast.values - slow.values).cwiseAbs().maxCoeff() / scale);
      const double lhs = fast.values.squaredNorm();
      const double rhs = static_cast<double>(g.size()) * f.values.squaredNorm();
      parseval_err = std::max(parseval_err, std::abs(lhs - rhs) / rhs);
      roundtrip_err = std::max(roundtrip_err, (plan.inverse(fast.values) - f.values).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "max |fast-naive|/||f||=" << oracle_err;
    results.push_back({"transform_oracle[" + g.to_string() + "]", oracle_err < options.tolerance, os.str()});
    os.str("");
    os << "max relative error=" << parseval_err;
    results.push_back({"parseval[" + g.to_string() + "]", parseval_err < options.tolerance, os.str()});
    os.str("");
    os << "max |inverse(forward(f))-f|=" << roundtrip_err;
    results.push_back({"inverse_roundtrip[" + g.to_string() + "]", roundtrip_err < options.tolerance, os.str()});
  }
  return results;
}

}  // namespace gcirc
