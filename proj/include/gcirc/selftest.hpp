#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gcirc/fourier.hpp"
#include "gcirc/group.hpp"

namespace gcirc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  std::size_t random_functions = 50;
  double tolerance = 1e-9;
  /// Called on every freshly built plan before use; lets tests corrupt a plan.
  std::function<void(const GroupSpec&, FourierPlan<double>&)> tamper_plan;
};

/// Groups exercised by run_selftest: Z12, Z8xZ3, (Z2)^6, Z4xZ2xZ5, (Z2)^4xZ3.
std::vector<GroupSpec> selftest_groups();

/// Exact counting checks (involutions vs real characters, restriction
/// multiplicities, dual group size, orthogonality) and transform-oracle
/// checks (fast vs naive, Parseval, inverse round trip) on each suite group.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// Number of characters of G in each restriction class on the subgroup H,
/// keyed by the restriction's phase numerators.
std::vector<std::size_t> restriction_class_sizes(const GroupSpec& g, const std::vector<Element>& subgroup);

}  // namespace gcirc
