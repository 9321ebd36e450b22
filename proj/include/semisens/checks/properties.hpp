#pragma once

// Property suites run by the tests and by `semisens selftest`. Each property
// compares a fast path against an oracle or checks an algebraic law on
// seeded random inputs.

#include <cstdint>
#include <string>
#include <vector>

namespace semisens::checks {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Smaller sample counts and boxes, for interactive use.
  bool quick = false;
};

std::vector<PropertyResult> semigroup_properties(const SuiteOptions& options);
std::vector<PropertyResult> fixed_point_properties(const SuiteOptions& options);
std::vector<PropertyResult> action_properties(const SuiteOptions& options);
std::vector<PropertyResult> metric_properties(const SuiteOptions& options);
std::vector<PropertyResult> sensitivity_properties(const SuiteOptions& options);
std::vector<PropertyResult> subsemigroup_properties(const SuiteOptions& options);
std::vector<PropertyResult> experiment_properties(const SuiteOptions& options);

/// "semigroup", "fixed_point", "action", "metric", "sensitivity",
/// "subsemigroup", "experiments".
std::vector<std::string> suite_names();
/// Throws Error for an unknown name.
std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options);
std::vector<PropertyResult> all_properties(const SuiteOptions& options);

}  // namespace semisens::checks
