#pragma once

// Experiment drivers. Each returns a self-contained report; the same config
// and seed give the same bytes whatever the thread count.

#include <string>
#include <vector>

#include "semisens/config.hpp"
#include "semisens/report.hpp"
#include "semisens/subsemigroup.hpp"

namespace semisens {

struct RunOptions {
  int threads = 1;
  /// Keep going (and report) when a verdict is inconclusive.
  bool allow_inconclusive = false;
};

/// Classification plus null radius and orbit-tail density for one action.
SystemOutcome evaluate_system(const std::string& label, const SemigroupAction& action, const Metric& metric,
                              const SensitivityConfig& sensitivity, int null_samples);

/// The box schedule for a restricted action: unchanged when Box(n_k) fits the
/// precision budget, otherwise scaled down proportionally (strictly
/// increasing, at least 1) until it does. Anchors revert to the cofinal
/// schedule of the restricted semigroup.
SensitivityConfig rescale_for_restriction(const SensitivityConfig& config, const SemigroupAction& restricted);

/// Throws InconclusiveVerdict listing the inconclusive systems unless allowed.
void require_conclusive(const ExperimentReport& report, const RunOptions& options);

/// Classifies the named systems (all when `names` is empty).
ExperimentReport run_classify(const ExperimentConfig& config, const std::vector<std::string>& names,
                              const RunOptions& options);

/// Every system of the config; expected: rotation isometric, doubling and the
/// full shift sensitive.
ExperimentReport run_dichotomy_showcase(const ExperimentConfig& config, const RunOptions& options);

/// The product of the first system, its factor projections, and the same for
/// the factors in reverse order.
ExperimentReport run_factor_counterexample(const ExperimentConfig& config, const RunOptions& options);

/// The first system restricted to kN (1 <= k <= 5), next to the original,
/// with the syndetic certificate F = {0, ..., k-1}.
ExperimentReport run_powers_experiment(const ExperimentConfig& config, int k, const RunOptions& options);

/// Each [subsemigroup] of the config: thick and syndetic searches, the
/// restricted action and its classification, next to the parent.
ExperimentReport run_cone_restriction(const ExperimentConfig& config, const RunOptions& options);

/// One named [subsemigroup]: the parent and the restriction.
ExperimentReport run_restriction(const ExperimentConfig& config, const std::string& subsemigroup,
                                 const RunOptions& options);

/// "dichotomy", "remark-5-2", "powers", "cone-restriction".
std::vector<std::string> experiment_names();

}  // namespace semisens
