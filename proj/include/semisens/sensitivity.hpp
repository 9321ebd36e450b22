#pragma once

// Orbit-separation estimators for the sensitivity constant delta:
//   limsup_{g -> inf} d(T_g x, T_g y) = inf_h sup_{g >= h} d(T_g x, T_g y),
// with "almost every y" replaced by a lower quantile of sampled companions.

#include <cstdint>
#include <string>
#include <vector>

#include "semisens/metric.hpp"

namespace semisens {

struct SensitivityConfig {
  /// Box bounds n_1 < ... < n_k; the sup runs over Box(n_k).
  std::vector<std::int64_t> boxes{50, 100};
  int n_x = 50;
  int n_y = 400;
  /// Quantile standing in for "almost every y".
  double q = 0.05;
  /// Tail anchors. Empty means cofinal_schedule(G, anchor_depth).
  std::vector<Element> anchors;
  int anchor_depth = 5;
  std::uint64_t seed = 1;
  /// Smallest delta-hat treated as positive, and the null-radius grid step.
  double resolution = 0.05;
  /// Largest change across the last two anchors / boxes that still counts as a plateau.
  double plateau_tol = 0.05;
  /// Fraction of plateaued pairs needed for a sensitive verdict.
  double plateau_fraction = 0.95;
  int threads = 1;
  int isometry_samples = 200;
  std::int64_t rigidity_scan = 2000;
  int rigidity_samples = 64;
  int rigidity_keep = 8;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

enum class Verdict { SensitiveEvidence, IsometryEvidence, Inconclusive };

std::string to_string(Verdict verdict);

/// Anchors actually used: config.anchors or the cofinal schedule.
std::vector<Element> resolve_anchors(const Semigroup& semigroup, const SensitivityConfig& config);

/// max over g in tail_in_box(G, g0, n), g != 0, of d(T_g x, T_g y). Throws
/// EmptyTail when that set is empty.
double separation(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y, std::int64_t n,
                  const Element& g0);

struct LimsupValue {
  double value = 0.0;
  bool plateaued = false;
  /// Anchor at which the infimum is attained.
  Element anchor;
  /// min over anchors of the separation in the second-to-last box.
  double previous_box = 0.0;
  /// min over all anchors but the last, in the last box.
  double previous_anchor = 0.0;
};

/// inf over anchors h of separation(x, y, n_k, h), plateau-flagged when it
/// moves by at most plateau_tol across the last two anchors and boxes.
LimsupValue limsup_separation(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                              const SensitivityConfig& config);

struct PairRecord {
  int x_index = 0;
  int y_index = 0;
  std::uint64_t x_seed = 0;
  std::uint64_t y_seed = 0;
  Element anchor;
  std::int64_t box = 0;
  double limsup = 0.0;
  /// sup over g != 0 in Box(n_k): the "there exists g" form.
  double exists_sup = 0.0;
  bool plateaued = false;
};

struct BasepointSummary {
  int x_index = 0;
  double score = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double exists_score = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  double plateau_fraction = 0.0;
};

struct SensitivityReport {
  SensitivityConfig config;
  std::vector<Element> anchors;
  std::vector<PairRecord> pairs;
  std::vector<BasepointSummary> basepoints;
  /// min over x of the per-x q-quantile.
  double delta_hat = 0.0;
  /// Order-statistic band around delta_hat.
  double band_lo = 0.0;
  double band_hi = 0.0;
  /// The same estimator on the "there exists g" form.
  double delta_hat_exists = 0.0;
  /// q-quantile over x instead of min over x: the "almost every x" form.
  double delta_hat_ae = 0.0;
  double plateau_fraction = 0.0;
  double isometry_defect = 0.0;
  std::vector<Element> rigidity_times;
  std::vector<double> rigidity_values;
  Verdict verdict = Verdict::Inconclusive;
  std::string verdict_reason;
};

/// Seeds of the sampled points, shared with oracles that need the same pairs.
std::uint64_t basepoint_seed(std::uint64_t seed, int x_index);
std::uint64_t companion_seed(std::uint64_t seed, int x_index, int y_index);

/// Index of the q-quantile order statistic among n sorted values.
std::size_t quantile_rank(std::size_t n, double q);
/// The rank band nq +- 3 sqrt(nq(1-q)), clamped to [0, n-1].
std::pair<std::size_t, std::size_t> quantile_band(std::size_t n, double q);

/// Samples n_x basepoints and n_y companions each, and reduces the limsup
/// separations to delta-hat. The result does not depend on config.threads.
SensitivityReport estimate_sensitivity_constant(const SemigroupAction& action, const Metric& metric,
                                                const SensitivityConfig& config);

/// Largest eps on the resolution grid such that at most 1e-3 of the sampled
/// y have dG_truncated(x, y, n) < eps.
double null_radius_estimate(const SemigroupAction& action, const Metric& metric, const Point& x, std::int64_t n,
                            int sample_count, double resolution = 0.05, std::uint64_t seed = 0);

/// Verdict rules: isometry-evidence when the isometry defect is at most 1e-9
/// and the rigidity probe ends at most 1e-3; otherwise sensitive-evidence when
/// delta-hat >= resolution and enough pairs plateaued; otherwise inconclusive.
Verdict decide_verdict(const SensitivityReport& report, std::string* reason = nullptr);

/// Full estimate plus the isometry and rigidity cross-checks and the verdict.
SensitivityReport classify(const SemigroupAction& action, const Metric& metric, const SensitivityConfig& config);

}  // namespace semisens
