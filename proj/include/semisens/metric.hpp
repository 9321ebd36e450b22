#pragma once

// Bounded metrics on the state spaces and the truncated sup-metric
//   d_G^n(x, y) = max_{g in Box(n) ∩ G} d(T_g x, T_g y),
// plus the Lipschitz, isometry and ball-mass probes built on them.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "semisens/action.hpp"

namespace semisens {

enum class MetricKind { Arc, Cylinder, Max, SupTruncated };

std::string to_string(MetricKind kind);

class Metric {
 public:
  /// Arc metric on a circle, cylinder metric 2^-(first differing index) on a
  /// shift, or the max of those over the factors of a product.
  static Metric base(const StateSpace& space);
  /// "arc", "shift" or "max", checked against the space.
  static Metric named(const std::string& name, const StateSpace& space);
  /// d_G truncated to Box(bound).
  static Metric sup_truncated(const Metric& base, std::shared_ptr<const SemigroupAction> action, std::int64_t bound);

  MetricKind kind() const { return kind_; }
  double dist(const Point& x, const Point& y) const;
  /// Supremum of the metric over the space.
  double diameter() const { return diameter_; }
  std::string describe() const;

  /// Underlying metric of a truncated sup-metric (itself otherwise).
  const Metric& base_metric() const;
  /// Truncation bound n of a sup-metric, 0 otherwise.
  std::int64_t truncation() const;

 private:
  struct Sup;

  MetricKind kind_ = MetricKind::Arc;
  std::vector<FactorKind> factors_;
  double diameter_ = 0.5;
  std::shared_ptr<const Sup> sup_;
};

/// d(x, y) on one circle coordinate, in [0, 1/2].
double arc_metric(const Coordinate& x, const Coordinate& y);
/// 2^-k with k the first differing (0-based) symbol within the bits still
/// meaningful for both coordinates; 0 when they agree on all of them.
double cylinder_metric(const Coordinate& x, const Coordinate& y);

double dist(const Metric& metric, const Point& x, const Point& y);

/// max over g in enumerate_in_box(G, n) of d(T_g x, T_g y).
double dG_truncated(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                    std::int64_t n);

enum class TruncationStatus { Plateaued, LowerBound };

struct SupValue {
  double value = 0.0;
  std::int64_t bound = 0;
  TruncationStatus status = TruncationStatus::LowerBound;
};

/// dG_truncated at n, labelled Plateaued when it already equals the
/// diameter or when doubling n moves it by less than 1e-12. A doubled window
/// that runs out of precision leaves the value a lower bound.
SupValue dG_certified(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                      std::int64_t n);

struct LipschitzDefect {
  /// max (d(T_g x, T_g y) - d(x, y))^+ over all sampled pairs and g.
  double defect = 0.0;
  /// The same maximum over pairs whose every sup-metric value involved was
  /// plateaued. Equals `defect` for non-sup metrics.
  double certified_defect = 0.0;
  /// Pairs excluded from `certified_defect` by the truncation boundary.
  int boundary_pairs = 0;
};

LipschitzDefect lipschitz_defect(const SemigroupAction& action, const Metric& metric, int samples, std::int64_t n,
                                 std::uint64_t seed = 0);

/// max |d(T_g x, T_g y) - d(x, y)| over sampled pairs and g in Box(n).
double isometry_defect(const SemigroupAction& action, const Metric& metric, int samples, std::int64_t n,
                       std::uint64_t seed = 0);

/// The same over explicit pairs.
double isometry_defect(const SemigroupAction& action, const Metric& metric,
                       const std::vector<std::pair<Point, Point>>& pairs, std::int64_t n);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo mass of the closed ball {y : d(x, y) <= eps}.
Estimate ball_measure_estimate(const StateSpace& space, const MeasureSpec& measure, const Metric& metric,
                               const Point& x, double eps, int sample_count, std::uint64_t seed = 0);

}  // namespace semisens
