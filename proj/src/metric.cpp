#include "semisens/metric.hpp"

#include <algorithm>
#include <cmath>

#include "semisens/random.hpp"

namespace semisens {

namespace {

constexpr std::uint64_t kPairStream = 0x7061697273ull;
constexpr std::uint64_t kBallStream = 0x62616c6cull;
constexpr double kPlateauTolerance = 1e-12;

std::pair<Point, Point> sample_pair(const SemigroupAction& action, std::uint64_t seed, int i) {
  const auto idx = static_cast<std::uint64_t>(i);
  return {sample_point(action.space(), action.measure(), derive_seed(seed, kPairStream, 2 * idx)),
          sample_point(action.space(), action.measure(), derive_seed(seed, kPairStream, 2 * idx + 1))};
}

}  // namespace

struct Metric::Sup {
  std::shared_ptr<const SemigroupAction> action;
  std::shared_ptr<const OrbitWindow> window;
  Metric base;
  std::int64_t bound;
};

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Arc: return "arc";
    case MetricKind::Cylinder: return "shift";
    case MetricKind::Max: return "max";
    case MetricKind::SupTruncated: return "dG";
  }
  return "?";
}

double arc_metric(const Coordinate& x, const Coordinate& y) { return arc_distance(x.value, y.value); }

double cylinder_metric(const Coordinate& x, const Coordinate& y) {
  const int bits = x.value.bits();
  const std::int64_t valid = bits - std::max(x.consumed, y.consumed);
  if (valid <= 0) return 0.0;
  const int k = (x.value ^ y.value).leading_zeros();
  if (k >= valid) return 0.0;
  return std::ldexp(1.0, -k);
}

Metric Metric::base(const StateSpace& space) {
  Metric m;
  m.factors_ = space.factors();
  if (space.factor_count() == 1) {
    m.kind_ = space.factors()[0] == FactorKind::Circle ? MetricKind::Arc : MetricKind::Cylinder;
  } else {
    m.kind_ = MetricKind::Max;
  }
  m.diameter_ = 0.0;
  for (FactorKind f : space.factors()) m.diameter_ = std::max(m.diameter_, f == FactorKind::Circle ? 0.5 : 1.0);
  return m;
}

Metric Metric::named(const std::string& name, const StateSpace& space) {
  Metric m = base(space);
  if (name == "max" || name == to_string(m.kind_)) return m;
  throw ConfigError("metric '" + name + "' does not fit the space " + space.describe() + " (expected '" +
                    to_string(m.kind_) + "')");
}

Metric Metric::sup_truncated(const Metric& base, std::shared_ptr<const SemigroupAction> action, std::int64_t bound) {
  if (base.kind_ == MetricKind::SupTruncated) throw Error("sup-metric of a sup-metric is not supported");
  auto window = std::make_shared<const OrbitWindow>(*action, enumerate_in_box(action->semigroup(), bound));
  Metric m;
  m.kind_ = MetricKind::SupTruncated;
  m.factors_ = base.factors_;
  m.diameter_ = base.diameter_;
  m.sup_ = std::make_shared<const Sup>(Sup{std::move(action), std::move(window), base, bound});
  return m;
}

const Metric& Metric::base_metric() const { return sup_ ? sup_->base : *this; }

std::int64_t Metric::truncation() const { return sup_ ? sup_->bound : 0; }

double Metric::dist(const Point& x, const Point& y) const {
  if (sup_) {
    double best = 0.0;
    std::vector<Point> ox;
    std::vector<Point> oy;
    sup_->window->orbit(x, ox);
    sup_->window->orbit(y, oy);
    for (std::size_t i = 0; i < ox.size(); ++i) best = std::max(best, sup_->base.dist(ox[i], oy[i]));
    return best;
  }
  double best = 0.0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const double d = factors_[j] == FactorKind::Circle ? arc_metric(x.coords[j], y.coords[j])
                                                       : cylinder_metric(x.coords[j], y.coords[j]);
    best = std::max(best, d);
  }
  return best;
}

std::string Metric::describe() const {
  if (sup_) return "dG(" + sup_->base.describe() + ", n=" + std::to_string(sup_->bound) + ")";
  return to_string(kind_);
}

double dist(const Metric& metric, const Point& x, const Point& y) { return metric.dist(x, y); }

double dG_truncated(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                    std::int64_t n) {
  const OrbitWindow window(action, enumerate_in_box(action.semigroup(), n));
  std::vector<Point> ox;
  std::vector<Point> oy;
  window.orbit(x, ox);
  window.orbit(y, oy);
  double best = 0.0;
  for (std::size_t i = 0; i < ox.size(); ++i) best = std::max(best, metric.dist(ox[i], oy[i]));
  return best;
}

SupValue dG_certified(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                      std::int64_t n) {
  SupValue out;
  out.bound = n;
  out.value = dG_truncated(action, metric, x, y, n);
  if (out.value >= metric.diameter()) {
    out.status = TruncationStatus::Plateaued;
    return out;
  }
  try {
    const double doubled = dG_truncated(action, metric, x, y, 2 * std::max<std::int64_t>(n, 1));
    if (doubled - out.value < kPlateauTolerance) out.status = TruncationStatus::Plateaued;
  } catch (const PrecisionExhausted&) {
    out.status = TruncationStatus::LowerBound;
  }
  return out;
}

LipschitzDefect lipschitz_defect(const SemigroupAction& action, const Metric& metric, int samples, std::int64_t n,
                                 std::uint64_t seed) {
  LipschitzDefect out;
  const OrbitWindow window(action, enumerate_in_box(action.semigroup(), n));
  const bool sup = metric.kind() == MetricKind::SupTruncated;
  for (int i = 0; i < samples; ++i) {
    const auto [x, y] = sample_pair(action, seed, i);
    std::vector<Point> ox;
    std::vector<Point> oy;
    window.orbit(x, ox);
    window.orbit(y, oy);

    bool certified = true;
    double base_d = 0.0;
    if (sup) {
      const SupValue v = dG_certified(action, metric.base_metric(), x, y, metric.truncation());
      base_d = v.value;
      certified = v.status == TruncationStatus::Plateaued;
    } else {
      base_d = metric.dist(x, y);
    }
    double pair_defect = 0.0;
    for (std::size_t k = 0; k < ox.size(); ++k) {
      double moved = 0.0;
      if (sup) {
        const SupValue v = dG_certified(action, metric.base_metric(), ox[k], oy[k], metric.truncation());
        moved = v.value;
        certified = certified && v.status == TruncationStatus::Plateaued;
      } else {
        moved = metric.dist(ox[k], oy[k]);
      }
      pair_defect = std::max(pair_defect, moved - base_d);
    }
    out.defect = std::max(out.defect, pair_defect);
    if (certified) {
      out.certified_defect = std::max(out.certified_defect, pair_defect);
    } else {
      ++out.boundary_pairs;
    }
  }
  return out;
}

double isometry_defect(const SemigroupAction& action, const Metric& metric,
                       const std::vector<std::pair<Point, Point>>& pairs, std::int64_t n) {
  const OrbitWindow window(action, enumerate_in_box(action.semigroup(), n));
  double worst = 0.0;
  std::vector<Point> ox;
  std::vector<Point> oy;
  for (const auto& [x, y] : pairs) {
    const double d0 = metric.dist(x, y);
    window.orbit(x, ox);
    window.orbit(y, oy);
    for (std::size_t k = 0; k < ox.size(); ++k) worst = std::max(worst, std::abs(metric.dist(ox[k], oy[k]) - d0));
  }
  return worst;
}

double isometry_defect(const SemigroupAction& action, const Metric& metric, int samples, std::int64_t n,
                       std::uint64_t seed) {
  std::vector<std::pair<Point, Point>> pairs;
  for (int i = 0; i < samples; ++i) pairs.push_back(sample_pair(action, seed, i));
  return isometry_defect(action, metric, pairs, n);
}

Estimate ball_measure_estimate(const StateSpace& space, const MeasureSpec& measure, const Metric& metric,
                               const Point& x, double eps, int sample_count, std::uint64_t seed) {
  if (!(eps > 0.0)) throw Error("ball radius must be positive");
  if (sample_count < 1) throw Error("need at least one sample");
  int inside = 0;
  for (int i = 0; i < sample_count; ++i) {
    const Point y = sample_point(space, measure, derive_seed(seed, kBallStream, static_cast<std::uint64_t>(i)));
    if (metric.dist(x, y) <= eps) ++inside;
  }
  const double p = static_cast<double>(inside) / sample_count;
  return {p, std::sqrt(p * (1.0 - p) / sample_count)};
}

}  // namespace semisens
