#include "semisens/sensitivity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "semisens/random.hpp"

namespace semisens {

namespace {

constexpr std::uint64_t kBasepointStream = 0x62617365ull;
constexpr std::uint64_t kCompanionStream = 0x636f6d70ull;
constexpr std::uint64_t kNullStream = 0x6e756c6cull;
constexpr std::uint64_t kIsometryStream = 0x69736f6dull;
constexpr double kIsometryTolerance = 1e-9;
constexpr double kRigidityTolerance = 1e-3;
constexpr double kNullFraction = 1e-3;

// Indices into one orbit window for every (anchor, box) combination needed
// by the limsup and its plateau check.
class SeparationPlan {
 public:
  SeparationPlan(const SemigroupAction& action, std::vector<Element> anchors, const std::vector<std::int64_t>& boxes)
      : anchors_(std::move(anchors)), boxes_(boxes) {
    const Semigroup& G = action.semigroup();
    const std::int64_t top = boxes_.back();
    std::vector<Element> elements = enumerate_in_box(G, top);
    const MemberTable table(G, top);
    const std::size_t nb = std::min<std::size_t>(2, boxes_.size());
    tails_.assign(anchors_.size(), std::vector<std::vector<std::size_t>>(nb));
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const Element& g = elements[i];
      if (g.is_zero()) continue;
      nonzero_.push_back(i);
      for (std::size_t a = 0; a < anchors_.size(); ++a) {
        const Element diff = g - anchors_[a];
        if (!diff.nonnegative() || !table.contains(diff)) continue;
        for (std::size_t b = 0; b < nb; ++b) {
          if (g.max_coord() <= boxes_[boxes_.size() - nb + b]) tails_[a][b].push_back(i);
        }
      }
    }
    for (std::size_t a = 0; a < anchors_.size(); ++a) {
      for (std::size_t b = 0; b < nb; ++b) {
        if (tails_[a][b].empty()) {
          throw EmptyTail("no nonzero element above anchor " + to_string(anchors_[a]) + " inside Box(" +
                          std::to_string(boxes_[boxes_.size() - nb + b]) + "); use a larger box bound");
        }
      }
    }
    if (nonzero_.empty()) throw EmptyTail("Box(" + std::to_string(top) + ") has no nonzero member; use a larger box");
    window_ = std::make_unique<OrbitWindow>(action, std::move(elements));
  }

  const OrbitWindow& window() const { return *window_; }
  const std::vector<Element>& anchors() const { return anchors_; }

  double exists_sup(const std::vector<double>& d) const { return max_over(d, nonzero_); }

  LimsupValue limsup(const std::vector<double>& d, double tol) const {
    const std::size_t nb = tails_.empty() ? 0 : tails_[0].size();
    LimsupValue out;
    out.value = std::numeric_limits<double>::infinity();
    out.previous_box = std::numeric_limits<double>::infinity();
    out.previous_anchor = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < anchors_.size(); ++a) {
      const double last = max_over(d, tails_[a][nb - 1]);
      if (last < out.value) {
        out.value = last;
        out.anchor = anchors_[a];
      }
      if (a + 1 < anchors_.size()) out.previous_anchor = std::min(out.previous_anchor, last);
      out.previous_box = std::min(out.previous_box, max_over(d, tails_[a][0]));
    }
    if (anchors_.size() < 2) out.previous_anchor = out.value;
    if (nb < 2) out.previous_box = out.value;
    out.plateaued = std::abs(out.previous_anchor - out.value) <= tol && std::abs(out.value - out.previous_box) <= tol;
    return out;
  }

 private:
  static double max_over(const std::vector<double>& d, const std::vector<std::size_t>& idx) {
    double best = 0.0;
    for (std::size_t i : idx) best = std::max(best, d[i]);
    return best;
  }

  std::vector<Element> anchors_;
  std::vector<std::int64_t> boxes_;
  std::vector<std::vector<std::vector<std::size_t>>> tails_;
  std::vector<std::size_t> nonzero_;
  std::unique_ptr<OrbitWindow> window_;
};

void distances(const Metric& metric, const std::vector<Point>& ox, const std::vector<Point>& oy,
               std::vector<double>& out) {
  out.resize(ox.size());
  for (std::size_t i = 0; i < ox.size(); ++i) out[i] = metric.dist(ox[i], oy[i]);
}

}  // namespace

void SensitivityConfig::validate() const {
  if (boxes.empty()) throw ConfigError("boxes: the box schedule is empty");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i] < 1) throw ConfigError("boxes: bounds must be positive");
    if (i > 0 && boxes[i] <= boxes[i - 1]) throw ConfigError("boxes: schedule must be strictly increasing");
  }
  if (n_x < 1) throw ConfigError("n_x: need at least one basepoint");
  if (n_y < 1) throw ConfigError("n_y: need at least one companion");
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q: quantile must lie in (0, 1)");
  if (anchors.empty() && anchor_depth < 1) throw ConfigError("anchor_depth: must be at least 1");
  if (!(resolution > 0.0)) throw ConfigError("resolution: must be positive");
  if (!(plateau_tol >= 0.0)) throw ConfigError("plateau_tol: must be nonnegative");
  if (!(plateau_fraction >= 0.0 && plateau_fraction <= 1.0)) throw ConfigError("plateau_fraction: must lie in [0, 1]");
  if (threads < 1) throw ConfigError("threads: must be at least 1");
  if (isometry_samples < 1) throw ConfigError("isometry_samples: must be at least 1");
  if (rigidity_scan < 1) throw ConfigError("rigidity_scan: must be at least 1");
  if (rigidity_samples < 1) throw ConfigError("rigidity_samples: must be at least 1");
  if (rigidity_keep < 1) throw ConfigError("rigidity_keep: must be at least 1");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::SensitiveEvidence: return "sensitive-evidence";
    case Verdict::IsometryEvidence: return "isometry-evidence";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Element> resolve_anchors(const Semigroup& semigroup, const SensitivityConfig& config) {
  if (!config.anchors.empty()) {
    for (const Element& h : config.anchors) {
      if (!semigroup.contains(h)) throw NotAMember("anchor " + to_string(h) + " is not in " + semigroup.describe());
    }
    return config.anchors;
  }
  return cofinal_schedule(semigroup, config.anchor_depth).terms;
}

double separation(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y, std::int64_t n,
                  const Element& g0) {
  const Semigroup& G = action.semigroup();
  if (!G.contains(g0)) throw NotAMember(to_string(g0) + " is not in " + G.describe());
  std::vector<Element> tail = tail_in_box(G, g0, n);
  std::erase_if(tail, [](const Element& g) { return g.is_zero(); });
  if (tail.empty()) {
    throw EmptyTail("no nonzero element above " + to_string(g0) + " inside Box(" + std::to_string(n) +
                    "); use a larger box bound");
  }
  double best = 0.0;
  for (const Element& g : tail) {
    const CompiledMap map = action.compile(g);
    const int budget = action.space().budget();
    best = std::max(best, metric.dist(apply_compiled(map, x, budget), apply_compiled(map, y, budget)));
  }
  return best;
}

LimsupValue limsup_separation(const SemigroupAction& action, const Metric& metric, const Point& x, const Point& y,
                              const SensitivityConfig& config) {
  config.validate();
  const SeparationPlan plan(action, resolve_anchors(action.semigroup(), config), config.boxes);
  std::vector<Point> ox;
  std::vector<Point> oy;
  plan.window().orbit(x, ox);
  plan.window().orbit(y, oy);
  std::vector<double> d;
  distances(metric, ox, oy, d);
  return plan.limsup(d, config.plateau_tol);
}

std::uint64_t basepoint_seed(std::uint64_t seed, int x_index) {
  return derive_seed(seed, kBasepointStream, static_cast<std::uint64_t>(x_index));
}

std::uint64_t companion_seed(std::uint64_t seed, int x_index, int y_index) {
  return derive_seed(seed, kCompanionStream ^ (static_cast<std::uint64_t>(x_index) << 32),
                     static_cast<std::uint64_t>(y_index));
}

std::size_t quantile_rank(std::size_t n, double q) {
  if (n == 0) throw Error("quantile of an empty sample");
  const auto r = static_cast<std::int64_t>(std::ceil(q * static_cast<double>(n))) - 1;
  return static_cast<std::size_t>(std::clamp<std::int64_t>(r, 0, static_cast<std::int64_t>(n) - 1));
}

std::pair<std::size_t, std::size_t> quantile_band(std::size_t n, double q) {
  const double nq = q * static_cast<double>(n);
  const double spread = 3.0 * std::sqrt(nq * (1.0 - q));
  const auto top = static_cast<double>(n) - 1.0;
  const auto lo = static_cast<std::size_t>(std::clamp(std::floor(nq - spread) - 1.0, 0.0, top));
  const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(nq + spread) - 1.0, 0.0, top));
  return {lo, hi};
}

SensitivityReport estimate_sensitivity_constant(const SemigroupAction& action, const Metric& metric,
                                                const SensitivityConfig& config) {
  config.validate();
  SensitivityReport report;
  report.config = config;
  const SeparationPlan plan(action, resolve_anchors(action.semigroup(), config), config.boxes);
  report.anchors = plan.anchors();

  const auto nx = static_cast<std::size_t>(config.n_x);
  const auto ny = static_cast<std::size_t>(config.n_y);
  std::vector<std::vector<PairRecord>> rows(nx);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::vector<Point> ox;
    std::vector<Point> oy;
    std::vector<double> d;
    for (int i = next++; i < config.n_x; i = next++) {
      try {
        const std::uint64_t xs = basepoint_seed(config.seed, i);
        const Point x = sample_point(action.space(), action.measure(), xs);
        plan.window().orbit(x, ox);
        auto& row = rows[static_cast<std::size_t>(i)];
        row.reserve(ny);
        for (int j = 0; j < config.n_y; ++j) {
          const std::uint64_t ys = companion_seed(config.seed, i, j);
          plan.window().orbit(sample_point(action.space(), action.measure(), ys), oy);
          distances(metric, ox, oy, d);
          const LimsupValue v = plan.limsup(d, config.plateau_tol);
          row.push_back({i, j, xs, ys, v.anchor, config.boxes.back(), v.value, plan.exists_sup(d), v.plateaued});
        }
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.n_x;
      }
    }
  };
  const int nthreads = std::min(config.threads, config.n_x);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const std::size_t rank = quantile_rank(ny, config.q);
  const auto [lo_rank, hi_rank] = quantile_band(ny, config.q);
  std::size_t plateaued = 0;
  std::vector<double> scores;
  report.delta_hat = std::numeric_limits<double>::infinity();
  report.band_lo = report.band_hi = report.delta_hat_exists = report.delta_hat;
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<double> vals;
    std::vector<double> exists;
    std::size_t flat = 0;
    for (const PairRecord& r : rows[i]) {
      vals.push_back(r.limsup);
      exists.push_back(r.exists_sup);
      flat += r.plateaued ? 1 : 0;
    }
    std::sort(vals.begin(), vals.end());
    std::sort(exists.begin(), exists.end());
    BasepointSummary s;
    s.x_index = static_cast<int>(i);
    s.score = vals[rank];
    s.band_lo = vals[lo_rank];
    s.band_hi = vals[hi_rank];
    s.exists_score = exists[rank];
    s.min = vals.front();
    s.median = vals[vals.size() / 2];
    s.max = vals.back();
    s.plateau_fraction = static_cast<double>(flat) / static_cast<double>(ny);
    plateaued += flat;
    report.delta_hat = std::min(report.delta_hat, s.score);
    report.band_lo = std::min(report.band_lo, s.band_lo);
    report.band_hi = std::min(report.band_hi, s.band_hi);
    report.delta_hat_exists = std::min(report.delta_hat_exists, s.exists_score);
    scores.push_back(s.score);
    report.basepoints.push_back(s);
    for (PairRecord& r : rows[i]) report.pairs.push_back(std::move(r));
  }
  std::sort(scores.begin(), scores.end());
  report.delta_hat_ae = scores[quantile_rank(scores.size(), config.q)];
  report.plateau_fraction = static_cast<double>(plateaued) / static_cast<double>(nx * ny);
  return report;
}

double null_radius_estimate(const SemigroupAction& action, const Metric& metric, const Point& x, std::int64_t n,
                            int sample_count, double resolution, std::uint64_t seed) {
  if (sample_count < 1) throw Error("null radius needs at least one sample");
  if (!(resolution > 0.0)) throw Error("null radius grid step must be positive");
  const OrbitWindow window(action, enumerate_in_box(action.semigroup(), n));
  std::vector<Point> ox;
  std::vector<Point> oy;
  window.orbit(x, ox);
  std::vector<double> values;
  for (int i = 0; i < sample_count; ++i) {
    window.orbit(sample_point(action.space(), action.measure(), derive_seed(seed, kNullStream, static_cast<std::uint64_t>(i))), oy);
    double d = 0.0;
    for (std::size_t k = 0; k < ox.size(); ++k) d = std::max(d, metric.dist(ox[k], oy[k]));
    values.push_back(d);
  }
  std::sort(values.begin(), values.end());
  const auto allowed = static_cast<std::size_t>(std::floor(kNullFraction * sample_count));
  const auto steps = static_cast<int>(std::floor(metric.diameter() / resolution + 1e-9));
  double best = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double eps = k * resolution;
    const auto below = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), eps) - values.begin());
    if (below > allowed) break;
    best = eps;
  }
  return best;
}

Verdict decide_verdict(const SensitivityReport& report, std::string* reason) {
  auto say = [&](const std::string& s) {
    if (reason) *reason = s;
  };
  const bool rigid = !report.rigidity_values.empty() && report.rigidity_values.back() <= kRigidityTolerance;
  if (report.isometry_defect <= kIsometryTolerance && rigid) {
    say("isometry defect <= 1e-9 and rigidity probe ends <= 1e-3");
    return Verdict::IsometryEvidence;
  }
  const bool positive = report.delta_hat >= report.config.resolution;
  const bool flat = report.plateau_fraction >= report.config.plateau_fraction;
  if (positive && flat) {
    say("delta-hat >= resolution with plateau certificates on enough pairs");
    return Verdict::SensitiveEvidence;
  }
  std::string why;
  if (report.isometry_defect <= kIsometryTolerance) {
    why = "isometric but the rigidity probe does not reach 1e-3";
  } else if (!positive) {
    why = "delta-hat below resolution and the action is not isometric";
  } else {
    why = "delta-hat positive but too few pairs plateaued";
  }
  say(why);
  return Verdict::Inconclusive;
}

SensitivityReport classify(const SemigroupAction& action, const Metric& metric, const SensitivityConfig& config) {
  SensitivityReport report = estimate_sensitivity_constant(action, metric, config);
  report.isometry_defect = isometry_defect(action, metric, config.isometry_samples, config.boxes.back(),
                                           derive_seed(config.seed, kIsometryStream, 0));
  report.rigidity_times = rigidity_schedule(action, metric, config.rigidity_scan, config.rigidity_samples,
                                            config.rigidity_keep, config.seed);
  if (!report.rigidity_times.empty()) {
    report.rigidity_values =
        uniform_rigidity_probe(action, metric, report.rigidity_times, config.rigidity_samples, config.seed);
  }
  report.verdict = decide_verdict(report, &report.verdict_reason);
  return report;
}

}  // namespace semisens
