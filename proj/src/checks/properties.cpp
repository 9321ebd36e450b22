#include "semisens/checks/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "semisens/checks/oracles.hpp"
#include "semisens/config.hpp"
#include "semisens/experiments.hpp"
#include "semisens/random.hpp"

namespace semisens::checks {

namespace {

using boost::multiprecision::cpp_int;

struct Outcome {
  bool ok = false;
  std::string detail;
};

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void run(const std::string& name, const std::function<Outcome()>& body) {
    PropertyResult r{suite_, name, false, {}};
    try {
      const Outcome o = body();
      r.passed = o.ok;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<PropertyResult> results_;
};

std::string num(double v) { return format_double(v); }

ExperimentConfig builtin(const std::string& name) { return parse_config(*builtin_config(name), name + ".cfg"); }

SemigroupAction builtin_action(const std::string& config, const std::string& system) {
  return builtin(config).system(system).build();
}

Metric builtin_metric(const std::string& config, const std::string& system) {
  return builtin(config).system(system).build_metric();
}

/// Every point of Box(n) in dimension dim, graded-lex ordered.
std::vector<Element> box_points(int dim, std::int64_t n) {
  std::vector<Element> out;
  Element v(dim);
  std::function<void(int)> rec = [&](int i) {
    if (i == dim) {
      out.push_back(v);
      return;
    }
    for (std::int64_t c = 0; c <= n; ++c) {
      v[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

Element unit(int dim, int i) {
  Element e(dim);
  e[i] = 1;
  return e;
}

std::vector<Semigroup> sample_semigroups() {
  return {
      Semigroup::full_lattice(1),
      Semigroup::scaled_lattice(2, 2),
      Semigroup::generated({Element{3}, Element{5}}),
      Semigroup::generated({Element{2, 0}, Element{1, 1}, Element{0, 3}}),
      Semigroup::cone(Element{1, 0}, Element{1, 2}),
  };
}

cpp_int word_of(const FixedPoint& v) {
  cpp_int w = 0;
  for (int i = v.limb_count() - 1; i >= 0; --i) w = (w << 64) | cpp_int(v.limb(i));
  return w;
}

std::string random_digits(Rng& rng, int length) {
  std::string s(1, static_cast<char>('1' + rng() % 9));
  for (int i = 1; i < length; ++i) s += static_cast<char>('0' + rng() % 10);
  return s;
}

}  // namespace

std::vector<PropertyResult> semigroup_properties(const SuiteOptions& options) {
  Collector c("semigroup");
  const std::int64_t box = options.quick ? 20 : 40;

  c.run("membership dynamic program equals combination search on Box(" + std::to_string(box) + ")", [&] {
    Rng rng(derive_seed(options.seed, 0x5e01, 0));
    std::int64_t checked = 0;
    for (int s = 0; s < 20; ++s) {
      const int dim = 1 + s % 2;
      const int count = 1 + static_cast<int>(rng() % 4);
      std::vector<Element> gens;
      while (static_cast<int>(gens.size()) < count) {
        Element g(dim);
        for (int k = 0; k < dim; ++k) g[k] = static_cast<std::int64_t>(rng() % (dim == 1 ? 10 : 7));
        if (!g.is_zero()) gens.push_back(g);
      }
      const Semigroup G = Semigroup::generated(gens);
      const MemberTable table(G, box);
      for (const Element& v : box_points(dim, box)) {
        const bool expected = brute_force_member(gens, v);
        if (G.contains(v) != expected || table.contains(v) != expected) {
          return Outcome{false, "set " + std::to_string(s) + " (" + G.describe() + ") disagrees at " + to_string(v)};
        }
        ++checked;
      }
    }
    return Outcome{true, std::to_string(checked) + " points over 20 generator sets"};
  });

  c.run("order is reflexive, antisymmetric, transitive and translation invariant", [&] {
    for (const Semigroup& G : sample_semigroups()) {
      const auto P = enumerate_in_box(G, G.dim() == 1 ? 30 : 5);
      for (const Element& a : P) {
        if (!leq(G, a, a)) return Outcome{false, G.describe() + ": not reflexive at " + to_string(a)};
        for (const Element& b : P) {
          const bool ab = leq(G, a, b);
          if (ab && leq(G, b, a) && !(a == b)) return Outcome{false, G.describe() + ": not antisymmetric"};
          if (!ab) continue;
          for (const Element& t : P) {
            if (leq(G, b, t) && !leq(G, a, t)) return Outcome{false, G.describe() + ": not transitive"};
            if (!leq(G, a + t, b + t)) return Outcome{false, G.describe() + ": not translation invariant"};
          }
        }
      }
    }
    return Outcome{true, {}};
  });

  c.run("enumeration is complete and graded-lex sorted", [&] {
    for (const Semigroup& G : sample_semigroups()) {
      const std::int64_t n = G.dim() == 1 ? 60 : 15;
      std::vector<Element> expected;
      for (const Element& v : box_points(G.dim(), n)) {
        if (G.contains(v)) expected.push_back(v);
      }
      if (enumerate_in_box(G, n) != expected) return Outcome{false, G.describe()};
    }
    return Outcome{true, {}};
  });

  c.run("tail_in_box is the upper set of the anchor", [&] {
    for (const Semigroup& G : sample_semigroups()) {
      const std::int64_t n = G.dim() == 1 ? 40 : 10;
      const auto members = enumerate_in_box(G, n);
      for (std::size_t i = 0; i < members.size(); i += 3) {
        std::vector<Element> expected;
        for (const Element& g : members) {
          if (leq(G, members[i], g)) expected.push_back(g);
        }
        if (tail_in_box(G, members[i], n) != expected) return Outcome{false, G.describe() + " at " + to_string(members[i])};
      }
    }
    return Outcome{true, {}};
  });

  c.run("cofinal schedule increases and dominates its box", [&] {
    for (const Semigroup& G : sample_semigroups()) {
      const CofinalSchedule s = cofinal_schedule(G, 5);
      for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
        if (!leq(G, s.terms[i], s.terms[i + 1]) || s.terms[i] == s.terms[i + 1]) {
          return Outcome{false, G.describe() + ": not increasing"};
        }
      }
      if (s.dominated_box < 1) return Outcome{false, G.describe() + ": dominates nothing"};
      for (const Element& g : enumerate_in_box(G, s.dominated_box)) {
        if (!leq(G, g, s.terms.back())) return Outcome{false, G.describe() + ": misses " + to_string(g)};
      }
    }
    return Outcome{true, {}};
  });

  return c.take();
}

std::vector<PropertyResult> fixed_point_properties(const SuiteOptions& options) {
  Collector c("fixed_point");
  const int trials = options.quick ? 50 : 300;

  c.run("ring laws mod 2^L", [&] {
    Rng rng(derive_seed(options.seed, 0xf1, 0));
    for (int bits : {64, 100, 256, 1000}) {
      auto draw = [&] {
        FixedPoint v(bits);
        for (int i = 0; i < v.limb_count(); ++i) v.set_limb(i, rng());
        return v;
      };
      for (int t = 0; t < trials; ++t) {
        const FixedPoint a = draw(), b = draw(), d = draw();
        const int s = static_cast<int>(rng() % 63);
        const bool ok = a + b == b + a && (a + b) + d == a + (b + d) && (a - b) + b == a && (a + -a).is_zero() &&
                        a * b == b * a && a * (b + d) == a * b + a * d &&
                        a.shifted_left(s) == FixedPoint::from_integer(bits, std::uint64_t{1} << s) * a;
        if (!ok) return Outcome{false, "law fails at L = " + std::to_string(bits)};
      }
    }
    return Outcome{true, {}};
  });

  c.run("parse truncates rationals and decimals exactly", [&] {
    Rng rng(derive_seed(options.seed, 0xf2, 0));
    for (int bits : {64, 100, 256, 1024}) {
      for (int t = 0; t < trials; ++t) {
        const bool decimal = t % 2 == 1;
        const std::string p = random_digits(rng, 1 + static_cast<int>(rng() % 40));
        std::string literal;
        cpp_int num(p), den;
        if (decimal) {
          const std::size_t frac_digits = 1 + rng() % p.size();
          literal = p.substr(0, p.size() - frac_digits) + "." + p.substr(p.size() - frac_digits);
          den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac_digits));
        } else {
          const std::string q = random_digits(rng, 1 + static_cast<int>(rng() % 40));
          literal = p + "/" + q;
          den = cpp_int(q);
        }
        const cpp_int expected = ((num % den) << bits) / den;
        if (word_of(FixedPoint::parse(bits, literal)) != expected) {
          return Outcome{false, literal + " at L = " + std::to_string(bits)};
        }
      }
    }
    return Outcome{true, {}};
  });

  c.run("arc distance is symmetric and lies in [0, 1/2]", [&] {
    Rng rng(derive_seed(options.seed, 0xf3, 0));
    for (int t = 0; t < trials * 10; ++t) {
      FixedPoint a(256), b(256);
      for (int i = 0; i < 4; ++i) {
        a.set_limb(i, rng());
        b.set_limb(i, rng());
      }
      const double d = arc_distance(a, b);
      if (d < 0.0 || d > 0.5 || d != arc_distance(b, a) || arc_distance(a, a) != 0.0) return Outcome{false, num(d)};
    }
    return Outcome{true, {}};
  });

  return c.take();
}

std::vector<PropertyResult> action_properties(const SuiteOptions& options) {
  Collector c("action");

  c.run("closed form equals iterated generators", [&] {
    const std::vector<SemigroupAction> actions = {
        builtin_action("cone-restriction", "doubling_tripling"),
        builtin_action("remark-5-2", "product"),
        builtin_action("shift", "shift"),
    };
    int checked = 0;
    for (const SemigroupAction& a : actions) {
      const int dim = a.semigroup().dim();
      const auto elements = enumerate_in_box(a.semigroup(), dim == 1 ? 30 : 6);
      for (int s = 0; s < (options.quick ? 5 : 20); ++s) {
        const Point x = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0xa1, static_cast<std::uint64_t>(s)));
        for (const Element& g : elements) {
          Point y = x;
          for (int i = 0; i < dim; ++i) {
            for (std::int64_t t = 0; t < g[i]; ++t) y = a.apply(unit(dim, i), y);
          }
          if (!(a.apply(g, x) == y)) return Outcome{false, a.describe() + " at " + to_string(g)};
          ++checked;
        }
      }
    }
    return Outcome{true, std::to_string(checked) + " evaluations"};
  });

  c.run("expanding maps stop at the precision budget", [&] {
    const SemigroupAction a = builtin_action("doubling", "doubling");
    const Point x = sample_point(a.space(), a.measure(), options.seed);
    const int budget = a.space().budget();
    a.apply(Element{budget}, x);
    try {
      a.apply(Element{budget + 1}, x);
    } catch (const PrecisionExhausted&) {
      return Outcome{true, "budget " + std::to_string(budget)};
    }
    return Outcome{false, "no PrecisionExhausted past the budget"};
  });

  c.run("generators commute and non-commuting maps are rejected", [&] {
    for (const auto& [cfg, sys] : {std::pair{"cone-restriction", "doubling_tripling"}, std::pair{"remark-5-2", "product"}}) {
      const SemigroupAction a = builtin_action(cfg, sys);
      const double d = commutation_defect(a, Metric::base(a.space()), 50, options.seed);
      if (d != 0.0) return Outcome{false, std::string(sys) + ": defect " + num(d)};
    }
    try {
      parse_config("[system bad]\nsemigroup = full_lattice 2\nfactors = circle\ngen.1 = mul(2)\ngen.2 = rot(1/3)\n")
          .system("bad")
          .build();
    } catch (const Error&) {
      return Outcome{true, {}};
    }
    return Outcome{false, "x2 and a rotation by 1/3 were accepted"};
  });

  c.run("rotation rigidity times are the continued-fraction denominators", [&] {
    const ExperimentConfig cfg = builtin("rotation");
    const SemigroupAction a = cfg.system("rotation").build();
    const Metric m = cfg.system("rotation").build_metric();
    const std::string alpha = cfg.system("rotation").maps[0][0].substr(4, cfg.system("rotation").maps[0][0].size() - 5);
    std::vector<std::int64_t> denominators = convergent_denominators(alpha, 2000);
    if (denominators.size() > 8) denominators.erase(denominators.begin(), denominators.end() - 8);
    const auto times = rigidity_schedule(a, m, 2000, 64, 8, options.seed);
    std::vector<std::int64_t> found;
    for (const Element& t : times) found.push_back(t[0]);
    std::ostringstream os;
    for (std::int64_t q : found) os << q << ' ';
    if (found != denominators) return Outcome{false, "times " + os.str()};
    const auto values = uniform_rigidity_probe(a, m, times, 64, options.seed);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i && !(values[i] < values[i - 1])) return Outcome{false, "probe not decreasing"};
      if (std::abs(values[i] - distance_to_integer(alpha, found[i])) > 1e-12) return Outcome{false, "probe != ||q alpha||"};
    }
    if (!(values.back() < 1e-3)) return Outcome{false, "probe ends at " + num(values.back())};
    return Outcome{true, "times " + os.str() + "probe ends at " + num(values.back())};
  });

  return c.take();
}

std::vector<PropertyResult> metric_properties(const SuiteOptions& options) {
  Collector c("metric");
  const int triples = options.quick ? 1000 : 10000;

  // Arc distances are exact on the words and rounded once to double, so the
  // inequality can fail by a few units in the last place of 1/2; cylinder
  // distances are powers of two and must satisfy it exactly.
  c.run("triangle inequality on " + std::to_string(triples) + " triples", [&] {
    constexpr double kArcRounding = 0x1.0p-51;
    struct Case {
      std::string label;
      SemigroupAction action;
      Metric metric;
      double tolerance;
    };
    std::vector<Case> cases;
    for (const auto& [cfg, sys] : {std::pair{"doubling", "doubling"}, std::pair{"remark-5-2", "product"}}) {
      cases.push_back({sys, builtin_action(cfg, sys), builtin_metric(cfg, sys), kArcRounding});
    }
    cases.push_back({"shift", builtin_action("shift", "shift"), builtin_metric("shift", "shift"), 0.0});
    for (const char* name : {"doubling", "shift"}) {
      const auto a = std::make_shared<const SemigroupAction>(builtin_action(name, name));
      cases.push_back({std::string("d_G^10 ") + name, *a, Metric::sup_truncated(Metric::base(a->space()), a, 10),
                       std::string(name) == "shift" ? 0.0 : kArcRounding});
    }
    std::string detail;
    for (const Case& k : cases) {
      double worst = 0.0;
      for (int t = 0; t < triples; ++t) {
        Point p[3];
        for (int i = 0; i < 3; ++i) {
          p[i] = sample_point(k.action.space(), k.action.measure(),
                              derive_seed(options.seed, 0x3e, static_cast<std::uint64_t>(3 * t + i)));
        }
        const double excess = k.metric.dist(p[0], p[2]) - (k.metric.dist(p[0], p[1]) + k.metric.dist(p[1], p[2]));
        worst = std::max(worst, excess);
      }
      if (worst > k.tolerance) return Outcome{false, k.label + ": excess " + num(worst)};
      detail += (detail.empty() ? "" : ", ") + k.label + " " + num(worst);
    }
    return Outcome{true, "worst excess: " + detail};
  });

  c.run("truncated sup-metric is monotone in the box", [&] {
    for (const auto& [cfg, sys] : {std::pair{"doubling", "doubling"}, std::pair{"cone-restriction", "doubling_tripling"},
                                   std::pair{"rotation", "rotation"}}) {
      const SemigroupAction a = builtin_action(cfg, sys);
      const Metric m = builtin_metric(cfg, sys);
      const std::int64_t top = a.semigroup().dim() == 1 ? 40 : 12;
      for (int s = 0; s < (options.quick ? 20 : 100); ++s) {
        const Point x = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x3f, 2 * static_cast<std::uint64_t>(s)));
        const Point y = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x3f, 2 * static_cast<std::uint64_t>(s) + 1));
        double prev = -1.0;
        for (std::int64_t n = 0; n <= top; ++n) {
          const double v = dG_truncated(a, m, x, y, n);
          if (v < prev) return Outcome{false, std::string(sys) + " at n = " + std::to_string(n)};
          prev = v;
        }
      }
    }
    return Outcome{true, {}};
  });

  c.run("circle ball mass is the same at 20 centers", [&] {
    const StateSpace space = StateSpace::circle();
    const MeasureSpec haar = MeasureSpec::for_space(space);
    const Metric m = Metric::base(space);
    const int samples = options.quick ? 4000 : 20000;
    std::vector<Estimate> e;
    for (int i = 0; i < 20; ++i) {
      const Point center = sample_point(space, haar, derive_seed(options.seed, 0xb0, static_cast<std::uint64_t>(i)));
      e.push_back(ball_measure_estimate(space, haar, m, center, 0.1, samples,
                                        derive_seed(options.seed, 0xb1, static_cast<std::uint64_t>(i))));
    }
    double mean = 0.0;
    for (const Estimate& v : e) mean += v.value / 20.0;
    double worst = 0.0;
    for (const Estimate& v : e) worst = std::max(worst, std::abs(v.value - mean) / v.std_error);
    return Outcome{worst <= 3.0, "mean " + num(mean) + ", worst deviation " + num(worst) + " standard errors"};
  });

  c.run("shift ball of radius 1/8 has mass 1/8", [&] {
    const StateSpace space = StateSpace::shift();
    const MeasureSpec bern = MeasureSpec::for_space(space, 0.5);
    const Point center = sample_point(space, bern, options.seed);
    const Estimate e = ball_measure_estimate(space, bern, Metric::base(space), center, 0.125,
                                             options.quick ? 4000 : 20000, options.seed);
    return Outcome{std::abs(e.value - 0.125) <= 3.0 * e.std_error, num(e.value) + " +- " + num(e.std_error)};
  });

  c.run("the sup-metric is 1-Lipschitz away from the truncation boundary", [&] {
    const auto a = std::make_shared<const SemigroupAction>(builtin_action("doubling", "doubling"));
    const Metric dG = Metric::sup_truncated(Metric::base(a->space()), a, 20);
    const LipschitzDefect d = lipschitz_defect(*a, dG, options.quick ? 20 : 100, 10, options.seed);
    return Outcome{d.certified_defect <= 1e-12, "certified " + num(d.certified_defect) + ", raw " + num(d.defect) +
                                                    ", boundary pairs " + std::to_string(d.boundary_pairs)};
  });

  c.run("rotations are isometries of the arc metric", [&] {
    const SemigroupAction a = builtin_action("rotation", "rotation");
    const double d = isometry_defect(a, builtin_metric("rotation", "rotation"), options.quick ? 50 : 200, 50, options.seed);
    return Outcome{d <= 1e-12, "defect " + num(d)};
  });

  return c.take();
}

std::vector<PropertyResult> sensitivity_properties(const SuiteOptions& options) {
  Collector c("sensitivity");
  const int pairs = options.quick ? 20 : 100;

  c.run("separation grows with the box and shrinks with the anchor", [&] {
    const SemigroupAction a = builtin_action("shift", "shift");
    const Metric m = builtin_metric("shift", "shift");
    for (int s = 0; s < pairs; ++s) {
      const Point x = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x51, 2 * static_cast<std::uint64_t>(s)));
      const Point y = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x51, 2 * static_cast<std::uint64_t>(s) + 1));
      for (std::int64_t h = 1; h <= 6; ++h) {
        double prev = -1.0;
        for (std::int64_t n = h; n <= 12; ++n) {
          const double v = separation(a, m, x, y, n, Element{h});
          if (v < prev) return Outcome{false, "not monotone in n"};
          if (h > 1 && v > separation(a, m, x, y, n, Element{h - 1})) return Outcome{false, "not antitone in the anchor"};
          prev = v;
        }
      }
    }
    try {
      separation(a, m, sample_point(a.space(), a.measure(), 1), sample_point(a.space(), a.measure(), 2), 3, Element{4});
    } catch (const EmptyTail&) {
      return Outcome{true, {}};
    }
    return Outcome{false, "empty tail accepted"};
  });

  c.run("limsup is the minimum of the anchored separations", [&] {
    const SemigroupAction a = builtin_action("doubling", "doubling");
    const Metric m = builtin_metric("doubling", "doubling");
    SensitivityConfig cfg;
    cfg.boxes = {20, 40};
    const auto anchors = resolve_anchors(a.semigroup(), cfg);
    for (int s = 0; s < pairs; ++s) {
      const Point x = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x52, 2 * static_cast<std::uint64_t>(s)));
      const Point y = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x52, 2 * static_cast<std::uint64_t>(s) + 1));
      const LimsupValue l = limsup_separation(a, m, x, y, cfg);
      double expected = 1.0;
      for (const Element& h : anchors) expected = std::min(expected, separation(a, m, x, y, 40, h));
      if (l.value != expected) return Outcome{false, num(l.value) + " vs " + num(expected)};
    }
    return Outcome{true, {}};
  });

  c.run("rotation limsup equals the initial distance", [&] {
    const SemigroupAction a = builtin_action("rotation", "rotation");
    const Metric m = builtin_metric("rotation", "rotation");
    SensitivityConfig cfg;
    cfg.boxes = {20, 40};
    double worst = 0.0;
    for (int s = 0; s < pairs; ++s) {
      const Point x = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x53, 2 * static_cast<std::uint64_t>(s)));
      const Point y = sample_point(a.space(), a.measure(), derive_seed(options.seed, 0x53, 2 * static_cast<std::uint64_t>(s) + 1));
      worst = std::max(worst, std::abs(limsup_separation(a, m, x, y, cfg).value - m.dist(x, y)));
    }
    return Outcome{worst <= 1e-12, "worst " + num(worst)};
  });

  c.run("doubling separates 0 and 1/3 by exactly 1/3", [&] {
    const SemigroupAction a = builtin_action("doubling", "doubling");
    const Metric m = builtin_metric("doubling", "doubling");
    SensitivityConfig cfg;
    cfg.boxes = {20, 40};
    const Point x = make_point(a.space(), std::vector<std::string>{"0"});
    const Point y = make_point(a.space(), std::vector<std::string>{"1/3"});
    const LimsupValue l = limsup_separation(a, m, x, y, cfg);
    const double exact = rational_orbit_separation(2, 0, 1, 1, 3, 5, 40);
    return Outcome{std::abs(l.value - 1.0 / 3.0) <= 1e-12 && std::abs(l.value - exact) <= 1e-12 && l.plateaued,
                   "limsup " + num(l.value) + ", exact " + num(exact)};
  });

  c.run("shift limsup matches the first differing symbol", [&] {
    const SemigroupAction a = builtin_action("shift", "shift");
    const Metric m = builtin_metric("shift", "shift");
    SensitivityConfig cfg;
    cfg.boxes = {8, 16};
    const std::int64_t last_anchor = resolve_anchors(a.semigroup(), cfg).back()[0];
    for (int k : {0, 3, 5, 9, 16, 17, 24, 40}) {
      Point x = make_point(a.space(), std::vector<double>{0.0});
      Point y = x;
      y.coords[0].value.set_bit(k, true);
      const double got = limsup_separation(a, m, x, y, cfg).value;
      const double exact = shift_limsup_exact(x.coords[0], y.coords[0], last_anchor, 16);
      const double expected = k <= 16 ? (k >= last_anchor ? 1.0 : 0.0) : std::ldexp(1.0, -(k - 16));
      if (got != exact || got != expected) {
        return Outcome{false, "difference at " + std::to_string(k) + ": " + num(got) + " vs " + num(exact)};
      }
    }
    return Outcome{true, {}};
  });

  c.run("quantile ranks and bands", [&] {
    const bool ok = quantile_rank(400, 0.05) == 19 && quantile_rank(20, 0.05) == 0 && quantile_rank(1, 0.5) == 0;
    const auto band = quantile_band(400, 0.05);
    return Outcome{ok && band.first <= 19 && band.second >= 19 && band.second < 400,
                   "band " + std::to_string(band.first) + ".." + std::to_string(band.second)};
  });

  c.run("null radius separates rotation and identity from doubling", [&] {
    const int samples = options.quick ? 200 : 1000;
    const auto radius = [&](const SemigroupAction& a, const Metric& m) {
      return null_radius_estimate(a, m, sample_point(a.space(), a.measure(), options.seed), 100, samples, 0.05,
                                  options.seed);
    };
    const double rot = radius(builtin_action("rotation", "rotation"), builtin_metric("rotation", "rotation"));
    const SystemSpec id = parse_config("[system id]\nsemigroup = full_lattice 1\nfactors = circle\ngen.1 = id\n").system("id");
    const double ident = radius(id.build(), id.build_metric());
    const double dbl = radius(builtin_action("doubling", "doubling"), builtin_metric("doubling", "doubling"));
    return Outcome{rot == 0.0 && ident == 0.0 && dbl >= 0.2,
                   "rotation " + num(rot) + ", identity " + num(ident) + ", doubling " + num(dbl)};
  });

  c.run("estimates do not depend on the thread count", [&] {
    const SemigroupAction a = builtin_action("doubling", "doubling");
    const Metric m = builtin_metric("doubling", "doubling");
    SensitivityConfig cfg;
    cfg.boxes = {10, 20};
    cfg.n_x = 6;
    cfg.n_y = 40;
    cfg.seed = options.seed;
    const SensitivityReport one = estimate_sensitivity_constant(a, m, cfg);
    cfg.threads = 4;
    const SensitivityReport four = estimate_sensitivity_constant(a, m, cfg);
    ExperimentReport r1, r4;
    r1.systems.emplace_back().sensitivity = one;
    r4.systems.emplace_back().sensitivity = four;
    return Outcome{render_records(r1) == render_records(r4) && one.delta_hat == four.delta_hat, {}};
  });

  return c.take();
}

std::vector<PropertyResult> subsemigroup_properties(const SuiteOptions& options) {
  Collector c("subsemigroup");
  const std::int64_t scale = options.quick ? 200 : 1000;
  const Semigroup N = Semigroup::full_lattice(1);
  const Semigroup N2 = Semigroup::full_lattice(2);
  const SubSemigroupSpec cone = SubSemigroupSpec::cone(N2, Element{1, 0}, Element{1, 1});

  c.run("syndetic certificates for kN are sound at box " + std::to_string(scale), [&] {
    for (std::int64_t k = 1; k <= 10; ++k) {
      const SubSemigroupSpec H = SubSemigroupSpec::scaled(N, k);
      std::vector<Element> F;
      for (std::int64_t f = 0; f < k; ++f) F.push_back(Element{f});
      const SyndeticCertificate cert = is_syndetic(N, H, F, scale);
      if (!cert.syndetic || static_cast<std::int64_t>(cert.cover.size()) != scale + 1) {
        return Outcome{false, "k = " + std::to_string(k)};
      }
      for (const auto& [g, f] : cert.cover) {
        if (!H.contains(f + g) || std::find(F.begin(), F.end(), f) == F.end()) {
          return Outcome{false, "bad cover entry at k = " + std::to_string(k)};
        }
      }
    }
    const SubSemigroupSpec H2 = SubSemigroupSpec::scaled(N2, 2);
    const SyndeticCertificate cert2 =
        is_syndetic(N2, H2, {Element{0, 0}, Element{0, 1}, Element{1, 0}, Element{1, 1}}, options.quick ? 20 : 60);
    return Outcome{cert2.syndetic, "k = 1..10, and 2N^2 with F = {0,1}^2"};
  });

  c.run("kN is not thick for k >= 2", [&] {
    for (std::int64_t k = 2; k <= 10; ++k) {
      if (is_thick(N, SubSemigroupSpec::scaled(N, k), {1}).thick) return Outcome{false, "k = " + std::to_string(k)};
    }
    return Outcome{is_thick(N, SubSemigroupSpec::scaled(N, 1), {1, 5}).thick, {}};
  });

  c.run("cone witnesses translate whole boxes into the cone", [&] {
    std::vector<std::int64_t> sizes = {1, 2, 5, 10};
    if (!options.quick) sizes.insert(sizes.end(), {20, 30});
    const ThickResult t = is_thick(N2, cone, sizes);
    if (!t.thick) return Outcome{false, "not thick"};
    std::string witnesses;
    for (const ThickWitness& w : t.witnesses) {
      if (!w.p) return Outcome{false, "no witness at size " + std::to_string(w.size)};
      if (!(*w.p == Element{w.size, 0})) return Outcome{false, "witness " + to_string(*w.p)};
      for (const Element& v : enumerate_in_box(N2, w.size)) {
        if (!cone.contains(*w.p + v)) return Outcome{false, "witness fails at size " + std::to_string(w.size)};
      }
      witnesses += to_string(*w.p) + " ";
    }
    return Outcome{true, witnesses};
  });

  c.run("the cone has no syndetic witness in Box(10) at box 100", [&] {
    const SyndeticSearch s = find_syndetic_witness(N2, cone, 10, options.quick ? 40 : 100);
    std::string detail = s.uncoverable.empty() ? std::string{} : "uncoverable " + to_string(s.uncoverable.front());
    return Outcome{!s.witness.has_value() && !s.uncoverable.empty(), detail};
  });

  c.run("the syndetic search finds {0, ..., k-1} for kN", [&] {
    for (std::int64_t k = 1; k <= 3; ++k) {
      const SyndeticSearch s = find_syndetic_witness(N, SubSemigroupSpec::scaled(N, k), -1, 100);
      std::vector<Element> F;
      for (std::int64_t f = 0; f < k; ++f) F.push_back(Element{f});
      if (!s.witness || *s.witness != F || !s.minimal) return Outcome{false, "k = " + std::to_string(k)};
    }
    return Outcome{true, {}};
  });

  c.run("restricted actions agree with the parent at embedded elements", [&] {
    const SemigroupAction doubling = builtin_action("doubling", "doubling");
    const SubSemigroupSpec three_five = SubSemigroupSpec::generated(N, {Element{3}, Element{5}});
    const double d1 = restriction_defect(doubling, restrict_action(doubling, three_five, {Element{3}, Element{5}}), 30, 8,
                                         options.seed);
    const SemigroupAction shift = builtin_action("shift", "shift");
    const SubSemigroupSpec three = SubSemigroupSpec::scaled(N, 3);
    const double d2 = restriction_defect(shift, restrict_action(shift, three, three.default_generators()), 30, 20,
                                         options.seed);
    const ExperimentConfig rot = builtin("rotation");
    const std::string alpha = rot.system("rotation").maps[0][0];
    const SemigroupAction diagonal =
        parse_config("[system diag]\nsemigroup = full_lattice 2\nfactors = circle, circle\ngen.1 = mul(2), id\ngen.2 = id, " +
                     alpha + "\n")
            .system("diag")
            .build();
    const SubSemigroupSpec diag = SubSemigroupSpec::generated(N2, {Element{1, 1}});
    const double d3 = restriction_defect(diagonal, restrict_action(diagonal, diag, {Element{1, 1}}), 30, 20, options.seed);
    return Outcome{d1 == 0.0 && d2 == 0.0 && d3 <= 1e-12,
                   "<3,5> on doubling " + num(d1) + ", 3N on the shift " + num(d2) + ", diagonal " + num(d3)};
  });

  return c.take();
}

std::vector<PropertyResult> experiment_properties(const SuiteOptions& options) {
  Collector c("experiments");

  const auto small = [&](const std::string& name) {
    ExperimentConfig cfg = builtin(name);
    cfg.override_seed(options.seed);
    cfg.sensitivity.boxes = {10, 20};
    cfg.sensitivity.n_x = 4;
    cfg.sensitivity.n_y = 24;
    cfg.sensitivity.isometry_samples = 20;
    cfg.sensitivity.rigidity_scan = 300;
    cfg.null_samples = 50;
    return cfg;
  };
  const auto rendered = [](const ExperimentReport& r) { return render_report(r) + render_records(r) + render_summary(r); };

  c.run("reports are byte-identical across runs and thread counts", [&] {
    const ExperimentConfig cfg = small("dichotomy");
    RunOptions one{1, true};
    RunOptions three{3, true};
    const std::string a = rendered(run_dichotomy_showcase(cfg, one));
    const std::string b = rendered(run_dichotomy_showcase(cfg, one));
    const std::string d = rendered(run_dichotomy_showcase(cfg, three));
    return Outcome{a == b && a == d, std::to_string(a.size()) + " bytes"};
  });

  c.run("the config hash follows the content", [&] {
    ExperimentConfig cfg = builtin("dichotomy");
    const std::uint64_t h = cfg.hash();
    const bool reparsed = parse_config(*builtin_config("dichotomy")).hash() == h;
    cfg.sensitivity.threads = 8;
    const bool threads_ignored = cfg.hash() == h;
    cfg.override_seed(cfg.seed + 1);
    return Outcome{reparsed && threads_ignored && cfg.hash() != h, hex64(h)};
  });

  c.run("restricting to 1N reproduces the base system", [&] {
    const ExperimentReport r = run_powers_experiment(small("powers"), 1, RunOptions{1, true});
    for (const auto& [k, v] : r.facts) {
      if (k == "identical_to_base") return Outcome{v == "yes", v};
    }
    return Outcome{false, "no identical_to_base fact"};
  });

  c.run("every report carries its provenance fields", [&] {
    const std::string text = render_report(run_factor_counterexample(small("remark-5-2"), RunOptions{1, true}));
    for (const char* key : {"config_hash\t", "seed\t", "box_schedule\t", "tail_anchors\t", "precision_budget\t", "q\t",
                            "[assumptions]", "assumption\t"}) {
      if (text.find(key) == std::string::npos) return Outcome{false, std::string("missing ") + key};
    }
    return Outcome{true, {}};
  });

  return c.take();
}

std::vector<std::string> suite_names() {
  return {"semigroup", "fixed_point", "action", "metric", "sensitivity", "subsemigroup", "experiments"};
}

std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "semigroup") return semigroup_properties(options);
  if (name == "fixed_point") return fixed_point_properties(options);
  if (name == "action") return action_properties(options);
  if (name == "metric") return metric_properties(options);
  if (name == "sensitivity") return sensitivity_properties(options);
  if (name == "subsemigroup") return subsemigroup_properties(options);
  if (name == "experiments") return experiment_properties(options);
  throw Error("unknown property suite '" + name + "'");
}

std::vector<PropertyResult> all_properties(const SuiteOptions& options) {
  std::vector<PropertyResult> out;
  for (const std::string& name : suite_names()) {
    auto part = run_suite(name, options);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace semisens::checks
