#include <doctest.h>

#include "helpers.hpp"
#include "semisens/checks/oracles.hpp"
#include "semisens/sensitivity.hpp"

using namespace semisens;
using semisens::test::system_of;

namespace {

SensitivityConfig small() {
  SensitivityConfig c;
  c.boxes = {20, 40};
  c.n_x = 10;
  c.n_y = 60;
  c.isometry_samples = 40;
  c.rigidity_scan = 1000;
  return c;
}

struct Sys {
  SemigroupAction action;
  Metric metric;
};

Sys sys(const std::string& config, const std::string& name) {
  const SystemSpec s = system_of(config, name);
  return {s.build(), s.build_metric()};
}

Sys identity() {
  const SystemSpec s = test::inline_system("semigroup = full_lattice 1\nfactors = circle\ngen.1 = id\n");
  return {s.build(), s.build_metric()};
}

}  // namespace

TEST_SUITE("sensitivity") {
  TEST_CASE("config validation names the field") {
    SensitivityConfig c;
    c.boxes = {100, 50};
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("boxes"), ConfigError);
    c = SensitivityConfig{};
    c.q = 1.5;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("q"), ConfigError);
    c = SensitivityConfig{};
    c.n_y = 0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_y"), ConfigError);
    CHECK_NOTHROW(SensitivityConfig{}.validate());
  }

  TEST_CASE("separation") {
    const Sys d = sys("doubling", "doubling");
    const Point zero = make_point(d.action.space(), std::vector<std::string>{"0"});
    const Point third = make_point(d.action.space(), std::vector<std::string>{"1/3"});
    CHECK(separation(d.action, d.metric, zero, third, 10, Element{1}) == doctest::Approx(1.0 / 3.0));

    const Sys r = sys("rotation", "rotation");
    const Point x = sample_point(r.action.space(), r.action.measure(), 1);
    const Point y = sample_point(r.action.space(), r.action.measure(), 2);
    CHECK(std::abs(separation(r.action, r.metric, x, y, 40, Element{7}) - r.metric.dist(x, y)) <= 1e-12);

    const Sys s = sys("shift", "shift");
    Point a = make_point(s.action.space(), std::vector<double>{0.0});
    Point b = a;
    b.coords[0].value.set_bit(5, true);
    CHECK(separation(s.action, s.metric, a, b, 5, Element{1}) == 1.0);
    CHECK(separation(s.action, s.metric, a, b, 4, Element{1}) == 0.5);
    CHECK_THROWS_AS(separation(s.action, s.metric, a, b, 4, Element{5}), EmptyTail);
  }

  TEST_CASE("limsup separation") {
    const SensitivityConfig c = small();
    const Sys id = identity();
    const Point x = sample_point(id.action.space(), id.action.measure(), 1);
    const Point y = sample_point(id.action.space(), id.action.measure(), 2);
    CHECK(limsup_separation(id.action, id.metric, x, y, c).value == id.metric.dist(x, y));

    const Sys r = sys("rotation", "rotation");
    CHECK(std::abs(limsup_separation(r.action, r.metric, x, y, c).value - r.metric.dist(x, y)) <= 1e-12);

    const Sys d = sys("doubling", "doubling");
    const LimsupValue l = limsup_separation(d.action, d.metric, make_point(d.action.space(), std::vector<std::string>{"0"}),
                                            make_point(d.action.space(), std::vector<std::string>{"1/3"}), c);
    CHECK(l.value == doctest::Approx(1.0 / 3.0));
    CHECK(l.plateaued);
    CHECK(l.value == doctest::Approx(checks::rational_orbit_separation(2, 0, 1, 1, 3, 5, 40)));
  }

  TEST_CASE("anchors default to the cofinal schedule") {
    SensitivityConfig c = small();
    CHECK(test::firsts(resolve_anchors(Semigroup::full_lattice(1), c)) == std::vector<std::int64_t>{1, 2, 3, 4, 5});
    c.anchors = {Element{4}};
    CHECK(resolve_anchors(Semigroup::full_lattice(1), c) == std::vector<Element>{Element{4}});
  }

  TEST_CASE("quantiles") {
    CHECK(quantile_rank(400, 0.05) == 19);
    CHECK(quantile_rank(60, 0.05) == 2);
    const auto band = quantile_band(400, 0.05);
    CHECK(band.first == 5);
    CHECK(band.second == 33);
  }

  TEST_CASE("seeds are shared and distinct") {
    CHECK(basepoint_seed(1, 0) != basepoint_seed(1, 1));
    CHECK(companion_seed(1, 0, 1) != companion_seed(1, 1, 0));
    CHECK(basepoint_seed(1, 3) != basepoint_seed(2, 3));
  }

  TEST_CASE("estimates on both sides of the dichotomy") {
    const SensitivityConfig c = small();
    const Sys r = sys("rotation", "rotation");
    const SensitivityReport rr = classify(r.action, r.metric, c);
    CHECK(rr.verdict == Verdict::IsometryEvidence);
    CHECK(rr.delta_hat > 0.0);
    CHECK(rr.isometry_defect <= 1e-12);

    const Sys d = sys("doubling", "doubling");
    const SensitivityReport dr = classify(d.action, d.metric, c);
    CHECK(dr.verdict == Verdict::SensitiveEvidence);
    CHECK(dr.delta_hat >= 0.2);
    CHECK(dr.band_lo <= dr.delta_hat);
    CHECK(dr.delta_hat <= dr.band_hi);
    CHECK(dr.delta_hat_exists >= dr.delta_hat);
    CHECK(dr.pairs.size() == static_cast<std::size_t>(c.n_x * c.n_y));

    const Sys p = sys("remark-5-2", "product");
    const SensitivityReport pr = classify(p.action, p.metric, c);
    CHECK(pr.verdict == Verdict::SensitiveEvidence);
    CHECK(pr.delta_hat >= 0.2);

    const Sys id = identity();
    CHECK(classify(id.action, id.metric, c).verdict == Verdict::IsometryEvidence);
  }

  TEST_CASE("verdict rules") {
    SensitivityReport r;
    r.isometry_defect = 0.0;
    r.rigidity_values = {0.1, 1e-4};
    CHECK(decide_verdict(r) == Verdict::IsometryEvidence);
    r.isometry_defect = 0.3;
    r.delta_hat = 0.4;
    r.plateau_fraction = 0.99;
    CHECK(decide_verdict(r) == Verdict::SensitiveEvidence);
    r.plateau_fraction = 0.5;
    std::string why;
    CHECK(decide_verdict(r, &why) == Verdict::Inconclusive);
    CHECK_FALSE(why.empty());
    r.plateau_fraction = 0.99;
    r.delta_hat = 0.01;
    CHECK(decide_verdict(r) == Verdict::Inconclusive);
  }

  TEST_CASE("null radius") {
    const Sys r = sys("rotation", "rotation");
    const Point x = sample_point(r.action.space(), r.action.measure(), 3);
    CHECK(null_radius_estimate(r.action, r.metric, x, 100, 300) == 0.0);
    const Sys id = identity();
    CHECK(null_radius_estimate(id.action, id.metric, x, 100, 300) == 0.0);
    const Sys d = sys("doubling", "doubling");
    CHECK(null_radius_estimate(d.action, d.metric, x, 100, 300) >= 0.2);
  }

  TEST_CASE("thread count does not change the estimate") {
    SensitivityConfig c = small();
    const Sys d = sys("doubling", "doubling");
    const SensitivityReport one = estimate_sensitivity_constant(d.action, d.metric, c);
    c.threads = 3;
    const SensitivityReport three = estimate_sensitivity_constant(d.action, d.metric, c);
    REQUIRE(one.pairs.size() == three.pairs.size());
    for (std::size_t i = 0; i < one.pairs.size(); ++i) CHECK(one.pairs[i].limsup == three.pairs[i].limsup);
    CHECK(one.delta_hat == three.delta_hat);
  }
}

TEST_SUITE("sensitivity") {
  TEST_CASE("shift scores fall inside the exhaustive cylinder bracket") {
    const SensitivityConfig c = small();
    const Sys s = sys("shift", "shift");
    const SensitivityReport r = estimate_sensitivity_constant(s.action, s.metric, c);
    const std::int64_t a = r.anchors.back()[0];
    for (const BasepointSummary& b : r.basepoints) {
      const Point x = sample_point(s.action.space(), s.action.measure(), basepoint_seed(c.seed, b.x_index));
      const checks::ShiftBracket br = checks::shift_quantile_bracket(x.coords[0], 0.5, a, c.boxes.back(), 8, c.q);
      CHECK(br.lo <= b.score);
      CHECK(b.score <= br.hi);
    }
    CHECK(r.delta_hat >= 0.5);
  }
}
