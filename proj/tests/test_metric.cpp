#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "semisens/metric.hpp"

using namespace semisens;
using semisens::test::system_of;

namespace {

std::shared_ptr<const SemigroupAction> shared(const SemigroupAction& a) { return std::make_shared<const SemigroupAction>(a); }

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("base metrics") {
    const StateSpace circle = StateSpace::circle();
    const Metric arc = Metric::base(circle);
    CHECK(arc.dist(make_point(circle, std::vector<double>{0.1}), make_point(circle, std::vector<double>{0.9})) ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK(arc.diameter() == 0.5);

    const StateSpace shift = StateSpace::shift();
    Point x = make_point(shift, std::vector<double>{0.0});
    Point y = x;
    y.coords[0].value.set_bit(3, true);
    y.coords[0].value.set_bit(7, true);
    CHECK(Metric::base(shift).dist(x, y) == 0.125);
    CHECK(Metric::base(shift).dist(x, x) == 0.0);

    const StateSpace torus = StateSpace::torus(2);
    const Metric max = Metric::base(torus);
    CHECK(max.kind() == MetricKind::Max);
    CHECK(max.dist(make_point(torus, std::vector<double>{0.1, 0.2}), make_point(torus, std::vector<double>{0.9, 0.2})) ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(Metric::named("shift", circle), ConfigError);
  }

  TEST_CASE("cylinder metric ignores bits pushed out by shifting") {
    const SemigroupAction a = system_of("shift", "shift").build();
    Point x = make_point(a.space(), std::vector<double>{0.0});
    Point y = x;
    y.coords[0].value.set_bit(240, true);
    const Point tx = a.apply(Element{200}, x);
    const Point ty = a.apply(Element{200}, y);
    CHECK(Metric::base(a.space()).dist(tx, ty) == std::ldexp(1.0, -40));
  }

  TEST_CASE("truncated sup-metric") {
    const SemigroupAction rot = system_of("rotation", "rotation").build();
    const Metric arc = Metric::base(rot.space());
    const Point x = sample_point(rot.space(), rot.measure(), 1);
    const Point y = sample_point(rot.space(), rot.measure(), 2);
    for (std::int64_t n : {0, 1, 10, 100}) CHECK(std::abs(dG_truncated(rot, arc, x, y, n) - arc.dist(x, y)) <= 1e-12);

    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const Point zero = make_point(dbl.space(), std::vector<std::string>{"0"});
    const Point third = make_point(dbl.space(), std::vector<std::string>{"1/3"});
    for (std::int64_t n : {1, 2, 50}) CHECK(dG_truncated(dbl, arc, zero, third, n) == doctest::Approx(1.0 / 3.0));

    const SemigroupAction id = test::inline_system("semigroup = full_lattice 1\nfactors = circle\ngen.1 = id\n").build();
    CHECK(dG_truncated(id, arc, x, y, 30) == arc.dist(x, y));

    const Metric dG = Metric::sup_truncated(arc, shared(dbl), 20);
    CHECK(dG.kind() == MetricKind::SupTruncated);
    CHECK(dG.truncation() == 20);
    CHECK(dG.dist(zero, third) == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("certified sup values") {
    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const Metric arc = Metric::base(dbl.space());
    const Point zero = make_point(dbl.space(), std::vector<std::string>{"0"});
    const Point third = make_point(dbl.space(), std::vector<std::string>{"1/3"});
    const SupValue v = dG_certified(dbl, arc, zero, third, 10);
    CHECK(v.status == TruncationStatus::Plateaued);
    CHECK(v.value == doctest::Approx(1.0 / 3.0));
    // Doubling 150 would need 300 bits: the value stays a lower bound.
    const Point x = sample_point(dbl.space(), dbl.measure(), 1);
    const Point near = make_point(dbl.space(), std::vector<std::string>{"0"});
    const SupValue far = dG_certified(dbl, arc, x, near, 150);
    CHECK(far.value > 0.0);
    CHECK(far.status == TruncationStatus::LowerBound);
  }

  TEST_CASE("Lipschitz and isometry defects") {
    const SemigroupAction rot = system_of("rotation", "rotation").build();
    const Metric arc = Metric::base(rot.space());
    CHECK(lipschitz_defect(rot, arc, 50, 50).defect <= 1e-12);
    CHECK(isometry_defect(rot, arc, 50, 50) <= 1e-12);

    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const std::vector<std::pair<Point, Point>> pair = {
        {make_point(dbl.space(), std::vector<double>{0.0}), make_point(dbl.space(), std::vector<double>{0.05})}};
    CHECK(isometry_defect(dbl, arc, pair, 1) >= 0.05 - 1e-12);
    CHECK(lipschitz_defect(dbl, arc, 50, 5).defect >= 0.05);

    const SemigroupAction rr = test::inline_system(
                                   "semigroup = full_lattice 1\nfactors = circle, circle\ngen.1 = rot(0.3), " +
                                   test::alpha_map() + "\n")
                                   .build();
    CHECK(isometry_defect(rr, Metric::base(rr.space()), 50, 50) <= 1e-12);

    // d_G is 1-Lipschitz; on the shift the truncation boundary is the only source of defect.
    const SemigroupAction shift = system_of("shift", "shift").build();
    const Metric dG = Metric::sup_truncated(Metric::base(shift.space()), shared(shift), 12);
    const LipschitzDefect d = lipschitz_defect(shift, dG, 50, 6);
    CHECK(d.certified_defect == 0.0);
  }

  TEST_CASE("ball masses") {
    const StateSpace circle = StateSpace::circle();
    const MeasureSpec haar = MeasureSpec::for_space(circle);
    const Estimate e = ball_measure_estimate(circle, haar, Metric::base(circle), make_point(circle, std::vector<double>{0.3}),
                                             0.1, 20000, 4);
    CHECK(std::abs(e.value - 0.2) <= 3 * e.std_error);

    const StateSpace shift = StateSpace::shift();
    const MeasureSpec bern = MeasureSpec::for_space(shift, 0.5);
    const Estimate s = ball_measure_estimate(shift, bern, Metric::base(shift), sample_point(shift, bern, 2), 0.125, 20000, 5);
    CHECK(std::abs(s.value - 0.125) <= 3 * s.std_error);
  }
}
