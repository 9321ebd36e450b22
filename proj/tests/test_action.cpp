#include <doctest.h>

#include "helpers.hpp"
#include "semisens/action.hpp"
#include "semisens/metric.hpp"

using namespace semisens;
using semisens::test::alpha;
using semisens::test::alpha_map;
using semisens::test::system_of;

TEST_SUITE("action") {
  TEST_CASE("fixed-point literals") {
    CHECK(FixedPoint::parse(64, "1/2").to_double() == 0.5);
    CHECK(FixedPoint::parse(64, "0.25").to_double() == 0.25);
    CHECK(FixedPoint::parse(64, "0.0625") == FixedPoint::parse(64, "1/16"));
    CHECK(FixedPoint::parse(64, "-0.25").to_double() == 0.75);
    CHECK(FixedPoint::parse(64, "7/4").to_double() == 0.75);
    CHECK_THROWS_AS(FixedPoint::parse(64, "1/0"), ConfigError);
    CHECK_THROWS_AS(FixedPoint::parse(64, "0.x"), ConfigError);
    CHECK_THROWS(FixedPoint(32));
  }

  TEST_CASE("doubling 1/3 gives 2/3") {
    const SemigroupAction a = system_of("doubling", "doubling").build();
    const Point y = a.apply(Element{1}, make_point(a.space(), std::vector<std::string>{"1/3"}));
    CHECK(y.coords[0].value == FixedPoint::parse(256, "2/3"));
    CHECK(y.coords[0].consumed == 1);
  }

  TEST_CASE("the identity element acts trivially") {
    const SemigroupAction a = system_of("rotation", "rotation").build();
    const Point x = sample_point(a.space(), a.measure(), 5);
    CHECK(a.apply(Element{0}, x) == x);
  }

  TEST_CASE("product map at g = 2 in closed form") {
    const SemigroupAction a = system_of("remark-5-2", "product").build();
    const Point x = make_point(a.space(), std::vector<std::string>{"1/5", "0.1"});
    const Point y = a.apply(Element{2}, x);
    const FixedPoint al = FixedPoint::parse(256, alpha());
    CHECK(arc_distance(y.coords[0].value, FixedPoint::parse(256, "4/5")) < 1e-70);
    CHECK(y.coords[1].value == FixedPoint::parse(256, "0.1") + al + al);
    CHECK(a.apply(Element{1}, a.apply(Element{1}, x)) == y);
  }

  TEST_CASE("measure samples") {
    const SemigroupAction circle = system_of("doubling", "doubling").build();
    const SemigroupAction shift = system_of("shift", "shift").build();
    const SemigroupAction product = system_of("remark-5-2", "product").build();
    for (std::uint64_t s = 0; s < 50; ++s) {
      const double v = sample_point(circle.space(), circle.measure(), s).coords[0].value.to_double();
      CHECK((v >= 0.0 && v < 1.0));
      CHECK(sample_point(shift.space(), shift.measure(), s).coords[0].value.bits() == 256);
    }
    CHECK(sample_point(circle.space(), circle.measure(), 3) == sample_point(circle.space(), circle.measure(), 3));
    const Point p = sample_point(product.space(), product.measure(), 9);
    CHECK(p.coords.size() == 2);
    CHECK_FALSE(p.coords[0] == p.coords[1]);
  }

  TEST_CASE("orbit tail density") {
    const SemigroupAction rot = system_of("rotation", "rotation").build();
    const Metric arc = Metric::base(rot.space());
    const Point zero = make_point(rot.space(), std::vector<double>{0.0});
    CHECK(orbit_tail_density(rot, arc, zero, Element{0}, 500, 0.05) == doctest::Approx(1.0));
    const SemigroupAction id = test::inline_system("semigroup = full_lattice 1\nfactors = circle\ngen.1 = id\n").build();
    CHECK(orbit_tail_density(id, arc, zero, Element{0}, 100, 0.05) == doctest::Approx(0.1).epsilon(0.02));
    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const double d = orbit_tail_density(dbl, arc, make_point(dbl.space(), std::vector<std::string>{"1/3"}), Element{0},
                                        100, 0.05);
    CHECK(d < 1.0);
    CHECK(d == doctest::Approx(0.2).epsilon(0.05));
  }

  TEST_CASE("uniform rigidity probe") {
    const SemigroupAction id = test::inline_system("semigroup = full_lattice 1\nfactors = circle\ngen.1 = id\n").build();
    const Metric arc = Metric::base(id.space());
    for (double v : uniform_rigidity_probe(id, arc, {Element{1}, Element{7}, Element{40}}, 16)) CHECK(v == 0.0);
    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    for (double v : uniform_rigidity_probe(dbl, arc, {Element{1}, Element{7}, Element{40}}, 64)) CHECK(v > 0.4);
    const SemigroupAction rot = system_of("rotation", "rotation").build();
    const auto values = uniform_rigidity_probe(rot, arc, {Element{12}, Element{169}, Element{985}}, 16);
    CHECK(values[0] > values[1]);
    CHECK(values[1] > values[2]);
    CHECK(values[2] < 1e-3);
  }

  TEST_CASE("factor projections") {
    const SemigroupAction product = system_of("remark-5-2", "product").build();
    const SemigroupAction rot = factor_project(product, 1);
    CHECK(rot.space() == StateSpace::circle());
    CHECK(rot.generators()[0][0] == parse_factor_map(alpha_map(), FactorKind::Circle, 256));
    const SemigroupAction dbl = factor_project(product, 0);
    CHECK(dbl.generators()[0][0].multiplier == 2);
    CHECK(reverse_factors(product).generators()[0][0] == rot.generators()[0][0]);
    CHECK_THROWS(factor_project(rot, 0));
  }

  TEST_CASE("precision and membership errors") {
    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const Point x = sample_point(dbl.space(), dbl.measure(), 1);
    CHECK_NOTHROW(dbl.apply(Element{224}, x));
    CHECK_THROWS_AS(dbl.apply(Element{225}, x), PrecisionExhausted);
    CHECK_THROWS_AS(dbl.apply(Element{-1}, x), NotAMember);
    const SemigroupAction rot = system_of("rotation", "rotation").build();
    CHECK_NOTHROW(rot.apply(Element{1000000}, sample_point(rot.space(), rot.measure(), 1)));
  }
}
