#include <doctest.h>

#include "semisens/semigroup.hpp"

using namespace semisens;

namespace {

const Semigroup N = Semigroup::full_lattice(1);
const Semigroup N2 = Semigroup::full_lattice(2);
const Semigroup three_five = Semigroup::generated({Element{3}, Element{5}});
const Semigroup two_three = Semigroup::generated({Element{2, 0}, Element{0, 3}});

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("addition is coordinatewise, with identity and associativity") {
    CHECK(Element{1, 2} + Element{3, 0} == Element{4, 2});
    CHECK(Element{1, 2} + Element(2) == Element{1, 2});
    CHECK((Element{2, 0} + Element{0, 3}) + Element{1, 1} == Element{2, 0} + (Element{0, 3} + Element{1, 1}));
    CHECK((Element{2, 0} + Element{0, 3}) + Element{1, 1} == Element{3, 4});
    CHECK_THROWS_AS(add(Element{1}, Element(2)), DimensionMismatch);
  }

  TEST_CASE("membership") {
    CHECK_FALSE(three_five.contains(Element{7}));
    CHECK(three_five.contains(Element{8}));
    CHECK(N2.contains(Element{0, 0}));
    CHECK_FALSE(two_three.contains(Element{1, 3}));
    CHECK(two_three.contains(Element{4, 3}));
    CHECK_FALSE(N.contains(Element{-1}));
    CHECK(Semigroup::cone(Element{1, 0}, Element{1, 1}).contains(Element{3, 3}));
    CHECK_FALSE(Semigroup::cone(Element{1, 0}, Element{1, 1}).contains(Element{3, 4}));
  }

  TEST_CASE("order") {
    CHECK(leq(N2, Element{1, 2}, Element{3, 2}));
    CHECK_FALSE(leq(Semigroup::scaled_lattice(1, 2), Element{2}, Element{5}));
    CHECK_FALSE(leq(three_five, Element{3}, Element{10}));
    CHECK(leq(three_five, Element{3}, Element{11}));
  }

  TEST_CASE("enumeration in a box") {
    CHECK(enumerate_in_box(N, 3) == std::vector<Element>{Element{0}, Element{1}, Element{2}, Element{3}});
    CHECK(enumerate_in_box(Semigroup::scaled_lattice(1, 2), 5) == std::vector<Element>{Element{0}, Element{2}, Element{4}});
    const std::vector<Element> expected = {Element{0, 0}, Element{2, 0}, Element{0, 3}, Element{4, 0}, Element{2, 3},
                                           Element{4, 3}};
    CHECK(enumerate_in_box(two_three, 4) == expected);
  }

  TEST_CASE("tails") {
    CHECK(tail_in_box(N, Element{2}, 4) == std::vector<Element>{Element{2}, Element{3}, Element{4}});
    CHECK(tail_in_box(N2, Element{1, 1}, 2) ==
          std::vector<Element>{Element{1, 1}, Element{1, 2}, Element{2, 1}, Element{2, 2}});
    CHECK(tail_in_box(three_five, Element{3}, 12) ==
          std::vector<Element>{Element{3}, Element{6}, Element{8}, Element{9}, Element{11}, Element{12}});
  }

  TEST_CASE("backward translates") {
    const Semigroup three = Semigroup::scaled_lattice(1, 3);
    CHECK(backward_translate(N, Element{2}, three, 10) ==
          std::vector<Element>{Element{1}, Element{4}, Element{7}, Element{10}});
    CHECK(backward_translate(N, Element{0}, three, 9) ==
          std::vector<Element>{Element{0}, Element{3}, Element{6}, Element{9}});
    // (a, b + 2) lies in the cone iff b + 2 <= a, which excludes (2,1).
    const Semigroup cone = Semigroup::cone(Element{1, 0}, Element{1, 1});
    CHECK(backward_translate(N2, Element{0, 2}, cone, 3) ==
          std::vector<Element>{Element{2, 0}, Element{3, 0}, Element{3, 1}});
  }

  TEST_CASE("cofinal schedules") {
    CHECK(cofinal_schedule(N2, 3).terms == std::vector<Element>{Element{1, 1}, Element{2, 2}, Element{3, 3}});
    CHECK(cofinal_schedule(Semigroup::scaled_lattice(1, 2), 3).terms ==
          std::vector<Element>{Element{2}, Element{4}, Element{6}});
    CHECK(cofinal_schedule(two_three, 2).terms == std::vector<Element>{Element{2, 3}, Element{4, 6}});
  }

  TEST_CASE("cone generators form the Hilbert basis") {
    const Semigroup cone = Semigroup::cone(Element{1, 0}, Element{1, 2});
    CHECK(cone.generators() == std::vector<Element>{Element{1, 0}, Element{1, 1}, Element{1, 2}});
  }
}
