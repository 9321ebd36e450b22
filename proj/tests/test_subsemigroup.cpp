#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "semisens/subsemigroup.hpp"

using namespace semisens;
using semisens::test::system_of;

namespace {

const Semigroup N = Semigroup::full_lattice(1);
const Semigroup N2 = Semigroup::full_lattice(2);

std::vector<Element> range(std::int64_t k) {
  std::vector<Element> out;
  for (std::int64_t i = 0; i < k; ++i) out.push_back(Element{i});
  return out;
}

}  // namespace

TEST_SUITE("subsemigroup") {
  TEST_CASE("syndetic certificates") {
    for (std::int64_t k = 1; k <= 10; ++k) {
      const SyndeticCertificate c = is_syndetic(N, SubSemigroupSpec::scaled(N, k), range(k), 1000);
      CHECK(c.syndetic);
      CHECK(c.scale == 1000);
      CHECK(c.cover.size() == 1001);
    }
    CHECK(is_syndetic(N, SubSemigroupSpec::whole(N), {Element{0}}, 50).syndetic);
    const SubSemigroupSpec cone = SubSemigroupSpec::cone(N2, Element{1, 0}, Element{1, 1});
    const SyndeticCertificate c = is_syndetic(N2, cone, enumerate_in_box(N2, 10), 100);
    CHECK_FALSE(c.syndetic);
    REQUIRE_FALSE(c.uncovered.empty());
    CHECK(c.uncovered.front()[0] == 0);
    CHECK(c.uncovered.front()[1] > 10);
    CHECK_THROWS_AS(is_syndetic(N, SubSemigroupSpec::scaled(N, 2), {Element{-1}}, 10), NotAMember);
  }

  TEST_CASE("syndetic witness search") {
    const SyndeticSearch s = find_syndetic_witness(N, SubSemigroupSpec::scaled(N, 3), -1, 100);
    REQUIRE(s.witness);
    CHECK(*s.witness == range(3));
    CHECK(s.minimal);
    CHECK(s.f_bound == 400);
    const SyndeticSearch whole = find_syndetic_witness(N2, SubSemigroupSpec::whole(N2), -1, 20);
    REQUIRE(whole.witness);
    CHECK(*whole.witness == std::vector<Element>{Element{0, 0}});
    const SyndeticSearch cone =
        find_syndetic_witness(N2, SubSemigroupSpec::cone(N2, Element{1, 0}, Element{1, 1}), 10, 100);
    CHECK_FALSE(cone.witness);
    CHECK_FALSE(cone.uncoverable.empty());
    const SyndeticSearch big = find_syndetic_witness(N, SubSemigroupSpec::scaled(N, 5), -1, 60);
    REQUIRE(big.witness);
    CHECK(big.witness->size() == 5);
    CHECK_FALSE(big.minimal);
  }

  TEST_CASE("thick witnesses") {
    const SubSemigroupSpec cone = SubSemigroupSpec::cone(N2, Element{1, 0}, Element{1, 1});
    const ThickResult t = is_thick(N2, cone, {1, 2, 5, 10, 20, 30});
    CHECK(t.thick);
    for (const ThickWitness& w : t.witnesses) {
      REQUIRE(w.p);
      CHECK(*w.p == Element{w.size, 0});
    }
    for (std::int64_t k = 2; k <= 6; ++k) CHECK_FALSE(is_thick(N, SubSemigroupSpec::scaled(N, k), {1}).thick);
    const ThickResult whole = is_thick(N, SubSemigroupSpec::whole(N), {5});
    CHECK(whole.thick);
    CHECK(*whole.witnesses[0].p == Element{0});
  }

  TEST_CASE("sub-semigroup specs") {
    CHECK_THROWS(SubSemigroupSpec::generated(Semigroup::scaled_lattice(1, 2), {Element{3}}));
    const SubSemigroupSpec g = SubSemigroupSpec::generated(N, {Element{3}, Element{5}});
    CHECK(g.contains(Element{8}));
    CHECK_FALSE(g.contains(Element{7}));
    auto gens = SubSemigroupSpec::scaled(N2, 2).default_generators();
    std::sort(gens.begin(), gens.end(), graded_lex_less);
    CHECK(gens == std::vector<Element>{Element{0, 2}, Element{2, 0}});
  }

  TEST_CASE("restricted actions") {
    const SemigroupAction dbl = system_of("doubling", "doubling").build();
    const RestrictedAction four = restrict_action(dbl, SubSemigroupSpec::scaled(N, 2), {Element{2}});
    CHECK(four.action.generators()[0][0].multiplier == 4);
    CHECK(restriction_defect(dbl, four, 20, 30) == 0.0);

    const RestrictedAction tf = restrict_action(dbl, SubSemigroupSpec::generated(N, {Element{3}, Element{5}}),
                                                {Element{3}, Element{5}});
    const Point x = sample_point(dbl.space(), dbl.measure(), 8);
    CHECK(tf.embed(Element{1, 1}) == Element{8});
    CHECK(tf.action.apply(Element{1, 1}, x) == dbl.apply(Element{8}, x));
    CHECK(restriction_defect(dbl, tf, 20, 8) == 0.0);

    const SemigroupAction pair = test::inline_system("semigroup = full_lattice 2\nfactors = circle, circle\n"
                                                     "gen.1 = mul(2), id\ngen.2 = id, " + test::alpha_map() + "\n")
                                     .build();
    const RestrictedAction diag = restrict_action(pair, SubSemigroupSpec::generated(N2, {Element{1, 1}}), {Element{1, 1}});
    const GeneratorMap& m = diag.action.generators()[0];
    CHECK(m[0].multiplier == 2);
    CHECK(m[1].multiplier == 1);
    CHECK(m[1].offset == FixedPoint::parse(256, test::alpha()));
    CHECK(restriction_defect(pair, diag, 20, 20) <= 1e-12);

    // {3} does not generate <3,5>.
    CHECK_THROWS(restrict_action(dbl, SubSemigroupSpec::generated(N, {Element{3}, Element{5}}), {Element{3}}));
  }
}
