#include <doctest.h>

#include "semisens/checks/properties.hpp"

using namespace semisens::checks;

TEST_SUITE("properties") {
  TEST_CASE("every property suite holds") {
    for (const PropertyResult& r : all_properties(SuiteOptions{})) {
      INFO(r.suite << ": " << r.name << " (" << r.detail << ")");
      CHECK(r.passed);
    }
  }

  TEST_CASE("suites are deterministic per seed") {
    const auto a = run_suite("metric", SuiteOptions{7, true});
    const auto b = run_suite("metric", SuiteOptions{7, true});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].detail == b[i].detail);
    CHECK_THROWS(run_suite("nope", SuiteOptions{}));
  }
}
