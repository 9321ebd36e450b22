#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "semisens/experiments.hpp"

using namespace semisens;

namespace {

const char* kMinimal = R"(
[run]
seed = 3

[system s]
semigroup = full_lattice 1
factors = circle
gen.1 = mul(2)
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig tiny(const std::string& name) {
  ExperimentConfig c = test::builtin(name);
  c.sensitivity.boxes = {50, 100};
  c.sensitivity.n_x = 4;
  c.sensitivity.n_y = 24;
  c.sensitivity.isometry_samples = 20;
  c.sensitivity.rigidity_scan = 1000;
  c.null_samples = 50;
  return c;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parsing and defaults") {
    const ExperimentConfig c = parse_config(kMinimal);
    CHECK(c.seed == 3);
    CHECK(c.systems.size() == 1);
    CHECK(c.system("s").metric == "max");
    CHECK(c.system("s").precision_bits == 256);
    CHECK(c.sensitivity.boxes == std::vector<std::int64_t>{50, 100});
    CHECK(c.system("s").build().generators()[0][0].multiplier == 2);
  }

  TEST_CASE("decimal and rational rotation numbers") {
    const auto a = parse_factor_map("rot(0.25)", FactorKind::Circle, 64);
    const auto b = parse_factor_map("rot(1/4)", FactorKind::Circle, 64);
    CHECK(a == b);
    CHECK(parse_factor_map("shift(2)", FactorKind::Shift, 64).shift == 2);
    CHECK_THROWS_AS(parse_factor_map("mul(2)", FactorKind::Shift, 64), ConfigError);
  }

  TEST_CASE("errors name the offending field and line") {
    CHECK(error_of("[system s]\nsemigroup = full_lattice 1\nfactors = circle\ngen.1 = mul(x)\n").find("gen.1") !=
          std::string::npos);
    CHECK(error_of("[system s]\nsemigroup = full_lattice 1\nfactors = circle\ngen.1 = mul(x)\n").find("t.cfg:4") !=
          std::string::npos);
    CHECK(error_of("[sensitivity]\nn_x = -3\n").find("n_x") != std::string::npos);
    CHECK(error_of("[sensitivity]\nbogus = 1\n").find("bogus") != std::string::npos);
    CHECK(error_of("[system s]\nsemigroup = full_lattice 1\nfactors = torus\ngen.1 = mul(2)\n").find("factors") !=
          std::string::npos);
    CHECK(error_of("[system s]\nfactors = circle\ngen.1 = mul(2)\n").find("semigroup") != std::string::npos);
    CHECK(error_of("[run]\nseed = 1\nseed = 2\n").find("seed") != std::string::npos);
    CHECK(error_of("[nonsense]\n") != "");
    CHECK(error_of("[system s]\nsemigroup = full_lattice 1\nfactors = circle\ngen.1 = mul(2)\nmeasure = bernoulli(0.3)\n")
              .find("measure") != std::string::npos);
  }

  TEST_CASE("hash and overrides") {
    ExperimentConfig c = parse_config(kMinimal);
    const std::uint64_t h = c.hash();
    CHECK(h == fnv1a64(c.canonical()));
    CHECK(parse_config(kMinimal).hash() == h);
    c.override_box(40);
    CHECK(c.sensitivity.boxes == std::vector<std::int64_t>{20, 40});
    CHECK(c.hash() != h);
    c.override_precision(512);
    CHECK(c.system("s").precision_bits == 512);
    CHECK_THROWS_AS(c.override_precision(16), ConfigError);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(hex64(255) == "00000000000000ff");
    CHECK(format_double(0.1) == "0.10000000000000001");
  }

  TEST_CASE("built-in configs match the shipped files") {
    for (const std::string& name : builtin_config_names()) {
      std::ifstream f(std::filesystem::path(SEMISENS_CONFIG_DIR) / (name + ".cfg"));
      std::stringstream body;
      body << f.rdbuf();
      CHECK(body.str() == *builtin_config(name));
      CHECK_NOTHROW(parse_config(body.str(), name));
    }
    CHECK_FALSE(builtin_config("nope"));
  }
}

TEST_SUITE("report") {
  TEST_CASE("reports embed their provenance") {
    const ExperimentReport r = run_dichotomy_showcase(tiny("dichotomy"), RunOptions{1, true});
    const std::string text = render_report(r);
    for (const char* key : {"experiment\tdichotomy", "config_hash\t", "seed\t", "box_schedule\t50 100", "tail_anchors\t",
                            "precision_bits\t256", "precision_budget\t224", "q\t0.050000000000000003", "verdict\t",
                            "delta_hat\t", "isometry_defect\t", "rigidity_times\t", "null_radius\t",
                            "orbit_tail_density\t", "[assumptions]", "assumption\tconservativity"}) {
      CHECK_MESSAGE(text.find(key) != std::string::npos, key);
    }
    const std::string records = render_records(r);
    CHECK(records.rfind("system\tx_index\ty_index\tx_seed\ty_seed\tanchor\tbox\tlimsup\texists_sup\tplateaued\n", 0) == 0);
    CHECK(std::count(records.begin(), records.end(), '\n') == 1 + 3 * 4 * 24);
    const std::string summary = render_summary(r);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);
    CHECK(r.system("rotation").sensitivity.verdict == Verdict::IsometryEvidence);
    CHECK_THROWS(r.system("nope"));
  }

  TEST_CASE("write_report writes three files") {
    const auto dir = std::filesystem::temp_directory_path() / "semisens-report-test";
    std::filesystem::remove_all(dir);
    const ExperimentReport r = run_classify(tiny("doubling"), {}, RunOptions{});
    CHECK(write_report(r, dir).size() == 3);
    CHECK(std::filesystem::file_size(dir / "report.txt") > 0);
    CHECK(std::filesystem::file_size(dir / "records.tsv") > 0);
    CHECK(std::filesystem::file_size(dir / "summary.tsv") > 0);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("inconclusive verdicts abort unless allowed") {
    ExperimentConfig c = tiny("doubling");
    c.sensitivity.resolution = 0.9;
    CHECK_THROWS_AS(run_dichotomy_showcase(c, RunOptions{}), InconclusiveVerdict);
    CHECK_FALSE(run_dichotomy_showcase(c, RunOptions{1, true}).all_conclusive());
  }
}

TEST_SUITE("experiments") {
  TEST_CASE("factor counterexample juxtaposes the verdicts") {
    const ExperimentReport r = run_factor_counterexample(tiny("remark-5-2"), RunOptions{1, true});
    CHECK(r.system("product").sensitivity.verdict == Verdict::SensitiveEvidence);
    CHECK(r.system("product/factor-2").sensitivity.verdict == Verdict::IsometryEvidence);
    CHECK(r.system("product/swapped").sensitivity.verdict == Verdict::SensitiveEvidence);
    CHECK(r.system("product/swapped/factor-1").sensitivity.verdict == Verdict::IsometryEvidence);
  }

  TEST_CASE("powers and restriction drivers") {
    const ExperimentReport one = run_powers_experiment(tiny("powers"), 1, RunOptions{1, true});
    bool identical = false;
    for (const auto& [k, v] : one.facts) identical |= k == "identical_to_base" && v == "yes";
    CHECK(identical);
    const ExperimentReport two = run_powers_experiment(tiny("powers"), 2, RunOptions{1, true});
    CHECK(two.systems.size() == 2);
    CHECK(two.systems[1].label == "doubling/k=2");
    CHECK_THROWS_AS(run_powers_experiment(tiny("powers"), 6, RunOptions{}), ConfigError);
    CHECK(experiment_names() == std::vector<std::string>{"dichotomy", "remark-5-2", "powers", "cone-restriction"});
  }

  TEST_CASE("restricting doubling to kN keeps delta-hat within a factor 2 for k <= 5") {
    const ExperimentConfig cfg = test::builtin("powers");
    for (std::int64_t k = 1; k <= 5; ++k) {
      CAPTURE(k);
      const ExperimentReport r = run_powers_experiment(cfg, k, RunOptions{4, true});
      const double parent = r.systems.front().sensitivity.delta_hat;
      const double restricted = r.systems.back().sensitivity.delta_hat;
      CHECK(parent >= 0.1);
      CHECK(restricted >= parent / 2);
    }
  }

  TEST_CASE("powers k = 5 needs more than 256 bits for a conclusive verdict") {
    ExperimentConfig cfg = test::builtin("powers");
    CHECK_THROWS_AS(run_powers_experiment(cfg, 5, RunOptions{4, false}), InconclusiveVerdict);
    cfg.override_precision(1024);
    const ExperimentReport r = run_powers_experiment(cfg, 5, RunOptions{4, false});
    CHECK(r.systems.back().sensitivity.verdict == Verdict::SensitiveEvidence);
  }

  TEST_CASE("rescaled boxes stay within the precision budget") {
    SensitivityConfig c;
    c.boxes = {50, 100};
    const SemigroupAction dbl = test::system_of("doubling", "doubling").build();
    const RestrictedAction five = restrict_action(dbl, SubSemigroupSpec::scaled(Semigroup::full_lattice(1), 5), {Element{5}});
    const SensitivityConfig r = rescale_for_restriction(c, five.action);
    CHECK(r.boxes.back() * 5 <= dbl.space().budget());
    CHECK(r.boxes.front() < r.boxes.back());
    const RestrictedAction two = restrict_action(dbl, SubSemigroupSpec::scaled(Semigroup::full_lattice(1), 2), {Element{2}});
    CHECK(rescale_for_restriction(c, two.action).boxes == c.boxes);
  }
}
