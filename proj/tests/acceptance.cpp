// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "semisens/checks/oracles.hpp"
#include "semisens/checks/properties.hpp"
#include "semisens/experiments.hpp"
#include "semisens/random.hpp"

using namespace semisens;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

ExperimentConfig builtin(const std::string& name) { return parse_config(*builtin_config(name), name + ".cfg"); }

std::string fact(const std::vector<std::pair<std::string, std::string>>& facts, const std::string& key) {
  for (const auto& [k, v] : facts) {
    if (k == key) return v;
  }
  return "";
}

std::string literal_of(const SystemSpec& s) {
  const std::string& m = s.maps[0][0];
  return m.substr(4, m.size() - 5);
}

Check isometry_horn() {
  Check v;
  const ExperimentConfig cfg = builtin("rotation");
  const SystemSpec& spec = cfg.system("rotation");
  const SemigroupAction a = spec.build();
  const Metric m = spec.build_metric();
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point x = sample_point(a.space(), a.measure(), derive_seed(11, 0, static_cast<std::uint64_t>(i)));
    const Point y = sample_point(a.space(), a.measure(), derive_seed(11, 1, static_cast<std::uint64_t>(i)));
    worst = std::max(worst, std::abs(dG_truncated(a, m, x, y, 50) - m.dist(x, y)));
  }
  v.require(worst <= 1e-12, "|dG - d| <= 1e-12 over 1e4 pairs");
  v.note("max |dG - d| " + num(worst));

  SensitivityConfig sc = cfg.sensitivity;
  sc.seed = cfg.seed;
  const SensitivityReport r = classify(a, m, sc);
  v.require(r.verdict == Verdict::IsometryEvidence, "verdict isometry-evidence");
  v.note("verdict " + to_string(r.verdict));

  std::vector<std::int64_t> q = checks::convergent_denominators(literal_of(spec), 2000);
  q.erase(q.begin());  // q = 1 moves every point by ||alpha||; the trend starts at 2
  std::vector<Element> times;
  for (std::int64_t d : q) times.push_back(Element{d});
  const auto values = uniform_rigidity_probe(a, m, times, 64, 5);
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) decreasing &= values[i] < values[i - 1];
  v.require(decreasing, "probe decreasing along the denominators");
  v.require(values.back() < 1e-3, "probe below 1e-3");
  std::ostringstream os;
  for (std::int64_t d : q) os << d << ' ';
  v.note("denominators " + os.str() + "-> probe " + num(values.front()) + " .. " + num(values.back()));
  return v;
}

Check sensitive_horn() {
  Check v;
  const ExperimentConfig cfg = builtin("doubling");
  const SystemSpec& spec = cfg.system("doubling");
  const SemigroupAction a = spec.build();
  const Metric m = spec.build_metric();
  SensitivityConfig sc = cfg.sensitivity;
  sc.seed = cfg.seed;
  v.require(spec.precision_bits == 256 && sc.boxes.back() == 100 && sc.q == 0.05 && sc.n_x == 50 && sc.n_y == 400,
            "configured as 256 bits, box 100, q 0.05, 50 x 400");
  const SensitivityReport r = estimate_sensitivity_constant(a, m, sc);
  v.require(r.delta_hat >= 0.2, "delta_hat >= 0.2");

  const std::int64_t anchor = r.anchors.back()[0];
  const std::int64_t n = sc.boxes.back();
  std::size_t separated = 0, disagree = 0, decided = 0, cylinder_disagree = 0;
  for (const PairRecord& p : r.pairs) {
    const FixedPoint z = sample_point(a.space(), a.measure(), p.x_seed).coords[0].value -
                         sample_point(a.space(), a.measure(), p.y_seed).coords[0].value;
    const bool fast = p.limsup >= 0.25;
    separated += fast ? 1 : 0;
    if (checks::doubling_window_separates(z, static_cast<int>(anchor), static_cast<int>(n)) != fast) ++disagree;
    // The depth-8 cylinder of z at the anchor decides separation unless it is constant.
    bool constant = true;
    for (int k = 1; k < 8; ++k) constant &= z.bit(static_cast<int>(anchor) + k) == z.bit(static_cast<int>(anchor));
    if (!constant) {
      ++decided;
      if (!fast) ++cylinder_disagree;
    }
  }
  // Exhaustive over the 256 depth-8 cylinders: all but the two constant ones separate.
  int separating_cylinders = 0;
  for (int w = 0; w < 256; ++w) separating_cylinders += (w != 0 && w != 255) ? 1 : 0;
  const double fraction = static_cast<double>(separated) / static_cast<double>(r.pairs.size());
  v.require(fraction >= 0.99, ">= 99% of pairs separate by 1/4");
  v.require(disagree == 0, "fast path agrees with the symbolic oracle on every pair");
  v.require(cylinder_disagree == 0, "every decided depth-8 cylinder agrees");
  v.note("delta_hat " + num(r.delta_hat) + ", fraction >= 1/4: " + num(fraction) + ", oracle disagreements " +
         std::to_string(disagree) + ", decided cylinders " + std::to_string(decided) + "/" +
         std::to_string(r.pairs.size()) + ", cylinder bound " + std::to_string(separating_cylinders) + "/256");
  return v;
}

Check factor_counterexample() {
  Check v;
  ExperimentConfig cfg = builtin("remark-5-2");
  cfg.override_seed(7);
  const ExperimentReport r = run_factor_counterexample(cfg, RunOptions{1, true});
  const SystemOutcome& product = r.system("product");
  const SystemOutcome& factor = r.system("product/factor-2");
  v.require(product.sensitivity.verdict == Verdict::SensitiveEvidence, "product sensitive-evidence");
  v.require(product.sensitivity.delta_hat >= 0.2, "product delta_hat >= 0.2");
  v.require(factor.sensitivity.verdict == Verdict::IsometryEvidence, "rotation factor isometry-evidence");
  v.require(r.system("product/swapped").sensitivity.verdict == Verdict::SensitiveEvidence, "swapped product symmetric");
  v.note("product " + to_string(product.sensitivity.verdict) + " (delta_hat " + num(product.sensitivity.delta_hat) +
         "), factor " + to_string(factor.sensitivity.verdict));
  return v;
}

Check largeness() {
  Check v;
  const Semigroup N = Semigroup::full_lattice(1);
  const Semigroup N2 = Semigroup::full_lattice(2);
  for (std::int64_t k = 1; k <= 10; ++k) {
    std::vector<Element> F;
    for (std::int64_t f = 0; f < k; ++f) F.push_back(Element{f});
    v.require(is_syndetic(N, SubSemigroupSpec::scaled(N, k), F, 1000).syndetic, "kN syndetic, k = " + std::to_string(k));
    if (k >= 2) v.require(!is_thick(N, SubSemigroupSpec::scaled(N, k), {1}).thick, "kN not thick, k = " + std::to_string(k));
  }
  const SubSemigroupSpec cone = SubSemigroupSpec::cone(N2, Element{1, 0}, Element{1, 1});
  std::vector<std::int64_t> sizes;
  for (std::int64_t m = 1; m <= 30; ++m) sizes.push_back(m);
  const ThickResult t = is_thick(N2, cone, sizes);
  v.require(t.thick, "cone thick for sizes 1..30");
  for (const ThickWitness& w : t.witnesses) {
    v.require(w.p && *w.p == Element{w.size, 0}, "witness (m,0) at m = " + std::to_string(w.size));
  }
  const SyndeticSearch s = find_syndetic_witness(N2, cone, 10, 100);
  v.require(!s.witness, "no syndetic witness in Box(10) at box 100");
  v.note("kN syndetic k <= 10 at 1000, not thick k >= 2; cone witnesses (m,0) for m <= 30; syndetic search: " +
         std::string(s.witness ? "found" : "none") +
         (s.uncoverable.empty() ? std::string{} : ", uncoverable " + to_string(s.uncoverable.front())));
  return v;
}

Check preservation() {
  Check v;
  for (int k : {2, 3}) {
    const ExperimentReport r = run_powers_experiment(builtin("powers"), k, RunOptions{1, true});
    const SystemOutcome& s = r.systems.back();
    v.require(s.sensitivity.verdict == Verdict::SensitiveEvidence, s.label + " sensitive-evidence");
    v.require(s.sensitivity.delta_hat >= 0.1, s.label + " delta_hat >= 0.1");
    v.note(s.label + " delta_hat " + num(s.sensitivity.delta_hat) + " (ratio " + fact(r.facts, "delta_ratio") + ")");
  }
  const ExperimentReport r = run_cone_restriction(builtin("cone-restriction"), RunOptions{1, true});
  const SystemOutcome& cone = r.system("doubling_tripling|cone");
  v.require(cone.sensitivity.verdict == Verdict::SensitiveEvidence, "cone restriction sensitive-evidence");
  v.require(cone.sensitivity.delta_hat >= 0.1, "cone restriction delta_hat >= 0.1");
  v.require(fact(cone.facts, "thick") == "yes", "cone verified thick");
  v.note("cone delta_hat " + num(cone.sensitivity.delta_hat) + ", thick " + fact(cone.facts, "thick"));
  return v;
}

Check from_properties(const std::string& suite, const std::vector<std::string>& prefixes) {
  Check v;
  for (const auto& r : checks::run_suite(suite, checks::SuiteOptions{})) {
    for (const std::string& p : prefixes) {
      if (r.name.rfind(p, 0) != 0) continue;
      v.require(r.passed, r.name + (r.detail.empty() ? "" : " (" + r.detail + ")"));
      if (r.passed) v.note(r.name + (r.detail.empty() ? "" : " (" + r.detail + ")"));
    }
  }
  return v;
}

Check null_radius() {
  Check v;
  double radius[2];
  int i = 0;
  for (const char* name : {"doubling", "rotation"}) {
    const SystemSpec spec = builtin(name).system(name);
    const SemigroupAction a = spec.build();
    const Point x = sample_point(a.space(), a.measure(), basepoint_seed(1, 0));
    radius[i++] = null_radius_estimate(a, spec.build_metric(), x, 100, 1000, 0.05, 1);
  }
  v.require(radius[0] >= 0.2, "doubling null radius >= 0.2");
  v.require(radius[1] == 0.0, "rotation null radius 0");
  v.note("doubling " + num(radius[0]) + ", rotation " + num(radius[1]) + " (grid 0.05)");
  return v;
}

std::string bytes_of(const ExperimentReport& r) {
  const fs::path dir = fs::temp_directory_path() / ("semisens-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::string out;
  for (const fs::path& p : write_report(r, dir)) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    out += s.str();
  }
  fs::remove_all(dir);
  return out;
}

Check determinism() {
  Check v;
  const std::vector<std::pair<std::string, std::function<ExperimentReport(int)>>> runs = {
      {"dichotomy", [](int t) { return run_dichotomy_showcase(builtin("dichotomy"), RunOptions{t, true}); }},
      {"remark-5-2", [](int t) { return run_factor_counterexample(builtin("remark-5-2"), RunOptions{t, true}); }},
      {"cone-restriction", [](int t) { return run_cone_restriction(builtin("cone-restriction"), RunOptions{t, true}); }},
  };
  for (const auto& [name, run] : runs) {
    const std::string a = bytes_of(run(1));
    const std::string b = bytes_of(run(1));
    const std::string c = bytes_of(run(4));
    v.require(a == b, name + " identical across runs");
    v.require(a == c, name + " identical across 1 and 4 threads");
    v.note(name + " " + std::to_string(a.size()) + " bytes");
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"isometry horn", isometry_horn},
      {"sensitive horn", sensitive_horn},
      {"factor counterexample", factor_counterexample},
      {"largeness decisions", largeness},
      {"preservation under syndetic and thick restriction", preservation},
      {"membership oracle equivalence", [] { return from_properties("semigroup", {"membership"}); }},
      {"metric stack",
       [] { return from_properties("metric", {"triangle", "truncated sup-metric is monotone", "circle ball mass"}); }},
      {"null-radius dichotomy", null_radius},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (v.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " [" << num(secs) << " s]: "
              << v.detail << std::endl;
    failed += v.ok ? 0 : 1;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed ? 1 : 0;
}
