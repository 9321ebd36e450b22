// semisens: command-line front end for the experiment drivers.
//
// Exit codes: 0 success, 1 usage or other error, 2 inconclusive verdict,
// 3 config error (including a box too small for the tail anchors),
// 4 precision exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "semisens/checks/properties.hpp"
#include "semisens/experiments.hpp"

namespace fs = std::filesystem;
using namespace semisens;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitConfig = 3;
constexpr int kExitPrecision = 4;

struct Common {
  std::string config;
  std::int64_t seed = -1;
  int threads = 1;
  std::string out;
  std::int64_t box = 0;
  int precision_bits = 0;
  bool allow_inconclusive = false;
};

// A path on disk, or the name of a built-in config ("rotation" or "rotation.cfg").
ExperimentConfig load(const std::string& spec) {
  if (fs::exists(spec)) return load_config(spec);
  const std::string stem = fs::path(spec).stem().string();
  if (auto text = builtin_config(stem)) return parse_config(*text, "builtin:" + stem);
  throw ConfigError("no config file or built-in config named '" + spec + "'");
}

ExperimentConfig prepare(const Common& c, const std::string& fallback) {
  if (c.config.empty() && fallback.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = load(c.config.empty() ? fallback : c.config);
  if (c.seed >= 0) cfg.override_seed(static_cast<std::uint64_t>(c.seed));
  if (c.box > 0) cfg.override_box(c.box);
  if (c.precision_bits > 0) cfg.override_precision(c.precision_bits);
  return cfg;
}

RunOptions run_options(const Common& c) { return RunOptions{c.threads, c.allow_inconclusive}; }

fs::path out_dir(const Common& c, const ExperimentConfig& cfg, const std::string& run) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("SEMISENS_OUT_DIR"); env && *env) return fs::path(env) / run;
  if (!cfg.out.empty()) return cfg.out;
  return fs::path("semisens-out") / run;
}

int finish(const ExperimentReport& report, const Common& c, const ExperimentConfig& cfg, const std::string& run) {
  const fs::path dir = out_dir(c, cfg, run);
  write_report(report, dir);
  std::cout << render_summary(report);
  for (const auto& [k, v] : report.facts) std::cout << k << '\t' << v << '\n';
  std::cout << "report written to " << dir.string() << '\n';
  return 0;
}

std::string join(const std::vector<Element>& es) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? " " : "") + to_string(es[i]);
  return s;
}

struct SubOptions {
  std::string kind = "syndetic";
  std::int64_t k = 2;
  int dim = 0;
  std::string cone;
  std::string F;
  std::vector<std::int64_t> sizes;
  std::int64_t f_bound = -1;
  std::int64_t p_bound = -1;
};

int run_subsemigroup(const SubOptions& o, const Common& c) {
  // Cones live in N^2; kN^d defaults to d = 1.
  const int dim = o.dim > 0 ? o.dim : (o.cone.empty() ? 1 : 2);
  if (dim > kMaxDim) throw ConfigError("--dim must lie in 1.." + std::to_string(kMaxDim));
  const Semigroup G = Semigroup::full_lattice(dim);
  const std::int64_t box = c.box > 0 ? c.box : 100;
  std::optional<SubSemigroupSpec> H;
  if (!o.cone.empty()) {
    const auto rays = parse_elements(o.cone);
    if (rays.size() != 2) throw ConfigError("--cone needs two rays, e.g. \"(1,0) (1,1)\"");
    H = SubSemigroupSpec::cone(G, rays[0], rays[1]);
  } else {
    if (o.k < 1) throw ConfigError("--k must be at least 1");
    H = SubSemigroupSpec::scaled(G, o.k);
  }
  std::ostringstream os;
  os << "H\t" << H->describe() << '\n' << "scale\t" << box << '\n';
  if (o.kind == "syndetic") {
    std::vector<Element> F;
    if (!o.F.empty()) {
      F = parse_elements(o.F);
    } else if (o.cone.empty()) {
      F = enumerate_in_box(G, o.k - 1);
    } else {
      throw ConfigError("--kind syndetic on a cone needs --F (or use --kind witness)");
    }
    const SyndeticCertificate cert = is_syndetic(G, *H, F, box);
    os << "syndetic\t" << (cert.syndetic ? "yes" : "no") << '\n' << "F\t" << join(F) << '\n';
    os << "covered\t" << cert.cover.size() << '\n';
    if (!cert.uncovered.empty()) os << "first_uncovered\t" << to_string(cert.uncovered.front()) << '\n';
  } else if (o.kind == "witness") {
    const SyndeticSearch s = find_syndetic_witness(G, *H, o.f_bound, box);
    os << "f_bound\t" << s.f_bound << '\n';
    if (s.witness) {
      os << "witness\t" << join(*s.witness) << '\n' << "minimal\t" << (s.minimal ? "yes" : "no") << '\n';
    } else {
      os << "witness\tnone\n" << "uncoverable\t" << join(s.uncoverable) << '\n';
    }
  } else if (o.kind == "thick") {
    const std::vector<std::int64_t> sizes = o.sizes.empty() ? std::vector<std::int64_t>{box} : o.sizes;
    const ThickResult t = is_thick(G, *H, sizes, o.p_bound);
    os << "thick\t" << (t.thick ? "yes" : "no") << '\n';
    for (const ThickWitness& w : t.witnesses) {
      os << "witness\t" << w.size << ' ' << (w.p ? to_string(*w.p) : std::string("none")) << '\n';
    }
  } else {
    throw ConfigError("--kind must be syndetic, thick or witness");
  }
  std::cout << os.str();
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream(fs::path(c.out) / "certificate.txt", std::ios::binary) << os.str();
  }
  return 0;
}

int run_dg(const Common& c, const std::string& system, const std::vector<std::string>& x_lit,
           const std::vector<std::string>& y_lit) {
  const ExperimentConfig cfg = prepare(c, "");
  const SystemSpec& spec = system.empty() ? cfg.systems.at(0) : cfg.system(system);
  const SemigroupAction a = spec.build();
  const Metric m = spec.build_metric();
  const Point x = make_point(a.space(), x_lit);
  const Point y = make_point(a.space(), y_lit);
  const std::int64_t n = c.box > 0 ? c.box : cfg.sensitivity.boxes.back();
  const SupValue v = dG_certified(a, m, x, y, n);
  std::cout << "system\t" << spec.name << '\n'
            << "d\t" << format_double(m.dist(x, y)) << '\n'
            << "dG_truncated\t" << format_double(v.value) << '\n'
            << "box\t" << v.bound << '\n'
            << "status\t" << (v.status == TruncationStatus::Plateaued ? "plateaued" : "lower-bound") << '\n';
  return 0;
}

int run_sensitivity(const Common& c, const std::string& system) {
  const ExperimentConfig cfg = prepare(c, "");
  const SystemSpec& spec = system.empty() ? cfg.systems.at(0) : cfg.system(system);
  SensitivityConfig s = cfg.sensitivity;
  s.seed = cfg.seed;
  s.threads = c.threads;
  const SemigroupAction a = spec.build();
  const Metric m = spec.build_metric();
  ExperimentReport r;
  r.experiment = "sensitivity";
  r.config_hash = cfg.hash();
  r.seed = cfg.seed;
  r.assumptions = {"almost every y: replaced by the q-quantile of n_y sampled companions",
                   "no verdict: estimator only (use classify for the isometry and rigidity checks)"};
  SystemOutcome o;
  o.label = spec.name;
  o.action = a.describe();
  o.metric = m.describe();
  o.precision_bits = a.space().precision_bits();
  o.precision_budget = a.space().budget();
  o.sensitivity = estimate_sensitivity_constant(a, m, s);
  o.sensitivity.verdict_reason = "estimator only";
  r.systems.push_back(std::move(o));
  const fs::path dir = out_dir(c, cfg, "sensitivity");
  write_report(r, dir);
  const SensitivityReport& sr = r.systems[0].sensitivity;
  std::cout << "delta_hat\t" << format_double(sr.delta_hat) << '\n'
            << "delta_hat_band\t" << format_double(sr.band_lo) << ' ' << format_double(sr.band_hi) << '\n'
            << "plateau_fraction\t" << format_double(sr.plateau_fraction) << '\n'
            << "report written to " << dir.string() << '\n';
  return 0;
}

int run_selftest(bool quick, const std::string& suite, std::uint64_t seed) {
  checks::SuiteOptions o{seed, quick};
  const auto results = suite.empty() ? checks::all_properties(o) : checks::run_suite(suite, o);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << '\n';
    failed += r.passed ? 0 : 1;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " properties hold\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitivity experiments for semigroup actions"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--config", c.config, "Config file, or the name of a built-in config");
  app.add_option("--seed", c.seed, "Override the config seed");
  app.add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1, 256));
  app.add_option("--out", c.out, "Output directory (default: $SEMISENS_OUT_DIR/<run>, then the config)");
  app.add_option("--box", c.box, "Top box bound n; the schedule becomes {n/2, n}")->check(CLI::PositiveNumber);
  app.add_option("--precision-bits", c.precision_bits, "Point precision L in bits")
      ->check(CLI::Range(kMinPrecisionBits, kMaxPrecisionBits));
  app.add_flag("--allow-inconclusive", c.allow_inconclusive, "Exit 0 and write the report on inconclusive verdicts");

  std::vector<std::string> systems;
  auto* classify = app.add_subcommand("classify", "Classify systems of a config");
  classify->add_option("--system", systems, "System names (default: all)");

  std::string one_system;
  auto* sensitivity = app.add_subcommand("sensitivity", "Estimate the sensitivity constant only");
  sensitivity->add_option("--system", one_system, "System name (default: the first)");

  std::vector<std::string> x_lit, y_lit;
  auto* dg = app.add_subcommand("dg", "Truncated sup-metric between two points");
  dg->add_option("--system", one_system, "System name (default: the first)");
  dg->add_option("--x", x_lit, "One literal per factor")->required();
  dg->add_option("--y", y_lit, "One literal per factor")->required();

  SubOptions sub;
  auto* subsemigroup = app.add_subcommand("subsemigroup", "Syndetic and thick checks for kN^d or a cone in N^2");
  subsemigroup->add_option("--kind", sub.kind, "syndetic, thick or witness");
  subsemigroup->add_option("--k", sub.k, "H = kN^d");
  subsemigroup->add_option("--dim", sub.dim, "Dimension d of N^d (default 1, or 2 with --cone)")->check(CLI::Range(1, kMaxDim));
  subsemigroup->add_option("--cone", sub.cone, "H = cone between two rays, e.g. \"(1,0) (1,1)\"");
  subsemigroup->add_option("--F", sub.F, "Translation set for --kind syndetic");
  subsemigroup->add_option("--sizes", sub.sizes, "Box sizes for --kind thick (default: --box)");
  subsemigroup->add_option("--f-bound", sub.f_bound, "Search box for --kind witness (default 4 x box)");
  subsemigroup->add_option("--p-bound", sub.p_bound, "Search box for thick witnesses (default 4 x size)");

  std::string sub_name;
  auto* restrict = app.add_subcommand("restrict", "Restrict a system to a [subsemigroup] of the config");
  restrict->add_option("--subsemigroup", sub_name, "Sub-semigroup name")->required();

  std::string experiment;
  int k = 2;
  auto* exp = app.add_subcommand("experiment", "Run a named experiment");
  exp->add_option("name", experiment, "dichotomy, remark-5-2, powers or cone-restriction")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  exp->add_option("--k", k, "Power for the powers experiment")->check(CLI::Range(1, 5));

  bool quick = false;
  std::string suite;
  auto* selftest = app.add_subcommand("selftest", "Run every property suite");
  selftest->add_flag("--quick", quick, "Smaller samples");
  selftest->add_option("--suite", suite, "One suite only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*selftest) return run_selftest(quick, suite, c.seed >= 0 ? static_cast<std::uint64_t>(c.seed) : 1);
    if (*subsemigroup) return run_subsemigroup(sub, c);
    if (*dg) return run_dg(c, one_system, x_lit, y_lit);
    if (*sensitivity) return run_sensitivity(c, one_system);
    const RunOptions opts = run_options(c);
    if (*classify) {
      const ExperimentConfig cfg = prepare(c, "");
      const ExperimentReport r = run_classify(cfg, systems, opts);
      require_conclusive(r, opts);
      return finish(r, c, cfg, "classify");
    }
    if (*restrict) {
      const ExperimentConfig cfg = prepare(c, "");
      return finish(run_restriction(cfg, sub_name, opts), c, cfg, "restrict-" + sub_name);
    }
    const ExperimentConfig cfg = prepare(c, experiment);
    ExperimentReport r;
    std::string run = experiment;
    if (experiment == "dichotomy") {
      r = run_dichotomy_showcase(cfg, opts);
    } else if (experiment == "remark-5-2") {
      r = run_factor_counterexample(cfg, opts);
    } else if (experiment == "powers") {
      r = run_powers_experiment(cfg, k, opts);
      run += "-k" + std::to_string(k);
    } else {
      r = run_cone_restriction(cfg, opts);
    }
    return finish(r, c, cfg, run);
  } catch (const InconclusiveVerdict& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const EmptyTail& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
