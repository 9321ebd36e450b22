#include "semisens/experiments.hpp"

#include <algorithm>

#include "semisens/random.hpp"

namespace semisens {

namespace {

constexpr int kDefectSamples = 16;
constexpr std::int64_t kDefectBox = 6;

std::string elements_text(const std::vector<Element>& es) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) out += (i ? " " : "") + to_string(es[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ExperimentReport start(const std::string& name, const ExperimentConfig& config) {
  ExperimentReport r;
  r.experiment = name;
  r.config_hash = config.hash();
  r.seed = config.seed;
  r.assumptions = {
      "conservativity: assumed, not verified; evidence is orbit_tail_density per system",
      "ergodicity: assumed, not verified; evidence is orbit_tail_density per system",
      "almost every y: replaced by the q-quantile of n_y sampled companions",
      "limsup along the order: inf over tail anchors of the sup over the last box",
      "metric: verdicts hold for the declared metric only",
  };
  return r;
}

SensitivityConfig with_threads(const ExperimentConfig& config, const RunOptions& options) {
  SensitivityConfig s = config.sensitivity;
  s.seed = config.seed;
  s.threads = options.threads;
  return s;
}

SystemOutcome outcome_of(const std::string& label, const SystemSpec& spec, const ExperimentConfig& config,
                         const RunOptions& options) {
  return evaluate_system(label, spec.build(), spec.build_metric(), with_threads(config, options), config.null_samples);
}

// The sensitivity fields that must match when two actions coincide.
std::string sensitivity_fingerprint(const SystemOutcome& s) {
  ExperimentReport tmp;
  SystemOutcome copy = s;
  copy.label = "x";
  copy.action.clear();
  copy.facts.clear();
  tmp.systems.push_back(std::move(copy));
  return render_report(tmp) + render_records(tmp);
}

struct Restriction {
  SystemOutcome outcome;
  RestrictedAction restricted;
};

Restriction restrict_and_classify(const std::string& label, const SemigroupAction& parent, const SubSemigroupSpec& H,
                                  std::vector<Element> generators, const ExperimentConfig& config,
                                  const RunOptions& options) {
  RestrictedAction restricted = restrict_action(parent, H, std::move(generators));
  const SensitivityConfig scaled = rescale_for_restriction(with_threads(config, options), restricted.action);
  SystemOutcome out = evaluate_system(label, restricted.action, Metric::base(restricted.action.space()), scaled,
                                      config.null_samples);
  out.facts.emplace_back("subsemigroup", H.describe());
  out.facts.emplace_back("generators", elements_text(restricted.generators));
  const std::int64_t defect_box = std::min<std::int64_t>(kDefectBox, scaled.boxes.front());
  out.facts.emplace_back("restriction_defect", format_double(restriction_defect(parent, restricted, kDefectSamples,
                                                                                defect_box, config.seed)) +
                                                   " (box " + std::to_string(defect_box) + ")");
  return {std::move(out), std::move(restricted)};
}

void add_restriction_assumptions(ExperimentReport& r) {
  r.assumptions.push_back(
      "restricted box schedule: the parent bounds when they fit the precision budget, otherwise scaled down "
      "proportionally until the top box fits");
  r.assumptions.push_back(
      "preservation: sensitivity is expected to survive restriction, the constant is not; the ratio of delta-hat "
      "values is recorded against a factor-2 slack, not enforced");
}

std::string ratio_text(double restricted, double parent) {
  if (parent <= 0.0) return "nan";
  return format_double(restricted / parent);
}

}  // namespace

SystemOutcome evaluate_system(const std::string& label, const SemigroupAction& action, const Metric& metric,
                              const SensitivityConfig& sensitivity, int null_samples) {
  SystemOutcome out;
  out.label = label;
  out.action = action.describe();
  out.metric = metric.describe();
  out.precision_bits = action.space().precision_bits();
  out.precision_budget = action.space().budget();
  out.sensitivity = classify(action, metric, sensitivity);
  const Point x = sample_point(action.space(), action.measure(), basepoint_seed(sensitivity.seed, 0));
  out.null_radius_box = sensitivity.boxes.back();
  out.null_radius = null_radius_estimate(action, metric, x, out.null_radius_box, null_samples, sensitivity.resolution,
                                         sensitivity.seed);
  out.tail_density = orbit_tail_density(action, metric, x, out.sensitivity.anchors.back(), sensitivity.boxes.back(),
                                        sensitivity.resolution);
  return out;
}

SensitivityConfig rescale_for_restriction(const SensitivityConfig& config, const SemigroupAction& restricted) {
  // Bits consumed per unit step along every coordinate, worst factor.
  std::int64_t per_unit = 0;
  for (int j = 0; j < restricted.space().factor_count(); ++j) {
    std::int64_t sum = 0;
    for (const GeneratorMap& g : restricted.generators()) sum += g[static_cast<std::size_t>(j)].bits_per_application();
    per_unit = std::max(per_unit, sum);
  }
  SensitivityConfig out = config;
  out.anchors.clear();
  const std::int64_t top = config.boxes.back();
  if (per_unit == 0 || top * per_unit <= restricted.space().budget()) return out;
  const std::int64_t fit = std::max<std::int64_t>(1, restricted.space().budget() / per_unit);
  out.boxes.clear();
  for (std::int64_t n : config.boxes) {
    const std::int64_t b = std::max<std::int64_t>(1, n * fit / top);
    if (out.boxes.empty() || b > out.boxes.back()) out.boxes.push_back(b);
  }
  return out;
}

void require_conclusive(const ExperimentReport& report, const RunOptions& options) {
  if (options.allow_inconclusive || report.all_conclusive()) return;
  std::string msg = report.experiment + ": inconclusive verdict for";
  for (const SystemOutcome& s : report.systems) {
    if (s.sensitivity.verdict == Verdict::Inconclusive) {
      msg += " " + s.label + " (" + s.sensitivity.verdict_reason + "; delta_hat=" +
             format_double(s.sensitivity.delta_hat) + ", plateau_fraction=" +
             format_double(s.sensitivity.plateau_fraction) + ", isometry_defect=" +
             format_double(s.sensitivity.isometry_defect) + ")";
    }
  }
  throw InconclusiveVerdict(msg);
}

ExperimentReport run_classify(const ExperimentConfig& config, const std::vector<std::string>& names,
                              const RunOptions& options) {
  ExperimentReport r = start("classify", config);
  if (names.empty()) {
    for (const SystemSpec& s : config.systems) r.systems.push_back(outcome_of(s.name, s, config, options));
  } else {
    for (const std::string& n : names) r.systems.push_back(outcome_of(n, config.system(n), config, options));
  }
  if (r.systems.empty()) throw ConfigError("the config defines no [system] section");
  return r;
}

ExperimentReport run_dichotomy_showcase(const ExperimentConfig& config, const RunOptions& options) {
  ExperimentReport r = run_classify(config, {}, options);
  r.experiment = "dichotomy";
  require_conclusive(r, options);
  return r;
}

ExperimentReport run_factor_counterexample(const ExperimentConfig& config, const RunOptions& options) {
  const auto it = std::find_if(config.systems.begin(), config.systems.end(),
                               [](const SystemSpec& s) { return s.factors.size() >= 2; });
  if (it == config.systems.end()) throw ConfigError("remark-5-2 needs a [system] on a product space");
  ExperimentReport r = start("remark-5-2", config);
  const SensitivityConfig s = with_threads(config, options);
  const SemigroupAction product = it->build();
  const SemigroupAction swapped = reverse_factors(product);
  for (const auto& [label, action] : {std::pair<std::string, const SemigroupAction*>{it->name, &product},
                                      std::pair<std::string, const SemigroupAction*>{it->name + "/swapped", &swapped}}) {
    r.systems.push_back(evaluate_system(label, *action, Metric::base(action->space()), s, config.null_samples));
    for (int j = 0; j < action->space().factor_count(); ++j) {
      const SemigroupAction f = factor_project(*action, j);
      r.systems.push_back(evaluate_system(label + "/factor-" + std::to_string(j + 1), f, Metric::base(f.space()), s,
                                          config.null_samples));
    }
  }
  auto verdict = [&](const std::string& label) { return to_string(r.system(label).sensitivity.verdict); };
  const std::string last = std::to_string(product.space().factor_count());
  r.facts.emplace_back("product_verdict", verdict(it->name));
  r.facts.emplace_back("factor_" + last + "_verdict", verdict(it->name + "/factor-" + last));
  r.facts.emplace_back("swapped_verdict", verdict(it->name + "/swapped"));
  r.facts.emplace_back("swapped_factor_1_verdict", verdict(it->name + "/swapped/factor-1"));
  r.facts.emplace_back(
      "non_preservation_shown",
      yes_no(r.system(it->name).sensitivity.verdict == Verdict::SensitiveEvidence &&
             std::any_of(r.systems.begin(), r.systems.end(), [](const SystemOutcome& o) {
               return o.sensitivity.verdict == Verdict::IsometryEvidence;
             })));
  require_conclusive(r, options);
  return r;
}

ExperimentReport run_powers_experiment(const ExperimentConfig& config, int k, const RunOptions& options) {
  if (k < 1 || k > 5) throw ConfigError("--k must lie in [1, 5]");
  if (config.systems.empty()) throw ConfigError("powers needs a [system] section");
  const SystemSpec& base = config.systems.front();
  if (base.semigroup.dim() != 1) throw ConfigError("powers needs a system of N (semigroup full_lattice 1)");
  ExperimentReport r = start("powers", config);
  add_restriction_assumptions(r);
  const SemigroupAction action = base.build();
  r.systems.push_back(outcome_of(base.name, base, config, options));

  const SubSemigroupSpec H = SubSemigroupSpec::scaled(action.semigroup(), k);
  std::vector<Element> F;
  for (int i = 0; i < k; ++i) F.push_back(Element{i});
  const std::int64_t scale = config.sensitivity.boxes.back();
  const SyndeticCertificate cert = is_syndetic(action.semigroup(), H, F, scale);
  r.facts.emplace_back("H", H.describe());
  r.facts.emplace_back("k", std::to_string(k));
  r.facts.emplace_back("syndetic_F", elements_text(F));
  r.facts.emplace_back("syndetic_scale", std::to_string(scale));
  r.facts.emplace_back("syndetic", yes_no(cert.syndetic));

  Restriction res = restrict_and_classify(base.name + "/k=" + std::to_string(k), action, H,
                                          H.default_generators(), config, options);
  r.facts.emplace_back("delta_ratio", ratio_text(res.outcome.sensitivity.delta_hat, r.systems[0].sensitivity.delta_hat));
  if (k == 1) {
    r.facts.emplace_back("identical_to_base",
                         yes_no(sensitivity_fingerprint(res.outcome) == sensitivity_fingerprint(r.systems[0])));
  }
  r.systems.push_back(std::move(res.outcome));
  require_conclusive(r, options);
  return r;
}

ExperimentReport run_restriction(const ExperimentConfig& config, const std::string& name, const RunOptions& options) {
  const SubSemigroupEntry& entry = config.subsemigroup(name);
  const SystemSpec& spec = config.system(entry.system);
  ExperimentReport r = start("restrict", config);
  add_restriction_assumptions(r);
  r.systems.push_back(outcome_of(spec.name, spec, config, options));
  const SemigroupAction action = spec.build();
  const SubSemigroupSpec H = entry.build(action.semigroup());
  Restriction res = restrict_and_classify(spec.name + "|" + entry.name, action, H,
                                          entry.generators.empty() ? H.default_generators() : entry.generators,
                                          config, options);
  res.outcome.facts.emplace_back("delta_ratio", ratio_text(res.outcome.sensitivity.delta_hat,
                                                           r.systems[0].sensitivity.delta_hat));
  r.systems.push_back(std::move(res.outcome));
  require_conclusive(r, options);
  return r;
}

ExperimentReport run_cone_restriction(const ExperimentConfig& config, const RunOptions& options) {
  if (config.subsemigroups.empty()) throw ConfigError("cone-restriction needs [subsemigroup] sections");
  ExperimentReport r = start("cone-restriction", config);
  add_restriction_assumptions(r);
  std::vector<std::string> parents;
  for (const SubSemigroupEntry& entry : config.subsemigroups) {
    const SystemSpec& spec = config.system(entry.system);
    if (std::find(parents.begin(), parents.end(), spec.name) == parents.end()) {
      parents.push_back(spec.name);
      r.systems.push_back(outcome_of(spec.name, spec, config, options));
    }
    const SystemOutcome& parent_outcome = r.system(spec.name);
    const double parent_delta = parent_outcome.sensitivity.delta_hat;
    const std::string parent_fingerprint = sensitivity_fingerprint(parent_outcome);

    const SemigroupAction action = spec.build();
    const SubSemigroupSpec H = entry.build(action.semigroup());
    Restriction res = restrict_and_classify(spec.name + "|" + entry.name, action, H,
                                            entry.generators.empty() ? H.default_generators() : entry.generators,
                                            config, options);
    SystemOutcome& o = res.outcome;
    if (!entry.sizes.empty()) {
      const ThickResult thick = is_thick(action.semigroup(), H, entry.sizes);
      o.facts.emplace_back("thick", yes_no(thick.thick));
      std::string w;
      for (const ThickWitness& t : thick.witnesses) {
        w += (w.empty() ? "" : " ") + std::to_string(t.size) + ":" + (t.p ? to_string(*t.p) : "none");
      }
      o.facts.emplace_back("thick_witnesses", w);
    }
    if (entry.f_bound >= 0) {
      const std::int64_t scale = config.sensitivity.boxes.back();
      const SyndeticSearch s = find_syndetic_witness(action.semigroup(), H, entry.f_bound, scale);
      o.facts.emplace_back("syndetic_search", "F_bound " + std::to_string(entry.f_bound) + ", scale " +
                                                  std::to_string(scale) + ": " +
                                                  (s.witness ? elements_text(*s.witness) : "none at this scale"));
      if (!s.witness) o.facts.emplace_back("syndetic_uncoverable", elements_text(s.uncoverable));
    }
    o.facts.emplace_back("delta_ratio", ratio_text(o.sensitivity.delta_hat, parent_delta));
    if (entry.kind == "whole") {
      o.facts.emplace_back("identical_to_parent", yes_no(sensitivity_fingerprint(o) == parent_fingerprint));
    }
    r.systems.push_back(std::move(o));
  }
  require_conclusive(r, options);
  return r;
}

std::vector<std::string> experiment_names() { return {"dichotomy", "remark-5-2", "powers", "cone-restriction"}; }

}  // namespace semisens
