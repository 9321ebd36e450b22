#pragma once

// Experiment configuration: a flat sectioned text format.
//
//   [run]                 seed, out, null_samples
//   [sensitivity]         estimator settings (see SensitivityConfig)
//   [system NAME]         semigroup, factors, gen.1 .. gen.d, measure, metric, precision_bits
//   [subsemigroup NAME]   system, kind, generators, sizes, f_bound
//
// Lines starting with '#' are comments. Rotation numbers accept decimals
// ("0.4142") and arbitrary-size rationals ("p/q").

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semisens/action.hpp"
#include "semisens/metric.hpp"
#include "semisens/sensitivity.hpp"
#include "semisens/subsemigroup.hpp"

namespace semisens {

struct SystemSpec {
  std::string name;
  Semigroup semigroup = Semigroup::full_lattice(1);
  std::vector<FactorKind> factors;
  /// maps[i][j]: the map text of generator i on factor j, canonicalized.
  std::vector<std::vector<std::string>> maps;
  /// Bernoulli parameter per factor (ignored for circles).
  std::vector<double> bernoulli;
  std::string metric = "max";
  int precision_bits = kDefaultPrecisionBits;

  SemigroupAction build() const;
  Metric build_metric() const;
  std::string canonical() const;
};

struct SubSemigroupEntry {
  std::string name;
  std::string system;
  /// "whole", "scaled K", "generated E1 E2 ...", "cone R1 R2".
  std::string kind;
  /// Empty means SubSemigroupSpec::default_generators().
  std::vector<Element> generators;
  std::vector<std::int64_t> sizes;
  std::int64_t f_bound = -1;

  SubSemigroupSpec build(const Semigroup& parent) const;
  std::string canonical() const;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string out;
  int null_samples = 1000;
  SensitivityConfig sensitivity;
  std::vector<SystemSpec> systems;
  std::vector<SubSemigroupEntry> subsemigroups;

  const SystemSpec& system(const std::string& name) const;
  const SubSemigroupEntry& subsemigroup(const std::string& name) const;

  /// Every field in a fixed order; thread count excluded.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;

  /// Applies --seed / --box / --precision-bits style overrides.
  void override_seed(std::uint64_t s);
  void override_box(std::int64_t n);
  void override_precision(int bits);
};

/// Throws ConfigError with the line number and offending field.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

Semigroup parse_semigroup(const std::string& text);
Element parse_element(const std::string& text);
std::vector<Element> parse_elements(const std::string& text);
FactorMap parse_factor_map(const std::string& text, FactorKind kind, int bits);

std::uint64_t fnv1a64(const std::string& bytes);

/// "%.17g"
std::string format_double(double v);
std::string hex64(std::uint64_t v);

/// Built-in configurations, shipped as configs/<name>.cfg as well.
std::optional<std::string> builtin_config(const std::string& name);
std::vector<std::string> builtin_config_names();

}  // namespace semisens
