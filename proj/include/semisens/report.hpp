#pragma once

// Experiment reports: a key/value summary (report.txt), one tab-separated
// record per sampled pair (records.tsv) and a per-system table (summary.tsv).
// All numbers print with "%.17g", so equal inputs give equal bytes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "semisens/sensitivity.hpp"

namespace semisens {

struct SystemOutcome {
  /// Row label, e.g. "product" or "product/factor-2".
  std::string label;
  std::string action;
  std::string metric;
  int precision_bits = 0;
  int precision_budget = 0;
  SensitivityReport sensitivity;
  double null_radius = 0.0;
  std::int64_t null_radius_box = 0;
  /// Conservativity/ergodicity evidence: reference-grid density of an orbit tail.
  double tail_density = 0.0;
  /// Extra facts (certificates, restriction data), in insertion order.
  std::vector<std::pair<std::string, std::string>> facts;
};

struct ExperimentReport {
  std::string experiment;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<SystemOutcome> systems;
  /// Experiment-level facts (certificates, comparisons).
  std::vector<std::pair<std::string, std::string>> facts;
  /// Hypotheses taken on trust, each with the evidence recorded for it.
  std::vector<std::string> assumptions;

  const SystemOutcome& system(const std::string& label) const;
  bool all_conclusive() const;
};

std::string render_report(const ExperimentReport& report);
std::string render_records(const ExperimentReport& report);
std::string render_summary(const ExperimentReport& report);

/// Writes report.txt, records.tsv and summary.tsv into dir (created if
/// needed). Returns the paths written.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace semisens
