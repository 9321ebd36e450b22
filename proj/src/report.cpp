#include "semisens/report.hpp"

#include <fstream>
#include <sstream>

#include "semisens/config.hpp"

namespace semisens {

namespace {

std::string elements_line(const std::vector<Element>& es) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ' ';
    out += to_string(es[i]);
  }
  return out;
}

std::string doubles_line(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += format_double(vs[i]);
  }
  return out;
}

void kv(std::ostream& os, const std::string& key, const std::string& value) { os << key << '\t' << value << '\n'; }

}  // namespace

const SystemOutcome& ExperimentReport::system(const std::string& label) const {
  for (const SystemOutcome& s : systems) {
    if (s.label == label) return s;
  }
  throw Error("report has no system '" + label + "'");
}

bool ExperimentReport::all_conclusive() const {
  for (const SystemOutcome& s : systems) {
    if (s.sensitivity.verdict == Verdict::Inconclusive) return false;
  }
  return true;
}

std::string render_report(const ExperimentReport& r) {
  std::ostringstream os;
  os << "# semisens report\n";
  kv(os, "experiment", r.experiment);
  kv(os, "config_hash", hex64(r.config_hash));
  kv(os, "seed", std::to_string(r.seed));
  for (const auto& [k, v] : r.facts) kv(os, k, v);
  for (const SystemOutcome& s : r.systems) {
    const SensitivityReport& sr = s.sensitivity;
    const SensitivityConfig& c = sr.config;
    os << "\n[system " << s.label << "]\n";
    kv(os, "action", s.action);
    kv(os, "metric", s.metric);
    kv(os, "seed", std::to_string(c.seed));
    std::string boxes;
    for (std::size_t i = 0; i < c.boxes.size(); ++i) boxes += (i ? " " : "") + std::to_string(c.boxes[i]);
    kv(os, "box_schedule", boxes);
    kv(os, "tail_anchors", elements_line(sr.anchors));
    kv(os, "precision_bits", std::to_string(s.precision_bits));
    kv(os, "precision_budget", std::to_string(s.precision_budget));
    kv(os, "q", format_double(c.q));
    kv(os, "n_x", std::to_string(c.n_x));
    kv(os, "n_y", std::to_string(c.n_y));
    kv(os, "resolution", format_double(c.resolution));
    kv(os, "plateau_tol", format_double(c.plateau_tol));
    kv(os, "verdict", to_string(sr.verdict));
    kv(os, "verdict_reason", sr.verdict_reason);
    kv(os, "delta_hat", format_double(sr.delta_hat));
    kv(os, "delta_hat_band", format_double(sr.band_lo) + " " + format_double(sr.band_hi));
    kv(os, "delta_hat_exists_form", format_double(sr.delta_hat_exists));
    kv(os, "delta_hat_ae_x_form", format_double(sr.delta_hat_ae));
    kv(os, "form_discrepancy", format_double(sr.delta_hat_exists - sr.delta_hat));
    kv(os, "plateau_fraction", format_double(sr.plateau_fraction));
    kv(os, "isometry_defect", format_double(sr.isometry_defect));
    kv(os, "rigidity_times", elements_line(sr.rigidity_times));
    kv(os, "rigidity_values", doubles_line(sr.rigidity_values));
    kv(os, "null_radius", format_double(s.null_radius) + " (box " + std::to_string(s.null_radius_box) + ")");
    kv(os, "orbit_tail_density", format_double(s.tail_density));
    for (const auto& [k, v] : s.facts) kv(os, k, v);
    os << "basepoints\tx_index score band_lo band_hi exists_score min median max plateau_fraction\n";
    for (const BasepointSummary& b : sr.basepoints) {
      os << "basepoint\t" << b.x_index << ' ' << format_double(b.score) << ' ' << format_double(b.band_lo) << ' '
         << format_double(b.band_hi) << ' ' << format_double(b.exists_score) << ' ' << format_double(b.min) << ' '
         << format_double(b.median) << ' ' << format_double(b.max) << ' ' << format_double(b.plateau_fraction) << '\n';
    }
  }
  os << "\n[assumptions]\n";
  for (const std::string& a : r.assumptions) kv(os, "assumption", a);
  return os.str();
}

std::string render_records(const ExperimentReport& r) {
  std::ostringstream os;
  os << "system\tx_index\ty_index\tx_seed\ty_seed\tanchor\tbox\tlimsup\texists_sup\tplateaued\n";
  for (const SystemOutcome& s : r.systems) {
    for (const PairRecord& p : s.sensitivity.pairs) {
      os << s.label << '\t' << p.x_index << '\t' << p.y_index << '\t' << hex64(p.x_seed) << '\t' << hex64(p.y_seed)
         << '\t' << to_string(p.anchor) << '\t' << p.box << '\t' << format_double(p.limsup) << '\t'
         << format_double(p.exists_sup) << '\t' << (p.plateaued ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

std::string render_summary(const ExperimentReport& r) {
  std::ostringstream os;
  os << "system\tverdict\tdelta_hat\tband_lo\tband_hi\tdelta_hat_exists\tdelta_hat_ae\tplateau_fraction\t"
        "isometry_defect\trigidity_last\tnull_radius\torbit_tail_density\n";
  for (const SystemOutcome& s : r.systems) {
    const SensitivityReport& sr = s.sensitivity;
    os << s.label << '\t' << to_string(sr.verdict) << '\t' << format_double(sr.delta_hat) << '\t'
       << format_double(sr.band_lo) << '\t' << format_double(sr.band_hi) << '\t' << format_double(sr.delta_hat_exists)
       << '\t' << format_double(sr.delta_hat_ae) << '\t' << format_double(sr.plateau_fraction) << '\t'
       << format_double(sr.isometry_defect) << '\t'
       << (sr.rigidity_values.empty() ? std::string("nan") : format_double(sr.rigidity_values.back())) << '\t'
       << format_double(s.null_radius) << '\t' << format_double(s.tail_density) << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"report.txt", render_report(report)},
      {"records.tsv", render_records(report)},
      {"summary.tsv", render_summary(report)},
  };
  std::vector<std::filesystem::path> out;
  for (const auto& [name, body] : files) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << body;
    out.push_back(path);
  }
  return out;
}

}  // namespace semisens
