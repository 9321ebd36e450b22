#include "semisens/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace semisens {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits on `sep` outside parentheses; whitespace separators collapse.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty() || sep != ' ') out.push_back(t);
    cur.clear();
  };
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool is_sep = sep == ' ' ? (c == ' ' || c == '\t') : c == sep;
    if (is_sep && depth == 0) {
      flush();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || (sep != ' ' && !out.empty())) flush();
  if (sep == ' ') std::erase_if(out, [](const std::string& t) { return t.empty(); });
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": expected an integer, got '" + t + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": expected a nonnegative integer, got '" + t + "'");
  }
  return v;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno != 0) {
    throw ConfigError(what + ": expected a number, got '" + t + "'");
  }
  return v;
}

// "name(args)" -> {name, args}; a bare word has empty args.
std::pair<std::string, std::string> call_form(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos) return {t, ""};
  if (t.back() != ')') throw ConfigError("unbalanced parentheses in '" + t + "'");
  return {trim(t.substr(0, open)), trim(t.substr(open + 1, t.size() - open - 2))};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string elements_text(const std::vector<Element>& es) {
  std::vector<std::string> parts;
  for (const Element& e : es) parts.push_back(to_string(e));
  return join(parts, " ");
}

std::string ints_text(const std::vector<std::int64_t>& v) {
  std::vector<std::string> parts;
  for (std::int64_t x : v) parts.push_back(std::to_string(x));
  return join(parts, " ");
}

std::vector<std::int64_t> parse_ints(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const std::string& t : split_top(text, ' ')) out.push_back(parse_int(t, what));
  return out;
}

std::string canonical_map(const std::string& text, FactorKind kind, int bits) {
  const FactorMap m = parse_factor_map(text, kind, bits);
  const auto [name, args] = call_form(text);
  if (kind == FactorKind::Shift) return "shift(" + std::to_string(m.shift) + ")";
  if (name == "id") return "id";
  if (name == "mul") return "mul(" + std::to_string(m.multiplier) + ")";
  const std::vector<std::string> a = split_top(args, ',');
  if (name == "rot") return "rot(" + trim(a[0]) + ")";
  return "affine(" + std::to_string(m.multiplier) + ", " + trim(a[1]) + ")";
}

std::string measure_text(const SystemSpec& s) {
  std::vector<std::string> parts;
  for (std::size_t j = 0; j < s.factors.size(); ++j) {
    parts.push_back(s.factors[j] == FactorKind::Circle ? "haar" : "bernoulli(" + format_double(s.bernoulli[j]) + ")");
  }
  return join(parts, ", ");
}

// Fields collected per section before they are interpreted.
struct Section {
  std::string kind;
  std::string name;
  int line = 0;
  std::vector<std::tuple<std::string, std::string, int>> fields;
};

class FieldReader {
 public:
  FieldReader(const Section& sec, const std::string& origin) : sec_(sec), origin_(origin) {
    for (const auto& [k, v, line] : sec.fields) {
      if (!values_.emplace(k, std::make_pair(v, line)).second) {
        throw ConfigError(where(k, line) + ": field given twice");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    current_ = key;
    line_ = it->second.second;
    std::string v = it->second.first;
    values_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError(header() + ": missing field '" + key + "'");
    return *v;
  }

  // Runs f, prefixing any error with the field's location.
  template <class F>
  auto field(const std::string& key, F&& f) -> decltype(f(std::string{})) {
    auto v = take(key);
    if (!v) return decltype(f(std::string{}))();
    try {
      return f(*v);
    } catch (const Error& e) {
      throw ConfigError(where(key, line_) + ": " + e.what());
    }
  }

  template <class F>
  auto required_field(const std::string& key, F&& f) {
    const std::string v = require(key);
    try {
      return f(v);
    } catch (const Error& e) {
      throw ConfigError(where(key, line_) + ": " + e.what());
    }
  }

  void finish() const {
    if (!values_.empty()) {
      const auto& [k, v] = *values_.begin();
      throw ConfigError(where(k, v.second) + ": unknown field");
    }
  }

  std::string where(const std::string& key, int line) const {
    return origin_ + ":" + std::to_string(line) + ": " + header() + " field '" + key + "'";
  }
  std::string header() const { return "[" + sec_.kind + (sec_.name.empty() ? "" : " " + sec_.name) + "]"; }
  std::vector<std::string> remaining_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
  }

 private:
  const Section& sec_;
  std::string origin_;
  std::map<std::string, std::pair<std::string, int>> values_;
  std::string current_;
  int line_ = 0;
};

void read_sensitivity(FieldReader& r, SensitivityConfig& s) {
  if (auto v = r.field("boxes", [](const std::string& t) { return parse_ints(t, "boxes"); }); !v.empty()) s.boxes = v;
  auto set_int = [&](const char* key, int& dst) {
    if (auto v = r.field(key, [&](const std::string& t) { return std::optional<int>(static_cast<int>(parse_int(t, key))); })) dst = *v;
  };
  auto set_real = [&](const char* key, double& dst) {
    if (auto v = r.field(key, [&](const std::string& t) { return std::optional<double>(parse_real(t, key)); })) dst = *v;
  };
  set_int("n_x", s.n_x);
  set_int("n_y", s.n_y);
  set_real("q", s.q);
  set_int("anchor_depth", s.anchor_depth);
  if (auto v = r.field("anchors", [](const std::string& t) {
        return trim(t) == "auto" ? std::optional<std::vector<Element>>(std::vector<Element>{})
                                 : std::optional<std::vector<Element>>(parse_elements(t));
      })) {
    s.anchors = *v;
  }
  set_real("resolution", s.resolution);
  set_real("plateau_tol", s.plateau_tol);
  set_real("plateau_fraction", s.plateau_fraction);
  set_int("isometry_samples", s.isometry_samples);
  if (auto v = r.field("rigidity_scan", [](const std::string& t) { return std::optional<std::int64_t>(parse_int(t, "rigidity_scan")); })) {
    s.rigidity_scan = *v;
  }
  set_int("rigidity_samples", s.rigidity_samples);
  set_int("rigidity_keep", s.rigidity_keep);
  r.finish();
}

SystemSpec read_system(FieldReader& r, const std::string& name) {
  SystemSpec s;
  s.name = name;
  s.semigroup = r.required_field("semigroup", [](const std::string& t) { return parse_semigroup(t); });
  s.factors = r.required_field("factors", [](const std::string& t) {
    std::vector<FactorKind> out;
    for (const std::string& f : split_top(t, ',')) {
      if (f == "circle") {
        out.push_back(FactorKind::Circle);
      } else if (f == "shift") {
        out.push_back(FactorKind::Shift);
      } else {
        throw ConfigError("unknown factor '" + f + "' (circle or shift)");
      }
    }
    if (out.empty() || static_cast<int>(out.size()) > kMaxFactors) {
      throw ConfigError("need 1 to " + std::to_string(kMaxFactors) + " factors");
    }
    return out;
  });
  if (auto v = r.field("precision_bits", [](const std::string& t) {
        const auto bits = parse_int(t, "precision_bits");
        if (bits < kMinPrecisionBits || bits > kMaxPrecisionBits) {
          throw ConfigError("precision must lie in [" + std::to_string(kMinPrecisionBits) + ", " +
                            std::to_string(kMaxPrecisionBits) + "]");
        }
        return std::optional<int>(static_cast<int>(bits));
      })) {
    s.precision_bits = *v;
  }
  for (int i = 1; i <= s.semigroup.dim(); ++i) {
    const std::string key = "gen." + std::to_string(i);
    s.maps.push_back(r.required_field(key, [&](const std::string& t) {
      const std::vector<std::string> parts = split_top(t, ',');
      if (parts.size() != s.factors.size()) {
        throw ConfigError("expected " + std::to_string(s.factors.size()) + " factor maps, got " +
                          std::to_string(parts.size()));
      }
      std::vector<std::string> out;
      for (std::size_t j = 0; j < parts.size(); ++j) out.push_back(canonical_map(parts[j], s.factors[j], s.precision_bits));
      return out;
    }));
  }
  s.bernoulli.assign(s.factors.size(), 0.5);
  r.field("measure", [&](const std::string& t) {
    std::vector<std::string> parts = split_top(t, ',');
    if (parts.size() == 1 && s.factors.size() > 1) parts.assign(s.factors.size(), parts[0]);
    if (parts.size() != s.factors.size()) throw ConfigError("one measure per factor expected");
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const auto [fn, args] = call_form(parts[j]);
      if (fn == "haar") {
        s.bernoulli[j] = 0.5;
      } else if (fn == "bernoulli" && s.factors[j] == FactorKind::Shift) {
        const double p = parse_real(args, "bernoulli");
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("bernoulli parameter must lie in (0, 1)");
        s.bernoulli[j] = p;
      } else {
        throw ConfigError("measure '" + parts[j] + "' does not fit factor " + std::to_string(j + 1));
      }
    }
    return 0;
  });
  if (auto v = r.field("metric", [](const std::string& t) { return std::optional<std::string>(trim(t)); })) s.metric = *v;
  r.finish();
  try {
    (void)s.build();
    (void)s.build_metric();
  } catch (const ConfigError& e) {
    throw ConfigError(r.header() + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(r.header() + ": " + e.what());
  }
  return s;
}

SubSemigroupEntry read_subsemigroup(FieldReader& r, const std::string& name) {
  SubSemigroupEntry e;
  e.name = name;
  e.system = r.required_field("system", [](const std::string& t) { return trim(t); });
  e.kind = r.required_field("kind", [](const std::string& t) { return trim(t); });
  e.generators = r.field("generators", [](const std::string& t) { return parse_elements(t); });
  e.sizes = r.field("sizes", [](const std::string& t) { return parse_ints(t, "sizes"); });
  if (auto v = r.field("f_bound", [](const std::string& t) { return std::optional<std::int64_t>(parse_int(t, "f_bound")); })) {
    e.f_bound = *v;
  }
  r.finish();
  return e;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Element parse_element(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty element");
  if (t.front() != '(') return Element{parse_int(t, "element")};
  if (t.back() != ')') throw ConfigError("element '" + t + "' lacks a closing parenthesis");
  std::vector<std::int64_t> coords;
  for (const std::string& c : split_top(t.substr(1, t.size() - 2), ',')) coords.push_back(parse_int(c, "element"));
  if (coords.empty() || static_cast<int>(coords.size()) > kMaxDim) {
    throw ConfigError("element '" + t + "' must have 1 to " + std::to_string(kMaxDim) + " coordinates");
  }
  return Element(std::span<const std::int64_t>(coords));
}

std::vector<Element> parse_elements(const std::string& text) {
  std::vector<Element> out;
  for (const std::string& t : split_top(text, ' ')) out.push_back(parse_element(t));
  return out;
}

Semigroup parse_semigroup(const std::string& text) {
  const std::vector<std::string> w = split_top(text, ' ');
  if (w.empty()) throw ConfigError("empty semigroup");
  const std::string& kind = w[0];
  if (kind == "full_lattice") {
    if (w.size() != 2) throw ConfigError("usage: full_lattice D");
    return Semigroup::full_lattice(static_cast<int>(parse_int(w[1], "dimension")));
  }
  if (kind == "scaled_lattice") {
    if (w.size() != 3) throw ConfigError("usage: scaled_lattice D K");
    return Semigroup::scaled_lattice(static_cast<int>(parse_int(w[1], "dimension")), parse_int(w[2], "scale"));
  }
  if (kind == "generated") {
    if (w.size() < 2) throw ConfigError("usage: generated E1 E2 ...");
    return Semigroup::generated(parse_elements(text.substr(text.find("generated") + 9)));
  }
  if (kind == "cone") {
    if (w.size() != 3) throw ConfigError("usage: cone (a,b) (c,d)");
    return Semigroup::cone(parse_element(w[1]), parse_element(w[2]));
  }
  throw ConfigError("unknown semigroup kind '" + kind + "'");
}

FactorMap parse_factor_map(const std::string& text, FactorKind kind, int bits) {
  const auto [name, args] = call_form(text);
  const std::vector<std::string> a = args.empty() ? std::vector<std::string>{} : split_top(args, ',');
  auto arity = [&](std::size_t n) {
    if (a.size() != n) throw ConfigError("'" + trim(text) + "' takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "id") {
    arity(0);
    return kind == FactorKind::Shift ? FactorMap::left_shift(0) : FactorMap::times(1, bits);
  }
  if (kind == FactorKind::Shift) {
    if (name != "shift") throw ConfigError("'" + trim(text) + "' is not a map of a shift factor (use shift(s))");
    arity(1);
    return FactorMap::left_shift(parse_int(a[0], "shift"));
  }
  if (name == "mul") {
    arity(1);
    return FactorMap::times(parse_uint(a[0], "multiplier"), bits);
  }
  if (name == "rot") {
    arity(1);
    return FactorMap::rotation(FixedPoint::parse(bits, trim(a[0])));
  }
  if (name == "affine") {
    arity(2);
    return FactorMap::affine(parse_uint(a[0], "multiplier"), FixedPoint::parse(bits, trim(a[1])));
  }
  throw ConfigError("'" + trim(text) + "' is not a circle map (mul, rot, affine, id)");
}

SemigroupAction SystemSpec::build() const {
  const StateSpace space = StateSpace::of(factors, precision_bits);
  std::vector<GeneratorMap> gens;
  for (const auto& row : maps) {
    GeneratorMap g;
    for (std::size_t j = 0; j < row.size(); ++j) g.push_back(parse_factor_map(row[j], factors[j], precision_bits));
    gens.push_back(std::move(g));
  }
  return SemigroupAction(semigroup, space, MeasureSpec{bernoulli}, std::move(gens));
}

Metric SystemSpec::build_metric() const { return Metric::named(metric, StateSpace::of(factors, precision_bits)); }

std::string SystemSpec::canonical() const {
  std::ostringstream os;
  os << "[system " << name << "]\n";
  os << "semigroup = " << semigroup.describe() << "\n";
  std::vector<std::string> f;
  for (FactorKind k : factors) f.push_back(k == FactorKind::Circle ? "circle" : "shift");
  os << "factors = " << join(f, ", ") << "\n";
  for (std::size_t i = 0; i < maps.size(); ++i) os << "gen." << i + 1 << " = " << join(maps[i], ", ") << "\n";
  os << "measure = " << measure_text(*this) << "\n";
  os << "metric = " << metric << "\n";
  os << "precision_bits = " << precision_bits << "\n";
  return os.str();
}

SubSemigroupSpec SubSemigroupEntry::build(const Semigroup& parent) const {
  const std::vector<std::string> w = split_top(kind, ' ');
  if (w.empty()) throw ConfigError("[subsemigroup " + name + "] field 'kind': empty");
  try {
    if (w[0] == "whole" && w.size() == 1) return SubSemigroupSpec::whole(parent);
    if (w[0] == "scaled" && w.size() == 2) return SubSemigroupSpec::scaled(parent, parse_int(w[1], "scale"));
    if (w[0] == "generated" && w.size() >= 2) {
      return SubSemigroupSpec::generated(parent, parse_elements(kind.substr(kind.find("generated") + 9)));
    }
    if (w[0] == "cone" && w.size() == 3) {
      return SubSemigroupSpec::cone(parent, parse_element(w[1]), parse_element(w[2]));
    }
  } catch (const Error& e) {
    throw ConfigError("[subsemigroup " + name + "] field 'kind': " + e.what());
  }
  throw ConfigError("[subsemigroup " + name + "] field 'kind': expected whole | scaled K | generated E... | cone R1 R2");
}

std::string SubSemigroupEntry::canonical() const {
  std::ostringstream os;
  os << "[subsemigroup " << name << "]\n";
  os << "system = " << system << "\n";
  os << "kind = " << join(split_top(kind, ' '), " ") << "\n";
  os << "generators = " << (generators.empty() ? "auto" : elements_text(generators)) << "\n";
  os << "sizes = " << ints_text(sizes) << "\n";
  os << "f_bound = " << f_bound << "\n";
  return os.str();
}

const SystemSpec& ExperimentConfig::system(const std::string& name) const {
  for (const SystemSpec& s : systems) {
    if (s.name == name) return s;
  }
  throw ConfigError("no [system " + name + "] section in the config");
}

const SubSemigroupEntry& ExperimentConfig::subsemigroup(const std::string& name) const {
  for (const SubSemigroupEntry& s : subsemigroups) {
    if (s.name == name) return s;
  }
  throw ConfigError("no [subsemigroup " + name + "] section in the config");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "[run]\nseed = " << seed << "\nout = " << out << "\nnull_samples = " << null_samples << "\n";
  const SensitivityConfig& s = sensitivity;
  os << "[sensitivity]\n";
  os << "boxes = " << ints_text(s.boxes) << "\n";
  os << "n_x = " << s.n_x << "\nn_y = " << s.n_y << "\n";
  os << "q = " << format_double(s.q) << "\n";
  os << "anchors = " << (s.anchors.empty() ? "auto" : elements_text(s.anchors)) << "\n";
  os << "anchor_depth = " << s.anchor_depth << "\n";
  os << "resolution = " << format_double(s.resolution) << "\n";
  os << "plateau_tol = " << format_double(s.plateau_tol) << "\n";
  os << "plateau_fraction = " << format_double(s.plateau_fraction) << "\n";
  os << "isometry_samples = " << s.isometry_samples << "\n";
  os << "rigidity_scan = " << s.rigidity_scan << "\n";
  os << "rigidity_samples = " << s.rigidity_samples << "\n";
  os << "rigidity_keep = " << s.rigidity_keep << "\n";
  for (const SystemSpec& sys : systems) os << sys.canonical();
  for (const SubSemigroupEntry& sub : subsemigroups) os << sub.canonical();
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

void ExperimentConfig::override_seed(std::uint64_t s) {
  seed = s;
  sensitivity.seed = s;
}

void ExperimentConfig::override_box(std::int64_t n) {
  if (n < 1) throw ConfigError("--box must be positive");
  sensitivity.boxes = n >= 2 ? std::vector<std::int64_t>{n / 2, n} : std::vector<std::int64_t>{n};
}

void ExperimentConfig::override_precision(int bits) {
  for (SystemSpec& s : systems) {
    s.precision_bits = bits;
    try {
      (void)s.build();
    } catch (const Error& e) {
      throw ConfigError(std::string("--precision-bits: ") + e.what());
    }
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(origin + ":" + std::to_string(line) + ": malformed section header");
      const std::vector<std::string> w = split_top(t.substr(1, t.size() - 2), ' ');
      if (w.empty() || w.size() > 2) throw ConfigError(origin + ":" + std::to_string(line) + ": malformed section header");
      sections.push_back({w[0], w.size() == 2 ? w[1] : "", line, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'key = value'");
    if (sections.empty()) throw ConfigError(origin + ":" + std::to_string(line) + ": field outside any section");
    sections.back().fields.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)), line);
  }

  ExperimentConfig cfg;
  std::map<std::string, int> names;
  for (const Section& sec : sections) {
    FieldReader r(sec, origin);
    const std::string at = origin + ":" + std::to_string(sec.line) + ": ";
    if (sec.kind == "run") {
      if (!sec.name.empty()) throw ConfigError(at + "[run] takes no name");
      if (auto v = r.field("seed", [](const std::string& t) { return std::optional<std::uint64_t>(parse_uint(t, "seed")); })) {
        cfg.seed = *v;
      }
      if (auto v = r.field("out", [](const std::string& t) { return std::optional<std::string>(trim(t)); })) cfg.out = *v;
      if (auto v = r.field("null_samples", [](const std::string& t) {
            const auto n = parse_int(t, "null_samples");
            if (n < 1) throw ConfigError("must be positive");
            return std::optional<int>(static_cast<int>(n));
          })) {
        cfg.null_samples = *v;
      }
      r.finish();
    } else if (sec.kind == "sensitivity") {
      if (!sec.name.empty()) throw ConfigError(at + "[sensitivity] takes no name");
      read_sensitivity(r, cfg.sensitivity);
    } else if (sec.kind == "system" || sec.kind == "subsemigroup") {
      if (sec.name.empty()) throw ConfigError(at + "[" + sec.kind + "] needs a name");
      if (names[sec.kind + " " + sec.name]++) throw ConfigError(at + "duplicate section [" + sec.kind + " " + sec.name + "]");
      if (sec.kind == "system") {
        cfg.systems.push_back(read_system(r, sec.name));
      } else {
        cfg.subsemigroups.push_back(read_subsemigroup(r, sec.name));
      }
    } else {
      throw ConfigError(at + "unknown section [" + sec.kind + "]");
    }
  }
  cfg.sensitivity.seed = cfg.seed;
  try {
    cfg.sensitivity.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": [sensitivity] field " + e.what());
  }
  for (const SubSemigroupEntry& sub : cfg.subsemigroups) {
    const SystemSpec& sys = cfg.system(sub.system);
    (void)sub.build(sys.semigroup);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace semisens
