#include "semisens/action.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "semisens/metric.hpp"
#include "semisens/random.hpp"

namespace semisens {

namespace {

constexpr std::uint64_t kRigidityStream = 0x7269676964ull;

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::int64_t>::max();
  return out;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) return std::numeric_limits<std::int64_t>::max();
  return out;
}

struct Affine {
  FixedPoint q;  // integer multiplier mod 2^L
  FixedPoint b;  // offset mod 1
};

// (a ∘ c)(x) = a.q (c.q x + c.b) + a.b
Affine compose(const Affine& a, const Affine& c) { return {a.q * c.q, a.q * c.b + a.b}; }

Affine power(Affine base, std::int64_t n, int bits) {
  Affine acc{FixedPoint::from_integer(bits, 1), FixedPoint(bits)};
  while (n > 0) {
    if (n & 1) acc = compose(acc, base);
    n >>= 1;
    if (n) base = compose(base, base);
  }
  return acc;
}

std::uint64_t checked_pow(std::uint64_t q, std::int64_t n) {
  std::uint64_t acc = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(acc, q, &acc)) {
      throw Error("multiplier " + std::to_string(q) + "^" + std::to_string(n) + " overflows 64 bits");
    }
  }
  return acc;
}

Coordinate apply_factor(const FactorMap& map, const Coordinate& x) {
  if (map.kind == FactorKind::Shift) return {x.value.shifted_left(static_cast<int>(std::min<std::int64_t>(map.shift, x.value.bits()))), x.consumed + map.shift};
  const FixedPoint q = FixedPoint::from_integer(x.value.bits(), map.multiplier);
  return {q * x.value + map.offset, x.consumed + map.bits_per_application()};
}

Point apply_generator(const GeneratorMap& gen, const Point& x) {
  Point out;
  out.coords.reserve(x.coords.size());
  for (std::size_t j = 0; j < x.coords.size(); ++j) out.coords.push_back(apply_factor(gen[j], x.coords[j]));
  return out;
}

std::vector<Point> reference_grid(const StateSpace& space) {
  const int m = space.factor_count();
  const int per = std::max(2, static_cast<int>(std::floor(std::pow(4096.0, 1.0 / m) + 1e-9)));
  std::vector<std::vector<Coordinate>> axes;
  for (FactorKind kind : space.factors()) {
    std::vector<Coordinate> axis;
    if (kind == FactorKind::Circle) {
      for (int i = 0; i < per; ++i) {
        axis.push_back({FixedPoint::parse(space.precision_bits(), std::to_string(i) + "/" + std::to_string(per)), 0});
      }
    } else {
      const int depth = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(per))) - 1);
      for (int w = 0; w < (1 << depth); ++w) {
        FixedPoint v(space.precision_bits());
        for (int b = 0; b < depth; ++b) v.set_bit(b, (w >> (depth - 1 - b)) & 1);
        axis.push_back({v, 0});
      }
    }
    axes.push_back(std::move(axis));
  }
  std::vector<Point> grid{Point{}};
  for (const auto& axis : axes) {
    std::vector<Point> next;
    next.reserve(grid.size() * axis.size());
    for (const Point& p : grid) {
      for (const Coordinate& c : axis) {
        Point q = p;
        q.coords.push_back(c);
        next.push_back(std::move(q));
      }
    }
    grid = std::move(next);
  }
  return grid;
}

}  // namespace

StateSpace StateSpace::of(std::vector<FactorKind> factors, int bits) {
  if (factors.empty() || static_cast<int>(factors.size()) > kMaxFactors) {
    throw Error("a state space has 1 to " + std::to_string(kMaxFactors) + " factors");
  }
  (void)FixedPoint(bits);  // validates the precision
  StateSpace s;
  s.factors_ = std::move(factors);
  s.bits_ = bits;
  return s;
}

StateSpace StateSpace::circle(int bits) { return of({FactorKind::Circle}, bits); }

StateSpace StateSpace::torus(int m, int bits) {
  if (m < 1) throw Error("torus dimension must be >= 1");
  return of(std::vector<FactorKind>(static_cast<std::size_t>(m), FactorKind::Circle), bits);
}

StateSpace StateSpace::shift(int bits) { return of({FactorKind::Shift}, bits); }

StateSpace StateSpace::product(const StateSpace& a, const StateSpace& b) {
  if (a.bits_ != b.bits_) throw Error("product factors must share one precision");
  std::vector<FactorKind> f = a.factors_;
  f.insert(f.end(), b.factors_.begin(), b.factors_.end());
  return of(std::move(f), a.bits_);
}

std::string StateSpace::describe() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " x ";
    out += factors_[i] == FactorKind::Circle ? "circle" : "shift";
  }
  return out;
}

MeasureSpec MeasureSpec::for_space(const StateSpace& space, double p) {
  return MeasureSpec{std::vector<double>(static_cast<std::size_t>(space.factor_count()), p)};
}

std::string MeasureSpec::describe(const StateSpace& space) const {
  std::ostringstream os;
  for (int i = 0; i < space.factor_count(); ++i) {
    if (i) os << " x ";
    if (space.factors()[static_cast<std::size_t>(i)] == FactorKind::Circle) {
      os << "haar";
    } else {
      os << "bernoulli(" << bernoulli_p[static_cast<std::size_t>(i)] << ")";
    }
  }
  return os.str();
}

FactorMap FactorMap::affine(std::uint64_t q, const FixedPoint& beta) {
  if (q < 1) throw Error("circle multiplier must be >= 1");
  FactorMap m;
  m.kind = FactorKind::Circle;
  m.multiplier = q;
  m.offset = beta;
  return m;
}

FactorMap FactorMap::rotation(const FixedPoint& beta) { return affine(1, beta); }

FactorMap FactorMap::times(std::uint64_t q, int bits) { return affine(q, FixedPoint(bits)); }

FactorMap FactorMap::left_shift(std::int64_t s) {
  if (s < 0) throw Error("shift amount must be >= 0");
  FactorMap m;
  m.kind = FactorKind::Shift;
  m.shift = s;
  return m;
}

std::int64_t FactorMap::bits_per_application() const {
  if (kind == FactorKind::Shift) return shift;
  return multiplier <= 1 ? 0 : std::bit_width(multiplier - 1);
}

std::string FactorMap::describe() const {
  if (kind == FactorKind::Shift) return "shift(" + std::to_string(shift) + ")";
  if (offset.is_zero()) return multiplier == 1 ? "id" : "mul(" + std::to_string(multiplier) + ")";
  std::ostringstream os;
  os.precision(17);
  if (multiplier == 1) {
    os << "rot(" << offset.to_double() << ")";
  } else {
    os << "affine(" << multiplier << ", " << offset.to_double() << ")";
  }
  return os.str();
}

SemigroupAction::SemigroupAction(Semigroup semigroup, StateSpace space, MeasureSpec measure,
                                 std::vector<GeneratorMap> generators)
    : semigroup_(std::move(semigroup)),
      space_(std::move(space)),
      measure_(std::move(measure)),
      gens_(std::move(generators)) {
  const auto factors = static_cast<std::size_t>(space_.factor_count());
  if (static_cast<int>(gens_.size()) != semigroup_.dim()) {
    throw Error("need one generator map per ambient coordinate: " + std::to_string(semigroup_.dim()) +
                " expected, " + std::to_string(gens_.size()) + " given");
  }
  if (measure_.bernoulli_p.size() != factors) throw Error("measure does not match the state space");
  for (std::size_t j = 0; j < factors; ++j) {
    if (space_.factors()[j] == FactorKind::Shift) {
      const double p = measure_.bernoulli_p[j];
      if (!(p > 0.0 && p < 1.0)) throw Error("Bernoulli parameter must lie in (0, 1)");
    }
  }
  for (const GeneratorMap& gen : gens_) {
    if (gen.size() != factors) throw Error("generator map does not match the number of factors");
    for (std::size_t j = 0; j < factors; ++j) {
      if (gen[j].kind != space_.factors()[j]) throw Error("generator map kind does not match factor kind");
      if (gen[j].kind == FactorKind::Circle && gen[j].offset.bits() != space_.precision_bits()) {
        throw Error("rotation offset precision does not match the state space");
      }
    }
  }
  // Affine maps q1 x + b1 and q2 x + b2 commute iff (q1 - 1) b2 = (q2 - 1) b1 mod 1.
  const int bits = space_.precision_bits();
  for (std::size_t j = 0; j < factors; ++j) {
    if (space_.factors()[j] != FactorKind::Circle) continue;
    for (std::size_t a = 0; a < gens_.size(); ++a) {
      for (std::size_t c = a + 1; c < gens_.size(); ++c) {
        const FactorMap& u = gens_[a][j];
        const FactorMap& v = gens_[c][j];
        const FixedPoint lhs = FixedPoint::from_integer(bits, u.multiplier - 1) * v.offset;
        const FixedPoint rhs = FixedPoint::from_integer(bits, v.multiplier - 1) * u.offset;
        if (!(lhs == rhs)) {
          throw Error("generator maps " + std::to_string(a + 1) + " and " + std::to_string(c + 1) +
                      " do not commute on factor " + std::to_string(j + 1));
        }
      }
    }
  }
}

CompiledMap SemigroupAction::compile(const Element& g) const {
  if (!semigroup_.contains(g)) {
    throw NotAMember(to_string(g) + " is not in the semigroup " + semigroup_.describe());
  }
  const int bits = space_.precision_bits();
  const auto factors = static_cast<std::size_t>(space_.factor_count());
  CompiledMap out;
  out.element = g;
  out.multiplier.assign(factors, FixedPoint::from_integer(bits, 1));
  out.offset.assign(factors, FixedPoint(bits));
  out.shift.assign(factors, 0);
  out.is_shift.assign(factors, 0);
  out.pure_rotation.assign(factors, 1);
  out.consumed.assign(factors, 0);
  for (std::size_t j = 0; j < factors; ++j) {
    if (space_.factors()[j] == FactorKind::Circle) {
      Affine acc{FixedPoint::from_integer(bits, 1), FixedPoint(bits)};
      for (int i = 0; i < g.dim(); ++i) {
        if (g[i] == 0) continue;
        const FactorMap& m = gens_[static_cast<std::size_t>(i)][j];
        acc = compose(acc, power({FixedPoint::from_integer(bits, m.multiplier), m.offset}, g[i], bits));
        out.consumed[j] = saturating_add(out.consumed[j], saturating_mul(g[i], m.bits_per_application()));
      }
      out.multiplier[j] = acc.q;
      out.offset[j] = acc.b;
      out.pure_rotation[j] = acc.q == FixedPoint::from_integer(bits, 1);
    } else {
      std::int64_t s = 0;
      for (int i = 0; i < g.dim(); ++i) {
        s = saturating_add(s, saturating_mul(g[i], gens_[static_cast<std::size_t>(i)][j].shift));
      }
      out.shift[j] = s;
      out.is_shift[j] = 1;
      out.consumed[j] = s;
    }
  }
  return out;
}

Point apply_compiled(const CompiledMap& map, const Point& x, int budget) {
  Point out;
  out.coords.resize(x.coords.size());
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    const Coordinate& c = x.coords[j];
    const std::int64_t consumed = saturating_add(c.consumed, map.consumed[j]);
    if (consumed > budget) {
      throw PrecisionExhausted("applying T_" + to_string(map.element) + " consumes " + std::to_string(consumed) +
                               " bits of factor " + std::to_string(j + 1) + "; the budget is " +
                               std::to_string(budget) + " (raise precision_bits or shrink the box)");
    }
    Coordinate& o = out.coords[j];
    o.consumed = consumed;
    if (map.is_shift[j]) {
      o.value = c.value.shifted_left(static_cast<int>(std::min<std::int64_t>(map.shift[j], c.value.bits())));
    } else if (map.pure_rotation[j]) {
      o.value = c.value + map.offset[j];
    } else {
      o.value = map.multiplier[j] * c.value + map.offset[j];
    }
  }
  return out;
}

Point SemigroupAction::apply(const Element& g, const Point& x) const {
  if (static_cast<int>(x.coords.size()) != space_.factor_count()) throw Error("point does not belong to the space");
  return apply_compiled(compile(g), x, space_.budget());
}

GeneratorMap SemigroupAction::closed_form_generator(const Element& g) const {
  const CompiledMap compiled = compile(g);
  GeneratorMap out;
  for (std::size_t j = 0; j < static_cast<std::size_t>(space_.factor_count()); ++j) {
    if (space_.factors()[j] == FactorKind::Shift) {
      out.push_back(FactorMap::left_shift(compiled.shift[j]));
      continue;
    }
    std::uint64_t q = 1;
    for (int i = 0; i < g.dim(); ++i) {
      const std::uint64_t term = checked_pow(gens_[static_cast<std::size_t>(i)][j].multiplier, g[i]);
      if (__builtin_mul_overflow(q, term, &q)) throw Error("multiplier of T_" + to_string(g) + " overflows 64 bits");
    }
    out.push_back(FactorMap::affine(q, compiled.offset[j]));
  }
  return out;
}

std::string SemigroupAction::describe() const {
  std::ostringstream os;
  os << "G=" << semigroup_.describe() << "; X=" << space_.describe() << "; mu=" << measure_.describe(space_)
     << "; L=" << space_.precision_bits() << "; maps=";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << " | ";
    for (std::size_t j = 0; j < gens_[i].size(); ++j) {
      if (j) os << ", ";
      os << gens_[i][j].describe();
    }
  }
  return os.str();
}

OrbitWindow::OrbitWindow(const SemigroupAction& action, std::vector<Element> elements)
    : elements_(std::move(elements)), budget_(action.space().budget()) {
  maps_.reserve(elements_.size());
  for (const Element& g : elements_) maps_.push_back(action.compile(g));
}

void OrbitWindow::orbit(const Point& x, std::vector<Point>& out) const {
  out.resize(maps_.size());
  for (std::size_t i = 0; i < maps_.size(); ++i) out[i] = apply_compiled(maps_[i], x, budget_);
}

Point sample_point(const StateSpace& space, const MeasureSpec& measure, std::uint64_t seed) {
  Rng rng(mix64(seed));
  Point out;
  const int bits = space.precision_bits();
  for (int j = 0; j < space.factor_count(); ++j) {
    FixedPoint v(bits);
    const double p = measure.bernoulli_p[static_cast<std::size_t>(j)];
    if (space.factors()[static_cast<std::size_t>(j)] == FactorKind::Circle || p == 0.5) {
      for (int i = 0; i < v.limb_count(); ++i) v.set_limb(i, rng());
    } else {
      for (int b = 0; b < bits; ++b) v.set_bit(b, uniform01(rng) < p);
    }
    out.coords.push_back({v, 0});
  }
  return out;
}

Point make_point(const StateSpace& space, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != space.factor_count()) throw Error("one value per factor expected");
  Point out;
  for (double v : values) out.coords.push_back({FixedPoint::from_double(space.precision_bits(), v), 0});
  return out;
}

Point make_point(const StateSpace& space, const std::vector<std::string>& literals) {
  if (static_cast<int>(literals.size()) != space.factor_count()) throw Error("one value per factor expected");
  Point out;
  for (const std::string& s : literals) out.coords.push_back({FixedPoint::parse(space.precision_bits(), s), 0});
  return out;
}

double orbit_tail_density(const SemigroupAction& action, const Metric& metric, const Point& x, const Element& g,
                          std::int64_t n, double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  const OrbitWindow window(action, tail_in_box(action.semigroup(), g, n));
  std::vector<Point> orbit;
  window.orbit(x, orbit);
  const std::vector<Point> grid = reference_grid(action.space());
  std::size_t covered = 0;
  for (const Point& p : grid) {
    for (const Point& o : orbit) {
      if (metric.dist(p, o) < eps) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(grid.size());
}

std::vector<double> uniform_rigidity_probe(const SemigroupAction& action, const Metric& metric,
                                           const std::vector<Element>& schedule, int sample_count,
                                           std::uint64_t seed) {
  if (schedule.empty()) throw Error("rigidity probe needs a nonempty schedule");
  std::vector<Point> samples;
  for (int s = 0; s < sample_count; ++s) {
    samples.push_back(sample_point(action.space(), action.measure(), derive_seed(seed, kRigidityStream, static_cast<std::uint64_t>(s))));
  }
  std::vector<double> out;
  for (const Element& h : schedule) {
    const CompiledMap map = action.compile(h);
    double worst = 0.0;
    for (const Point& x : samples) worst = std::max(worst, metric.dist(apply_compiled(map, x, action.space().budget()), x));
    out.push_back(worst);
  }
  return out;
}

std::vector<Element> rigidity_schedule(const SemigroupAction& action, const Metric& metric, std::int64_t scan_length,
                                       int sample_count, int keep, std::uint64_t seed) {
  Element unit(action.semigroup().dim());
  for (const Element& g : action.semigroup().generators()) unit = unit + g;
  std::vector<Point> samples;
  for (int s = 0; s < sample_count; ++s) {
    samples.push_back(sample_point(action.space(), action.measure(), derive_seed(seed, kRigidityStream, static_cast<std::uint64_t>(s))));
  }
  std::vector<Element> times;
  double record = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= scan_length; ++i) {
    const Element h = scale(unit, i);
    double worst = 0.0;
    try {
      const CompiledMap map = action.compile(h);
      for (const Point& x : samples) worst = std::max(worst, metric.dist(apply_compiled(map, x, action.space().budget()), x));
    } catch (const PrecisionExhausted&) {
      break;
    }
    if (worst <= record) {
      record = worst;
      times.push_back(h);
    }
  }
  if (static_cast<int>(times.size()) > keep) times.erase(times.begin(), times.end() - keep);
  return times;
}

SemigroupAction factor_project(const SemigroupAction& action, int factor) {
  const StateSpace& space = action.space();
  if (space.factor_count() < 2) throw Error("factor_project needs a product space, got " + space.describe());
  if (factor < 0 || factor >= space.factor_count()) throw Error("factor index out of range");
  const auto j = static_cast<std::size_t>(factor);
  std::vector<GeneratorMap> gens;
  for (const GeneratorMap& g : action.generators()) gens.push_back({g[j]});
  return SemigroupAction(action.semigroup(), StateSpace::of({space.factors()[j]}, space.precision_bits()),
                         MeasureSpec{{action.measure().bernoulli_p[j]}}, std::move(gens));
}

SemigroupAction reverse_factors(const SemigroupAction& action) {
  std::vector<FactorKind> kinds = action.space().factors();
  std::reverse(kinds.begin(), kinds.end());
  MeasureSpec measure = action.measure();
  std::reverse(measure.bernoulli_p.begin(), measure.bernoulli_p.end());
  std::vector<GeneratorMap> gens = action.generators();
  for (GeneratorMap& g : gens) std::reverse(g.begin(), g.end());
  return SemigroupAction(action.semigroup(), StateSpace::of(std::move(kinds), action.space().precision_bits()),
                         std::move(measure), std::move(gens));
}

double commutation_defect(const SemigroupAction& action, const Metric& metric, int sample_count, std::uint64_t seed) {
  double worst = 0.0;
  const auto& gens = action.generators();
  for (int s = 0; s < sample_count; ++s) {
    const Point x = sample_point(action.space(), action.measure(), derive_seed(seed, 0xc0ull, static_cast<std::uint64_t>(s)));
    for (std::size_t a = 0; a < gens.size(); ++a) {
      for (std::size_t c = a + 1; c < gens.size(); ++c) {
        const Point ac = apply_generator(gens[a], apply_generator(gens[c], x));
        const Point ca = apply_generator(gens[c], apply_generator(gens[a], x));
        worst = std::max(worst, metric.dist(ac, ca));
      }
    }
  }
  return worst;
}

}  // namespace semisens
