#pragma once

// Concrete nonsingular actions of a semigroup G ⊂ N^d on products of circles
// and one-sided binary shifts. Every generator acts factorwise, either by an
// affine circle map x -> q x + beta (mod 1) or by a power of the left shift.
// T_g is evaluated in closed form on L-bit binary fractions.

#include <cstdint>
#include <string>
#include <vector>

#include "semisens/fixed_point.hpp"
#include "semisens/semigroup.hpp"

namespace semisens {

class Metric;

enum class FactorKind { Circle, Shift };

inline constexpr int kMaxFactors = 4;
/// Bits of a point that must stay meaningful after any application.
inline constexpr int kPrecisionReserve = 32;

/// A finite product of circles R/Z and one-sided binary sequence spaces, all
/// points held at the same precision L.
class StateSpace {
 public:
  static StateSpace circle(int bits = kDefaultPrecisionBits);
  static StateSpace torus(int m, int bits = kDefaultPrecisionBits);
  static StateSpace shift(int bits = kDefaultPrecisionBits);
  static StateSpace product(const StateSpace& a, const StateSpace& b);
  static StateSpace of(std::vector<FactorKind> factors, int bits);

  const std::vector<FactorKind>& factors() const { return factors_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  int precision_bits() const { return bits_; }
  /// Largest admissible consumed depth of a coordinate.
  int budget() const { return bits_ - kPrecisionReserve; }
  std::string describe() const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<FactorKind> factors_;
  int bits_ = kDefaultPrecisionBits;
};

/// Haar measure on circle factors, Bernoulli(p) on shift factors; product
/// across factors. Each entry is the Bernoulli parameter of that factor and
/// is ignored for circles.
struct MeasureSpec {
  std::vector<double> bernoulli_p;

  static MeasureSpec for_space(const StateSpace& space, double p = 0.5);
  std::string describe(const StateSpace& space) const;
  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// One coordinate of a point together with the number of its trailing bits
/// already pushed out by expanding maps.
struct Coordinate {
  FixedPoint value;
  std::int64_t consumed = 0;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

struct Point {
  std::vector<Coordinate> coords;
  friend bool operator==(const Point&, const Point&) = default;
};

/// A factorwise map: x -> q x + beta on a circle, or shift by s on a sequence.
struct FactorMap {
  FactorKind kind = FactorKind::Circle;
  std::uint64_t multiplier = 1;
  FixedPoint offset;
  std::int64_t shift = 0;

  static FactorMap affine(std::uint64_t q, const FixedPoint& beta);
  static FactorMap rotation(const FixedPoint& beta);
  static FactorMap times(std::uint64_t q, int bits);
  static FactorMap left_shift(std::int64_t s);

  /// ceil(log2 q) for circle maps, s for shifts.
  std::int64_t bits_per_application() const;
  std::string describe() const;
  friend bool operator==(const FactorMap&, const FactorMap&) = default;
};

using GeneratorMap = std::vector<FactorMap>;

/// T_g in closed form: per factor either (Q, B) with x -> Q x + B, Q and B
/// reduced mod 1, or a total shift S.
struct CompiledMap {
  Element element;
  std::vector<FixedPoint> multiplier;
  std::vector<FixedPoint> offset;
  std::vector<std::int64_t> shift;
  std::vector<char> is_shift;
  std::vector<char> pure_rotation;
  std::vector<std::int64_t> consumed;
};

class SemigroupAction {
 public:
  /// Validates shapes and that the generator maps commute (exactly, in the
  /// L-bit arithmetic). Throws Error otherwise.
  SemigroupAction(Semigroup semigroup, StateSpace space, MeasureSpec measure, std::vector<GeneratorMap> generators);

  const Semigroup& semigroup() const { return semigroup_; }
  const StateSpace& space() const { return space_; }
  const MeasureSpec& measure() const { return measure_; }
  /// One map per ambient coordinate of the semigroup.
  const std::vector<GeneratorMap>& generators() const { return gens_; }

  /// Closed form of T_g. Throws NotAMember for g outside G.
  CompiledMap compile(const Element& g) const;

  /// T_g x. Throws NotAMember, or PrecisionExhausted once a coordinate would
  /// consume more than L - 32 bits.
  Point apply(const Element& g, const Point& x) const;

  /// T_g as a single generator map with exact integer multipliers. Throws
  /// Error when a multiplier overflows 64 bits.
  GeneratorMap closed_form_generator(const Element& g) const;

  std::string describe() const;

 private:
  Semigroup semigroup_;
  StateSpace space_;
  MeasureSpec measure_;
  std::vector<GeneratorMap> gens_;
};

/// Applies a compiled map. `budget` is the admissible consumed depth.
Point apply_compiled(const CompiledMap& map, const Point& x, int budget);

/// T_g for a fixed list of elements, compiled once.
class OrbitWindow {
 public:
  OrbitWindow(const SemigroupAction& action, std::vector<Element> elements);

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return maps_.size(); }
  const CompiledMap& map(std::size_t i) const { return maps_[i]; }

  /// out[i] = T_{elements[i]} x.
  void orbit(const Point& x, std::vector<Point>& out) const;

 private:
  std::vector<Element> elements_;
  std::vector<CompiledMap> maps_;
  int budget_;
};

/// One i.i.d. draw from the measure, reproducible per seed.
Point sample_point(const StateSpace& space, const MeasureSpec& measure, std::uint64_t seed);

/// A point given by one double per factor (binary expansion for shifts).
Point make_point(const StateSpace& space, const std::vector<double>& values);
/// A point given by one literal per factor ("1/3", "0.1").
Point make_point(const StateSpace& space, const std::vector<std::string>& literals);

/// Fraction of a fixed reference grid within eps of {T_h x : h in tail_in_box(G, g, n)}.
double orbit_tail_density(const SemigroupAction& action, const Metric& metric, const Point& x, const Element& g,
                          std::int64_t n, double eps);

/// For each h in the schedule, the max over sampled x of d(T_h x, x).
std::vector<double> uniform_rigidity_probe(const SemigroupAction& action, const Metric& metric,
                                           const std::vector<Element>& schedule, int sample_count,
                                           std::uint64_t seed = 0);

/// Rigidity times along multiples i * s of the generator sum: the indices at
/// which the sampled sup-displacement reaches a new (non-strict) minimum,
/// scanning i = 1..scan_length or until precision runs out. Keeps the last
/// `keep` of them.
std::vector<Element> rigidity_schedule(const SemigroupAction& action, const Metric& metric, std::int64_t scan_length,
                                       int sample_count, int keep, std::uint64_t seed = 0);

/// The component action on one factor of a product space, with the
/// component measure. Throws Error for single-factor spaces.
SemigroupAction factor_project(const SemigroupAction& action, int factor);

/// The same system with the factors of a product listed in reverse order.
SemigroupAction reverse_factors(const SemigroupAction& action);

/// Max over sampled x and generator pairs of d(T_i T_k x, T_k T_i x).
double commutation_defect(const SemigroupAction& action, const Metric& metric, int sample_count,
                          std::uint64_t seed = 0);

}  // namespace semisens
