#pragma once

// Finitely generated sub-monoids of N^d (d <= 4), their divisibility order
// g <= h  <=>  h = g + x for some x in G, and bounded enumeration.

#include <array>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "semisens/errors.hpp"

namespace semisens {

inline constexpr int kMaxDim = 4;

/// A point of Z^d. Members of a semigroup have nonnegative coordinates;
/// differences h - g are allowed to go negative.
class Element {
 public:
  Element() = default;
  explicit Element(int dim);
  Element(std::initializer_list<std::int64_t> coords);
  explicit Element(std::span<const std::int64_t> coords);

  int dim() const { return dim_; }
  std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const std::int64_t> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  bool is_zero() const;
  bool nonnegative() const;
  std::int64_t max_coord() const;
  std::int64_t coord_sum() const;

  friend bool operator==(const Element& a, const Element& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::array<std::int64_t, kMaxDim> c_{};
  int dim_ = 0;
};

/// Coordinatewise sum. Throws DimensionMismatch.
Element add(const Element& g, const Element& h);
Element subtract(const Element& h, const Element& g);
Element scale(const Element& g, std::int64_t k);
inline Element operator+(const Element& g, const Element& h) { return add(g, h); }
inline Element operator-(const Element& h, const Element& g) { return subtract(h, g); }

/// Total degree first, then lexicographic. The enumeration order everywhere.
bool graded_lex_less(const Element& a, const Element& b);

/// "3" in dimension one, "(1,2)" otherwise.
std::string to_string(const Element& g);

/// Coordinatewise order on Z^d.
bool coordinatewise_leq(const Element& a, const Element& b);

enum class SemigroupKind { FullLattice, ScaledLattice, FinitelyGenerated, Cone };

std::string to_string(SemigroupKind kind);

/// A pointed, cancellative sub-monoid of N^d. Immutable.
class Semigroup {
 public:
  static Semigroup full_lattice(int dim);
  /// k N^d, k >= 1.
  static Semigroup scaled_lattice(int dim, std::int64_t k);
  /// Nonnegative integer combinations of nonzero generators.
  static Semigroup generated(std::vector<Element> generators);
  /// Integer points weakly between two linearly independent rays in N^2.
  static Semigroup cone(const Element& ray1, const Element& ray2);

  SemigroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::int64_t scale_factor() const { return k_; }
  const std::array<Element, 2>& rays() const { return rays_; }

  /// Generators of the monoid. For cones this is the Hilbert basis.
  const std::vector<Element>& generators() const { return gens_; }

  /// Membership. Anything with a negative coordinate is rejected. For the
  /// finitely generated kind this runs a dynamic program over [0, v].
  bool contains(const Element& v) const;

  std::string describe() const;

  friend bool operator==(const Semigroup& a, const Semigroup& b);

 private:
  Semigroup() = default;
  bool fast_contains(const Element& v) const;

  SemigroupKind kind_ = SemigroupKind::FullLattice;
  int dim_ = 1;
  std::int64_t k_ = 1;
  std::array<Element, 2> rays_{};
  std::vector<Element> gens_;
};

/// Precomputed membership of G over Box(n); falls back to Semigroup::contains
/// outside the box. Build one when the same box is queried repeatedly.
class MemberTable {
 public:
  MemberTable(const Semigroup& semigroup, std::int64_t bound);

  bool contains(const Element& v) const;
  const Semigroup& semigroup() const { return *semigroup_; }
  std::int64_t bound() const { return bound_; }

 private:
  std::size_t index(const Element& v) const;

  const Semigroup* semigroup_;
  std::int64_t bound_;
  std::vector<char> table_;
};

template <class S>
concept MemberSet = requires(const S& s, const Element& v) {
  { s.contains(v) } -> std::convertible_to<bool>;
};

bool member(const Semigroup& semigroup, const Element& v);

/// g <= h in the order of G: h - g is a member.
bool leq(const Semigroup& semigroup, const Element& g, const Element& h);

/// Members of G inside Box(n) = {v : 0 <= v_i <= n}, graded-lex ordered.
std::vector<Element> enumerate_in_box(const Semigroup& semigroup, std::int64_t n);

/// {g in Box(n) ∩ G : h <= g}.
std::vector<Element> tail_in_box(const Semigroup& semigroup, const Element& h, std::int64_t n);

/// f^{-1}A restricted to Box(n): {g in Box(n) ∩ G : f + g in A}.
template <MemberSet A>
std::vector<Element> backward_translate(const Semigroup& semigroup, const Element& f, const A& set,
                                        std::int64_t n) {
  std::vector<Element> out;
  for (const Element& g : enumerate_in_box(semigroup, n)) {
    if (set.contains(add(f, g))) out.push_back(g);
  }
  return out;
}

/// An increasing sequence h_1 <= h_2 <= ... standing in for "g -> infinity".
struct CofinalSchedule {
  std::vector<Element> terms;
  /// Largest m such that h_depth dominates every member of Box(m).
  std::int64_t dominated_box = 0;
};

/// Multiples of the sum of the generators. Throws Error for the trivial
/// monoid {0}, which has no sequence tending to infinity.
CofinalSchedule cofinal_schedule(const Semigroup& semigroup, int depth);

}  // namespace semisens
