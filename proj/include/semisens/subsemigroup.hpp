#pragma once

// Syndetic and thick sub-semigroups at bounded scale, and restriction of an
// action to a sub-semigroup re-coordinatized over its generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semisens/action.hpp"
#include "semisens/semigroup.hpp"

namespace semisens {

/// H = parent ∩ shape, where shape is k N^d, a generated monoid or a cone.
class SubSemigroupSpec {
 public:
  /// k N^d ∩ parent.
  static SubSemigroupSpec scaled(const Semigroup& parent, std::int64_t k);
  /// The monoid generated by `generators`, each of which must lie in parent.
  static SubSemigroupSpec generated(const Semigroup& parent, std::vector<Element> generators);
  /// Integer points between two rays, intersected with parent (d = 2).
  static SubSemigroupSpec cone(const Semigroup& parent, const Element& ray1, const Element& ray2);
  /// parent itself.
  static SubSemigroupSpec whole(const Semigroup& parent);

  const Semigroup& parent() const { return parent_; }
  const Semigroup& shape() const { return shape_; }
  bool contains(const Element& v) const;
  std::string describe() const;

  /// Generators of H: those of the shape when the parent is a full lattice,
  /// otherwise the irreducible members of H in a box around the shape's
  /// generators.
  std::vector<Element> default_generators() const;

 private:
  SubSemigroupSpec(Semigroup parent, Semigroup shape, bool whole);
  void verify() const;

  Semigroup parent_;
  Semigroup shape_;
  bool whole_ = false;
};

/// Membership of H over a box, precomputed for repeated queries.
class SubSemigroupTable {
 public:
  SubSemigroupTable(const SubSemigroupSpec& spec, std::int64_t bound);
  bool contains(const Element& v) const;

 private:
  MemberTable parent_;
  MemberTable shape_;
};

struct SyndeticCertificate {
  bool syndetic = false;
  /// Box(scale) is the part of G that was checked.
  std::int64_t scale = 0;
  std::vector<Element> F;
  /// (g, f) with f + g in H, one per member g of Box(scale).
  std::vector<std::pair<Element, Element>> cover;
  /// Members of Box(scale) no f in F covers.
  std::vector<Element> uncovered;
};

/// Whether every g in enumerate_in_box(G, n) has f + g in H for some f in F.
/// Throws NotAMember if F is not inside G.
SyndeticCertificate is_syndetic(const Semigroup& G, const SubSemigroupSpec& H, const std::vector<Element>& F,
                                std::int64_t n);

struct SyndeticSearch {
  /// The witness, sorted graded-lex, or nullopt when none exists in
  /// Box(f_bound) at this scale.
  std::optional<std::vector<Element>> witness;
  /// True when the witness came from the exhaustive search (|F| <= 3) and is
  /// therefore of minimum size; false for the greedy cover.
  bool minimal = false;
  std::int64_t scale = 0;
  std::int64_t f_bound = 0;
  /// When no witness exists: members of Box(scale) that no candidate covers
  /// (first few only).
  std::vector<Element> uncoverable;
};

/// Smallest F inside Box(f_bound) with is_syndetic(G, H, F, n): exhaustive for
/// |F| <= 3, greedy set cover beyond. f_bound < 0 means 4 n.
SyndeticSearch find_syndetic_witness(const Semigroup& G, const SubSemigroupSpec& H, std::int64_t f_bound,
                                     std::int64_t n);

struct ThickWitness {
  std::int64_t size = 0;
  /// Graded-lex first p in Box(p_bound) ∩ G with (Box(size) ∩ G) + p ⊆ H.
  std::optional<Element> p;
};

struct ThickResult {
  bool thick = false;
  std::vector<ThickWitness> witnesses;
};

/// p_bound < 0 means 4 m for each requested size m.
ThickResult is_thick(const Semigroup& G, const SubSemigroupSpec& H, const std::vector<std::int64_t>& sizes,
                     std::int64_t p_bound = -1);

/// An action of N^r obtained from a parent action: coordinate i acts by the
/// closed form of T_{h_i}.
struct RestrictedAction {
  SemigroupAction action;
  SubSemigroupSpec subsemigroup;
  std::vector<Element> generators;

  /// sum c_i h_i, the parent element that c stands for.
  Element embed(const Element& c) const;
};

/// Requires the generators to generate H on Box(10) and each T_{h_i} to fit
/// the precision budget. Throws Error otherwise.
RestrictedAction restrict_action(const SemigroupAction& action, const SubSemigroupSpec& H,
                                 std::vector<Element> generators);

/// max over sampled x and c in Box(n) of d(T'_c x, T_{embed(c)} x); zero when
/// the restriction is consistent.
double restriction_defect(const SemigroupAction& parent, const RestrictedAction& restricted, int samples,
                          std::int64_t n, std::uint64_t seed = 0);

}  // namespace semisens
