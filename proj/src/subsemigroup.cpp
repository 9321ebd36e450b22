#include "semisens/subsemigroup.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "semisens/metric.hpp"
#include "semisens/random.hpp"

namespace semisens {

namespace {

constexpr std::int64_t kVerifyBox = 10;
constexpr std::uint64_t kRestrictStream = 0x72657374ull;
constexpr std::size_t kMaxExhaustive = 3;
constexpr std::size_t kMaxReported = 16;

using Bits = std::vector<std::uint64_t>;

std::size_t first_zero(const Bits& bits, std::size_t n) {
  for (std::size_t w = 0; w < bits.size(); ++w) {
    if (bits[w] != ~0ull) {
      const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_one(bits[w]));
      return std::min(i, n);
    }
  }
  return n;
}

bool test(const Bits& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1u; }

Bits merged(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = a[w] | b[w];
  return out;
}

std::size_t popcount_new(const Bits& covered, const Bits& add) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < add.size(); ++w) n += static_cast<std::size_t>(std::popcount(add[w] & ~covered[w]));
  return n;
}

// Bits past n are set so that "everything covered" means "all words full".
Bits empty_cover(std::size_t n) {
  Bits b((n + 63) / 64, 0);
  for (std::size_t i = n; i < b.size() * 64; ++i) b[i / 64] |= 1ull << (i % 64);
  return b;
}

// Depth-limited search branching on the first uncovered element.
bool search(const std::vector<Bits>& classes, std::size_t n, const Bits& covered, std::size_t depth,
            std::vector<std::size_t>& chosen) {
  const std::size_t g = first_zero(covered, n);
  if (g == n) return true;
  if (depth == 0) return false;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!test(classes[c], g)) continue;
    chosen.push_back(c);
    if (search(classes, n, merged(covered, classes[c]), depth - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

std::int64_t max_coord_of(const std::vector<Element>& gens) {
  std::int64_t m = 1;
  for (const Element& g : gens) m = std::max(m, g.max_coord());
  return m;
}

}  // namespace

SubSemigroupSpec::SubSemigroupSpec(Semigroup parent, Semigroup shape, bool whole)
    : parent_(std::move(parent)), shape_(std::move(shape)), whole_(whole) {
  if (parent_.dim() != shape_.dim()) throw DimensionMismatch("sub-semigroup and parent differ in dimension");
  verify();
}

SubSemigroupSpec SubSemigroupSpec::scaled(const Semigroup& parent, std::int64_t k) {
  return SubSemigroupSpec(parent, Semigroup::scaled_lattice(parent.dim(), k), false);
}

SubSemigroupSpec SubSemigroupSpec::generated(const Semigroup& parent, std::vector<Element> generators) {
  for (const Element& g : generators) {
    if (!parent.contains(g)) throw NotAMember("generator " + to_string(g) + " is not in " + parent.describe());
  }
  return SubSemigroupSpec(parent, Semigroup::generated(std::move(generators)), false);
}

SubSemigroupSpec SubSemigroupSpec::cone(const Semigroup& parent, const Element& ray1, const Element& ray2) {
  return SubSemigroupSpec(parent, Semigroup::cone(ray1, ray2), false);
}

SubSemigroupSpec SubSemigroupSpec::whole(const Semigroup& parent) {
  return SubSemigroupSpec(parent, Semigroup::full_lattice(parent.dim()), true);
}

bool SubSemigroupSpec::contains(const Element& v) const { return parent_.contains(v) && shape_.contains(v); }

std::string SubSemigroupSpec::describe() const {
  if (whole_) return parent_.describe();
  if (parent_.kind() == SemigroupKind::FullLattice) return shape_.describe();
  return "(" + shape_.describe() + ") ∩ (" + parent_.describe() + ")";
}

void SubSemigroupSpec::verify() const {
  const SubSemigroupTable table(*this, 2 * kVerifyBox);
  if (!table.contains(Element(parent_.dim()))) throw Error("sub-semigroup does not contain 0");
  std::vector<Element> members;
  for (const Element& v : enumerate_in_box(parent_, kVerifyBox)) {
    if (table.contains(v)) members.push_back(v);
  }
  for (const Element& a : members) {
    for (const Element& b : members) {
      if (!table.contains(a + b)) {
        throw Error(describe() + " is not closed under addition: " + to_string(a) + " + " + to_string(b));
      }
    }
  }
}

std::vector<Element> SubSemigroupSpec::default_generators() const {
  if (whole_) return parent_.generators();
  if (parent_.kind() == SemigroupKind::FullLattice) return shape_.generators();
  const std::int64_t bound = 4 * max_coord_of(shape_.generators()) * max_coord_of(parent_.generators());
  const SubSemigroupTable table(*this, bound);
  std::vector<Element> members;
  for (const Element& v : enumerate_in_box(parent_, bound)) {
    if (!v.is_zero() && table.contains(v)) members.push_back(v);
  }
  std::vector<Element> irreducible;
  for (const Element& v : members) {
    const bool reducible = std::any_of(members.begin(), members.end(), [&](const Element& u) {
      return u != v && coordinatewise_leq(u, v) && table.contains(v - u);
    });
    if (!reducible) irreducible.push_back(v);
  }
  return irreducible;
}

SubSemigroupTable::SubSemigroupTable(const SubSemigroupSpec& spec, std::int64_t bound)
    : parent_(spec.parent(), bound), shape_(spec.shape(), bound) {}

bool SubSemigroupTable::contains(const Element& v) const { return parent_.contains(v) && shape_.contains(v); }

SyndeticCertificate is_syndetic(const Semigroup& G, const SubSemigroupSpec& H, const std::vector<Element>& F,
                                std::int64_t n) {
  for (const Element& f : F) {
    if (!G.contains(f)) throw NotAMember("translate " + to_string(f) + " is not in " + G.describe());
  }
  std::int64_t reach = n;
  for (const Element& f : F) reach = std::max(reach, n + f.max_coord());
  const SubSemigroupTable table(H, reach);
  SyndeticCertificate out;
  out.scale = n;
  out.F = F;
  for (const Element& g : enumerate_in_box(G, n)) {
    const auto it = std::find_if(F.begin(), F.end(), [&](const Element& f) { return table.contains(f + g); });
    if (it == F.end()) {
      out.uncovered.push_back(g);
    } else {
      out.cover.emplace_back(g, *it);
    }
  }
  out.syndetic = out.uncovered.empty();
  return out;
}

SyndeticSearch find_syndetic_witness(const Semigroup& G, const SubSemigroupSpec& H, std::int64_t f_bound,
                                     std::int64_t n) {
  if (f_bound < 0) f_bound = 4 * n;
  SyndeticSearch out;
  out.scale = n;
  out.f_bound = f_bound;
  const std::vector<Element> elements = enumerate_in_box(G, n);
  const std::vector<Element> candidates = enumerate_in_box(G, f_bound);
  const SubSemigroupTable table(H, n + f_bound);
  const std::size_t count = elements.size();

  // Candidates with identical coverage are interchangeable; keep the first.
  std::vector<Bits> classes;
  std::vector<Element> representative;
  std::map<Bits, std::size_t> seen;
  Bits coverable = empty_cover(count);
  for (const Element& f : candidates) {
    Bits b((count + 63) / 64, 0);
    for (std::size_t i = 0; i < count; ++i) {
      if (table.contains(f + elements[i])) b[i / 64] |= 1ull << (i % 64);
    }
    if (seen.emplace(b, classes.size()).second) {
      coverable = merged(coverable, b);
      classes.push_back(std::move(b));
      representative.push_back(f);
    }
  }
  for (std::size_t i = 0; i < count && out.uncoverable.size() < kMaxReported; ++i) {
    if (!test(coverable, i)) out.uncoverable.push_back(elements[i]);
  }
  if (!out.uncoverable.empty()) return out;

  auto finish = [&](const std::vector<std::size_t>& chosen) {
    std::vector<Element> F;
    for (std::size_t c : chosen) F.push_back(representative[c]);
    std::sort(F.begin(), F.end(), graded_lex_less);
    out.witness = std::move(F);
  };
  for (std::size_t depth = 1; depth <= kMaxExhaustive; ++depth) {
    std::vector<std::size_t> chosen;
    if (search(classes, count, empty_cover(count), depth, chosen)) {
      out.minimal = true;
      finish(chosen);
      return out;
    }
  }
  std::vector<std::size_t> chosen;
  Bits covered = empty_cover(count);
  while (first_zero(covered, count) < count) {
    std::size_t best = 0;
    std::size_t gain = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const std::size_t g = popcount_new(covered, classes[c]);
      if (g > gain) {
        gain = g;
        best = c;
      }
    }
    chosen.push_back(best);
    covered = merged(covered, classes[best]);
  }
  finish(chosen);
  return out;
}

ThickResult is_thick(const Semigroup& G, const SubSemigroupSpec& H, const std::vector<std::int64_t>& sizes,
                     std::int64_t p_bound) {
  ThickResult out;
  out.thick = true;
  for (std::int64_t m : sizes) {
    if (m < 0) throw Error("thick box size must be nonnegative");
    const std::int64_t bound = p_bound < 0 ? 4 * m : p_bound;
    const SubSemigroupTable table(H, m + bound);
    const std::vector<Element> block = enumerate_in_box(G, m);
    ThickWitness w;
    w.size = m;
    for (const Element& p : enumerate_in_box(G, bound)) {
      if (std::all_of(block.begin(), block.end(), [&](const Element& b) { return table.contains(b + p); })) {
        w.p = p;
        break;
      }
    }
    out.thick = out.thick && w.p.has_value();
    out.witnesses.push_back(w);
  }
  return out;
}

Element RestrictedAction::embed(const Element& c) const {
  if (c.dim() != static_cast<int>(generators.size())) throw DimensionMismatch("coordinate vector has wrong length");
  Element out(subsemigroup.parent().dim());
  for (int i = 0; i < c.dim(); ++i) out = out + scale(generators[static_cast<std::size_t>(i)], c[i]);
  return out;
}

RestrictedAction restrict_action(const SemigroupAction& action, const SubSemigroupSpec& H,
                                 std::vector<Element> generators) {
  if (!(H.parent() == action.semigroup())) {
    throw Error("sub-semigroup parent " + H.parent().describe() + " differs from the acting semigroup " +
                action.semigroup().describe());
  }
  if (generators.empty()) throw Error("restriction needs at least one generator");
  if (static_cast<int>(generators.size()) > kMaxDim) {
    throw Error("restriction supports at most " + std::to_string(kMaxDim) + " generators");
  }
  for (const Element& h : generators) {
    if (h.is_zero() || !H.contains(h)) throw NotAMember("generator " + to_string(h) + " is not a nonzero member of H");
  }
  const Semigroup span = Semigroup::generated(generators);
  const SubSemigroupTable table(H, kVerifyBox);
  for (const Element& v : enumerate_in_box(H.parent(), kVerifyBox)) {
    if (table.contains(v) && !span.contains(v)) {
      throw Error("generators do not generate " + H.describe() + ": " + to_string(v) + " is missing in Box(" +
                  std::to_string(kVerifyBox) + ")");
    }
  }
  std::vector<GeneratorMap> maps;
  const int budget = action.space().budget();
  for (const Element& h : generators) {
    GeneratorMap m = action.closed_form_generator(h);
    for (const FactorMap& f : m) {
      if (f.bits_per_application() > budget) {
        throw PrecisionExhausted("T_" + to_string(h) + " consumes " + std::to_string(f.bits_per_application()) +
                                 " bits per application, over the budget of " + std::to_string(budget));
      }
    }
    maps.push_back(std::move(m));
  }
  const auto r = static_cast<int>(generators.size());
  SemigroupAction restricted(Semigroup::full_lattice(r), action.space(), action.measure(), std::move(maps));
  return RestrictedAction{std::move(restricted), H, std::move(generators)};
}

double restriction_defect(const SemigroupAction& parent, const RestrictedAction& restricted, int samples,
                          std::int64_t n, std::uint64_t seed) {
  const Metric metric = Metric::base(parent.space());
  const std::vector<Element> coords = enumerate_in_box(restricted.action.semigroup(), n);
  std::vector<Element> embedded;
  for (const Element& c : coords) embedded.push_back(restricted.embed(c));
  const OrbitWindow mine(restricted.action, coords);
  const OrbitWindow theirs(parent, embedded);
  std::vector<Point> a;
  std::vector<Point> b;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point x =
        sample_point(parent.space(), parent.measure(), derive_seed(seed, kRestrictStream, static_cast<std::uint64_t>(s)));
    mine.orbit(x, a);
    theirs.orbit(x, b);
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, metric.dist(a[i], b[i]));
  }
  return worst;
}

}  // namespace semisens
