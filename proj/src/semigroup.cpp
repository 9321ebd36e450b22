#include "semisens/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace semisens {

namespace {

void require_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionMismatch("ambient dimension must be in [1, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  }
}

void require_same_dim(const Element& a, const Element& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + to_string(a) + " vs " + to_string(b));
  }
}

std::int64_t cross(const Element& a, const Element& b) { return a[0] * b[1] - a[1] * b[0]; }

// Mixed-radix index of v inside the rectangle [0, extent].
std::size_t rect_index(const Element& v, const Element& extent) {
  std::size_t idx = 0;
  for (int i = 0; i < v.dim(); ++i) {
    idx = idx * static_cast<std::size_t>(extent[i] + 1) + static_cast<std::size_t>(v[i]);
  }
  return idx;
}

std::size_t rect_cells(const Element& extent) {
  std::size_t cells = 1;
  for (int i = 0; i < extent.dim(); ++i) cells *= static_cast<std::size_t>(extent[i] + 1);
  return cells;
}

constexpr std::size_t kMaxTableCells = std::size_t{1} << 28;

// reachable[v] for every v in [0, extent], visiting cells in index order so
// that v - gen (gen nonzero, nonnegative) is always already decided.
std::vector<char> reachability(const std::vector<Element>& gens, const Element& extent) {
  const std::size_t cells = rect_cells(extent);
  if (cells > kMaxTableCells) {
    throw Error("membership table over " + to_string(extent) + " is too large");
  }
  std::vector<char> table(cells, 0);
  Element v(extent.dim());
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (idx == 0) {
      table[0] = 1;
    } else {
      for (const Element& gen : gens) {
        if (!coordinatewise_leq(gen, v)) continue;
        if (table[rect_index(v - gen, extent)]) {
          table[idx] = 1;
          break;
        }
      }
    }
    // advance v in mixed radix, last coordinate fastest
    for (int i = v.dim() - 1; i >= 0; --i) {
      if (++v[i] <= extent[i]) break;
      v[i] = 0;
    }
  }
  return table;
}

Element primitive(const Element& ray) {
  std::int64_t g = std::gcd(ray[0], ray[1]);
  return Element{ray[0] / g, ray[1] / g};
}

}  // namespace

Element::Element(int dim) : dim_(dim) { require_dim(dim); }

Element::Element(std::initializer_list<std::int64_t> coords)
    : Element(std::span<const std::int64_t>(coords.begin(), coords.size())) {}

Element::Element(std::span<const std::int64_t> coords) : dim_(static_cast<int>(coords.size())) {
  require_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool Element::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](std::int64_t x) { return x == 0; });
}

bool Element::nonnegative() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](std::int64_t x) { return x >= 0; });
}

std::int64_t Element::max_coord() const { return *std::max_element(c_.begin(), c_.begin() + dim_); }

std::int64_t Element::coord_sum() const { return std::accumulate(c_.begin(), c_.begin() + dim_, std::int64_t{0}); }

Element add(const Element& g, const Element& h) {
  require_same_dim(g, h);
  Element out(g.dim());
  for (int i = 0; i < g.dim(); ++i) out[i] = g[i] + h[i];
  return out;
}

Element subtract(const Element& h, const Element& g) {
  require_same_dim(g, h);
  Element out(g.dim());
  for (int i = 0; i < g.dim(); ++i) out[i] = h[i] - g[i];
  return out;
}

Element scale(const Element& g, std::int64_t k) {
  Element out(g.dim());
  for (int i = 0; i < g.dim(); ++i) out[i] = g[i] * k;
  return out;
}

bool graded_lex_less(const Element& a, const Element& b) {
  require_same_dim(a, b);
  const auto sa = a.coord_sum();
  const auto sb = b.coord_sum();
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                      b.coords().end());
}

bool coordinatewise_leq(const Element& a, const Element& b) {
  require_same_dim(a, b);
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::string to_string(const Element& g) {
  if (g.dim() == 1) return std::to_string(g[0]);
  std::string out = "(";
  for (int i = 0; i < g.dim(); ++i) {
    if (i) out += ',';
    out += std::to_string(g[i]);
  }
  return out + ")";
}

std::string to_string(SemigroupKind kind) {
  switch (kind) {
    case SemigroupKind::FullLattice: return "full_lattice";
    case SemigroupKind::ScaledLattice: return "scaled_lattice";
    case SemigroupKind::FinitelyGenerated: return "generated";
    case SemigroupKind::Cone: return "cone";
  }
  return "?";
}

Semigroup Semigroup::full_lattice(int dim) {
  require_dim(dim);
  Semigroup s;
  s.kind_ = SemigroupKind::FullLattice;
  s.dim_ = dim;
  for (int i = 0; i < dim; ++i) {
    Element e(dim);
    e[i] = 1;
    s.gens_.push_back(e);
  }
  return s;
}

Semigroup Semigroup::scaled_lattice(int dim, std::int64_t k) {
  require_dim(dim);
  if (k < 1) throw Error("scaled lattice needs k >= 1, got " + std::to_string(k));
  Semigroup s;
  s.kind_ = SemigroupKind::ScaledLattice;
  s.dim_ = dim;
  s.k_ = k;
  for (int i = 0; i < dim; ++i) {
    Element e(dim);
    e[i] = k;
    s.gens_.push_back(e);
  }
  return s;
}

Semigroup Semigroup::generated(std::vector<Element> generators) {
  if (generators.empty()) throw Error("generated semigroup needs at least one generator");
  Semigroup s;
  s.kind_ = SemigroupKind::FinitelyGenerated;
  s.dim_ = generators.front().dim();
  for (const Element& g : generators) {
    if (g.dim() != s.dim_) throw DimensionMismatch("generators of mixed dimension");
    if (!g.nonnegative() || g.is_zero()) {
      throw Error("generators must be nonzero with nonnegative coordinates, got " + to_string(g));
    }
  }
  std::sort(generators.begin(), generators.end(), graded_lex_less);
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  s.gens_ = std::move(generators);
  return s;
}

Semigroup Semigroup::cone(const Element& ray1, const Element& ray2) {
  if (ray1.dim() != 2 || ray2.dim() != 2) throw DimensionMismatch("cones live in N^2");
  if (!ray1.nonnegative() || !ray2.nonnegative() || ray1.is_zero() || ray2.is_zero()) {
    throw Error("cone rays must be nonzero with nonnegative coordinates");
  }
  if (cross(ray1, ray2) == 0) throw Error("cone rays must be linearly independent");
  Semigroup s;
  s.kind_ = SemigroupKind::Cone;
  s.dim_ = 2;
  s.rays_ = {primitive(ray1), primitive(ray2)};

  // Irreducible members lie in the fundamental parallelogram of the
  // primitive rays, so Box(max coordinate of r1 + r2) holds the Hilbert basis.
  const std::int64_t bound = (s.rays_[0] + s.rays_[1]).max_coord();
  std::vector<Element> members;
  for (std::int64_t a = 0; a <= bound; ++a) {
    for (std::int64_t b = 0; b <= bound; ++b) {
      Element v{a, b};
      if (!v.is_zero() && s.fast_contains(v)) members.push_back(v);
    }
  }
  for (const Element& v : members) {
    bool reducible = false;
    for (const Element& u : members) {
      if (u == v || !coordinatewise_leq(u, v)) continue;
      if (s.fast_contains(v - u)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) s.gens_.push_back(v);
  }
  std::sort(s.gens_.begin(), s.gens_.end(), graded_lex_less);
  return s;
}

bool Semigroup::fast_contains(const Element& v) const {
  switch (kind_) {
    case SemigroupKind::FullLattice:
      return v.nonnegative();
    case SemigroupKind::ScaledLattice:
      return v.nonnegative() &&
             std::all_of(v.coords().begin(), v.coords().end(), [&](std::int64_t x) { return x % k_ == 0; });
    case SemigroupKind::Cone: {
      const std::int64_t orient = cross(rays_[0], rays_[1]) > 0 ? 1 : -1;
      return orient * cross(rays_[0], v) >= 0 && orient * cross(v, rays_[1]) >= 0;
    }
    case SemigroupKind::FinitelyGenerated:
      break;
  }
  const auto table = reachability(gens_, v);
  return table.back() != 0;
}

bool Semigroup::contains(const Element& v) const {
  if (v.dim() != dim_) throw DimensionMismatch("element " + to_string(v) + " has wrong dimension");
  if (!v.nonnegative()) return false;
  return fast_contains(v);
}

std::string Semigroup::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SemigroupKind::FullLattice:
      os << "full_lattice " << dim_;
      break;
    case SemigroupKind::ScaledLattice:
      os << "scaled_lattice " << dim_ << ' ' << k_;
      break;
    case SemigroupKind::Cone:
      os << "cone " << to_string(rays_[0]) << ' ' << to_string(rays_[1]);
      break;
    case SemigroupKind::FinitelyGenerated:
      os << "generated";
      for (const Element& g : gens_) os << ' ' << to_string(g);
      break;
  }
  return os.str();
}

bool operator==(const Semigroup& a, const Semigroup& b) {
  return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.k_ == b.k_ && a.rays_ == b.rays_ && a.gens_ == b.gens_;
}

MemberTable::MemberTable(const Semigroup& semigroup, std::int64_t bound)
    : semigroup_(&semigroup), bound_(bound) {
  if (bound < 0) throw Error("box bound must be nonnegative");
  if (semigroup.kind() == SemigroupKind::FinitelyGenerated) {
    Element extent(semigroup.dim());
    for (int i = 0; i < extent.dim(); ++i) extent[i] = bound;
    table_ = reachability(semigroup.generators(), extent);
  }
}

std::size_t MemberTable::index(const Element& v) const {
  std::size_t idx = 0;
  for (int i = 0; i < v.dim(); ++i) idx = idx * static_cast<std::size_t>(bound_ + 1) + static_cast<std::size_t>(v[i]);
  return idx;
}

bool MemberTable::contains(const Element& v) const {
  if (v.dim() != semigroup_->dim()) throw DimensionMismatch("element " + to_string(v) + " has wrong dimension");
  if (!v.nonnegative()) return false;
  if (table_.empty() || v.max_coord() > bound_) return semigroup_->contains(v);
  return table_[index(v)] != 0;
}

bool member(const Semigroup& semigroup, const Element& v) { return semigroup.contains(v); }

bool leq(const Semigroup& semigroup, const Element& g, const Element& h) {
  return semigroup.contains(subtract(h, g));
}

std::vector<Element> enumerate_in_box(const Semigroup& semigroup, std::int64_t n) {
  if (n < 0) throw Error("box bound must be nonnegative");
  const MemberTable table(semigroup, n);
  std::vector<Element> out;
  Element v(semigroup.dim());
  Element extent(semigroup.dim());
  for (int i = 0; i < extent.dim(); ++i) extent[i] = n;
  const std::size_t cells = rect_cells(extent);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (table.contains(v)) out.push_back(v);
    for (int i = v.dim() - 1; i >= 0; --i) {
      if (++v[i] <= n) break;
      v[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

std::vector<Element> tail_in_box(const Semigroup& semigroup, const Element& h, std::int64_t n) {
  const MemberTable table(semigroup, n);
  std::vector<Element> out;
  for (const Element& g : enumerate_in_box(semigroup, n)) {
    if (table.contains(subtract(g, h))) out.push_back(g);
  }
  return out;
}

CofinalSchedule cofinal_schedule(const Semigroup& semigroup, int depth) {
  if (depth < 1) throw Error("cofinal schedule depth must be >= 1");
  if (semigroup.generators().empty()) {
    throw Error("semigroup " + semigroup.describe() + " has no generators and no cofinal sequence");
  }
  Element unit(semigroup.dim());
  for (const Element& g : semigroup.generators()) unit = unit + g;

  CofinalSchedule out;
  for (int i = 1; i <= depth; ++i) out.terms.push_back(scale(unit, i));

  const Element& last = out.terms.back();
  const std::int64_t limit = last.max_coord();
  const MemberTable table(semigroup, limit);
  std::int64_t dominated = limit;
  for (const Element& v : enumerate_in_box(semigroup, limit)) {
    if (!table.contains(subtract(last, v))) dominated = std::min(dominated, v.max_coord() - 1);
  }
  out.dominated_box = dominated;
  return out;
}

}  // namespace semisens
