#include "semisens/checks/oracles.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace semisens::checks {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Is rest a multiple of g?
bool multiple_of(const Element& rest, const Element& g) {
  std::int64_t c = -1;
  for (int k = 0; k < g.dim(); ++k) {
    if (g[k] == 0) {
      if (rest[k] != 0) return false;
    } else {
      if (rest[k] % g[k] != 0) return false;
      if (c >= 0 && c != rest[k] / g[k]) return false;
      c = rest[k] / g[k];
    }
  }
  return true;
}

bool search(const std::vector<Element>& gens, std::size_t i, const Element& rest) {
  if (rest.is_zero()) return true;
  if (i == gens.size()) return false;
  if (i + 1 == gens.size()) return multiple_of(rest, gens[i]);
  Element r = rest;
  while (r.nonnegative()) {
    if (search(gens, i + 1, r)) return true;
    r = r - gens[i];
  }
  return false;
}

// Decimal digits; a leading zero would otherwise mean octal to cpp_int.
cpp_int decimal(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? cpp_int(0) : cpp_int(digits.substr(first));
}

cpp_rational parse_rational(const std::string& literal) {
  std::string s = literal;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  cpp_rational r;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    r = cpp_rational(decimal(s.substr(0, slash)), decimal(s.substr(slash + 1)));
  } else {
    const auto dot = s.find('.');
    std::string digits = s;
    cpp_int scale = 1;
    if (dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      for (std::size_t k = dot + 1; k < s.size(); ++k) scale *= 10;
    }
    if (digits.empty()) digits = "0";
    r = cpp_rational(decimal(digits), scale);
  }
  return negative ? cpp_rational(-r) : r;
}

cpp_int floor_of(const cpp_rational& r) {
  cpp_int n = boost::multiprecision::numerator(r);
  const cpp_int d = boost::multiprecision::denominator(r);
  cpp_int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

cpp_rational frac(const cpp_rational& r) { return r - cpp_rational(floor_of(r)); }

double arc(const cpp_rational& a, const cpp_rational& b) {
  const cpp_rational d = frac(a - b);
  const cpp_rational m = std::min(d, cpp_rational(1) - d);
  return m.convert_to<double>();
}

}  // namespace

bool brute_force_member(const std::vector<Element>& generators, const Element& v) {
  if (!v.nonnegative()) return false;
  return search(generators, 0, v);
}

std::vector<std::int64_t> convergent_denominators(const std::string& literal, std::int64_t limit) {
  cpp_rational x = frac(parse_rational(literal));
  std::vector<std::int64_t> out;
  cpp_int q_prev = 0;
  cpp_int q = 1;
  out.push_back(1);
  while (x != 0) {
    const cpp_rational inv = cpp_rational(1) / x;
    const cpp_int a = floor_of(inv);
    x = inv - cpp_rational(a);
    const cpp_int next = a * q + q_prev;
    if (next > limit) break;
    q_prev = q;
    q = next;
    if (out.back() != static_cast<std::int64_t>(q)) out.push_back(static_cast<std::int64_t>(q));
  }
  return out;
}

double distance_to_integer(const std::string& alpha, std::int64_t n) {
  return arc(parse_rational(alpha) * cpp_rational(n), cpp_rational(0));
}

double rational_orbit_separation(std::int64_t q, std::int64_t xn, std::int64_t xd, std::int64_t yn, std::int64_t yd,
                                 std::int64_t g_lo, std::int64_t g_hi) {
  double best = 0.0;
  cpp_int power = 1;
  for (std::int64_t g = 0; g <= g_hi; ++g) {
    if (g >= g_lo) {
      const cpp_rational x(cpp_int(power * xn % xd), cpp_int(xd));
      const cpp_rational y(cpp_int(power * yn % yd), cpp_int(yd));
      best = std::max(best, arc(x, y));
    }
    power *= q;
  }
  return best;
}

bool doubling_window_separates(const FixedPoint& z, int g_lo, int g_hi) {
  const int L = z.bits();
  for (int g = g_lo; g <= g_hi && g + 1 < L; ++g) {
    const bool b0 = z.bit(g);
    const bool b1 = z.bit(g + 1);
    if (b0 != b1) return true;
    if (b0 && b1) {
      bool rest_zero = true;
      for (int k = g + 2; k < L && rest_zero; ++k) rest_zero = !z.bit(k);
      if (rest_zero) return true;
    }
  }
  return false;
}

double shift_limsup_exact(const Coordinate& x, const Coordinate& y, std::int64_t a, std::int64_t n) {
  const int L = x.value.bits();
  for (std::int64_t k = a; k < L; ++k) {
    if (x.value.bit(static_cast<int>(k)) != y.value.bit(static_cast<int>(k))) {
      return k <= n ? 1.0 : std::ldexp(1.0, -static_cast<int>(k - n));
    }
  }
  return 0.0;
}

ShiftBracket shift_quantile_bracket(const Coordinate& x, double p, std::int64_t a, std::int64_t n, int depth,
                                    double q) {
  struct Atom {
    double value;
    double weight;
  };
  std::vector<Atom> lo;
  std::vector<Atom> hi;
  auto value_at = [&](std::int64_t k) { return k <= n ? 1.0 : std::ldexp(1.0, -static_cast<int>(k - n)); };
  for (std::uint32_t w = 0; w < (1u << depth); ++w) {
    double weight = 1.0;
    std::int64_t first = -1;
    for (int i = 0; i < depth; ++i) {
      const bool yb = (w >> (depth - 1 - i)) & 1u;
      weight *= yb ? p : 1.0 - p;
      if (first < 0 && yb != x.value.bit(static_cast<int>(a + i))) first = a + i;
    }
    if (first >= 0) {
      lo.push_back({value_at(first), weight});
      hi.push_back({value_at(first), weight});
    } else {
      lo.push_back({0.0, weight});
      hi.push_back({value_at(a + depth), weight});
    }
  }
  auto quantile = [q](std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& u, const Atom& v) { return u.value < v.value; });
    double mass = 0.0;
    for (const Atom& t : atoms) {
      mass += t.weight;
      if (mass >= q) return t.value;
    }
    return atoms.back().value;
  };
  return {quantile(lo), quantile(hi)};
}

}  // namespace semisens::checks
