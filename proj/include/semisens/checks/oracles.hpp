#pragma once

// Independent reference computations. None of these call the fast paths they
// are used to check: membership by combination search, orbits by exact
// rational arithmetic, shift and doubling separations read off binary digits.

#include <cstdint>
#include <string>
#include <vector>

#include "semisens/action.hpp"
#include "semisens/semigroup.hpp"

namespace semisens::checks {

/// Whether v = sum c_i g_i with c_i >= 0, by depth-first search over the
/// coefficients.
bool brute_force_member(const std::vector<Element>& generators, const Element& v);

/// Denominators of the continued-fraction convergents of the rational
/// literal "p/q" (or a decimal), up to `limit`.
std::vector<std::int64_t> convergent_denominators(const std::string& literal, std::int64_t limit);

/// ||n alpha||, the distance to the nearest integer, computed exactly for the
/// rational literal alpha and rounded once to double.
double distance_to_integer(const std::string& alpha, std::int64_t n);

/// max over g in [g_lo, g_hi] of the arc distance between q^g x and q^g y,
/// x = xn/xd and y = yn/yd, in exact rational arithmetic.
double rational_orbit_separation(std::int64_t q, std::int64_t xn, std::int64_t xd, std::int64_t yn, std::int64_t yd,
                                 std::int64_t g_lo, std::int64_t g_hi);

/// Whether some g in [g_lo, g_hi] has arc(2^g z) >= 1/4, read off the bits of
/// z: bits g and g+1 differ, or both are 1 and every later bit is 0 (2^g z =
/// 3/4 exactly).
bool doubling_window_separates(const FixedPoint& z, int g_lo, int g_hi);

/// Exact bracket for the shift-system sensitivity estimator with the companion
/// sampling replaced by all 2^depth cylinders at positions a, ..., a+depth-1
/// (a the last tail anchor). Each cylinder's limsup is exact when it already
/// decides the first difference at or after a, and is bracketed by the
/// completions "agree from a+depth on" and "differ at a+depth" otherwise.
struct ShiftBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// The q-quantile of the limsup over y ~ Bernoulli(p), for one basepoint x,
/// with limsup taken at anchor a and top box n.
ShiftBracket shift_quantile_bracket(const Coordinate& x, double p, std::int64_t a, std::int64_t n, int depth, double q);

/// The exact limsup for the shift along N with last anchor a and top box n:
/// 1 if x and y differ somewhere in [a, n], else 2^-(k - n) for the first
/// difference k > n, else 0. Positions are read from the bit strings.
double shift_limsup_exact(const Coordinate& x, const Coordinate& y, std::int64_t a, std::int64_t n);

}  // namespace semisens::checks
