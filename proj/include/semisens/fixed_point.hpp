#pragma once

// L-bit binary fractions: the value N / 2^L with N an L-bit unsigned word.
// Arithmetic is exact modulo 1 (i.e. modulo 2^L on N), so the same type also
// carries integer multipliers reduced mod 2^L.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace semisens {

inline constexpr int kMinPrecisionBits = 64;
inline constexpr int kMaxPrecisionBits = 1024;
inline constexpr int kDefaultPrecisionBits = 256;

class FixedPoint {
 public:
  static constexpr int kMaxLimbs = kMaxPrecisionBits / 64;

  FixedPoint() = default;
  /// Zero with the given precision. Throws Error outside [64, 1024].
  explicit FixedPoint(int bits);

  /// The integer v, reduced mod 2^L.
  static FixedPoint from_integer(int bits, std::uint64_t v);
  /// frac(x), truncated to L bits.
  static FixedPoint from_double(int bits, double x);
  /// frac(value) for a decimal ("0.414", "-1.5") or rational ("p/q") literal
  /// of arbitrary length, truncated toward zero at the last bit.
  static FixedPoint parse(int bits, std::string_view literal);

  int bits() const { return bits_; }
  int limb_count() const { return (bits_ + 63) / 64; }
  /// Little-endian limbs: limb(0) holds the least significant bits.
  std::uint64_t limb(int i) const { return w_[static_cast<std::size_t>(i)]; }
  void set_limb(int i, std::uint64_t v);

  /// N / 2^L as a double.
  double to_double() const;

  /// Bit `index` counted from the binary point: index 0 is the 1/2 bit.
  bool bit(int index) const;
  void set_bit(int index, bool value);

  /// Number of leading zero bits of the L-bit word (L when zero).
  int leading_zeros() const;

  bool is_zero() const;

  FixedPoint& operator+=(const FixedPoint& o);
  FixedPoint& operator-=(const FixedPoint& o);
  FixedPoint operator-() const;
  /// Product of the underlying words mod 2^L. With `*this` an integer
  /// multiplier Q and `o` a fraction x, this is Q * x mod 1.
  FixedPoint operator*(const FixedPoint& o) const;
  /// Multiply by 2^s mod 1 (drop the leading s bits).
  FixedPoint shifted_left(int s) const;

  /// Exclusive or of the underlying words.
  FixedPoint operator^(const FixedPoint& o) const;

  friend FixedPoint operator+(FixedPoint a, const FixedPoint& b) { return a += b; }
  friend FixedPoint operator-(FixedPoint a, const FixedPoint& b) { return a -= b; }
  friend bool operator==(const FixedPoint& a, const FixedPoint& b) { return a.bits_ == b.bits_ && a.w_ == b.w_; }
  /// Unsigned comparison of the words.
  friend bool operator<(const FixedPoint& a, const FixedPoint& b);

  /// Big-endian hex of the L-bit word.
  std::string to_hex() const;

 private:
  void mask_top();

  std::array<std::uint64_t, kMaxLimbs> w_{};
  int bits_ = 0;
};

/// Arc distance on R/Z: min(|x - y|, 1 - |x - y|), exact up to the final
/// conversion to double. Lies in [0, 1/2].
double arc_distance(const FixedPoint& x, const FixedPoint& y);

}  // namespace semisens
