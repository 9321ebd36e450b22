#include "semisens/fixed_point.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "semisens/errors.hpp"

namespace semisens {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int parse_integer(std::string_view digits, std::string_view literal) {
  if (digits.empty()) throw ConfigError("malformed number '" + std::string(literal) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ConfigError("malformed number '" + std::string(literal) + "'");
  }
  // A leading zero would make cpp_int read the digits as octal.
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return mp::cpp_int(std::string(digits.substr(first)));
}

}  // namespace

FixedPoint::FixedPoint(int bits) : bits_(bits) {
  if (bits < kMinPrecisionBits || bits > kMaxPrecisionBits) {
    throw Error("precision must be in [" + std::to_string(kMinPrecisionBits) + ", " +
                std::to_string(kMaxPrecisionBits) + "] bits, got " + std::to_string(bits));
  }
}

void FixedPoint::mask_top() {
  const int rem = bits_ % 64;
  if (rem != 0) w_[static_cast<std::size_t>(limb_count() - 1)] &= (std::uint64_t{1} << rem) - 1;
}

void FixedPoint::set_limb(int i, std::uint64_t v) {
  w_[static_cast<std::size_t>(i)] = v;
  mask_top();
}

FixedPoint FixedPoint::from_integer(int bits, std::uint64_t v) {
  FixedPoint out(bits);
  out.w_[0] = v;
  out.mask_top();
  return out;
}

FixedPoint FixedPoint::from_double(int bits, double x) {
  FixedPoint out(bits);
  double frac = x - std::floor(x);
  // 53 significant bits are all a double has; fill limbs from the top.
  for (int i = out.limb_count() - 1; i >= 0 && frac > 0.0; --i) {
    const double scaled = std::ldexp(frac, 64);
    const double whole = std::floor(scaled);
    out.w_[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(whole);
    frac = scaled - whole;
  }
  // Shift down when L is not a multiple of 64.
  const int excess = out.limb_count() * 64 - bits;
  if (excess > 0) {
    for (int i = 0; i < out.limb_count(); ++i) {
      std::uint64_t lo = out.w_[static_cast<std::size_t>(i)] >> excess;
      std::uint64_t hi = (i + 1 < out.limb_count()) ? out.w_[static_cast<std::size_t>(i + 1)] << (64 - excess) : 0;
      out.w_[static_cast<std::size_t>(i)] = lo | hi;
    }
  }
  out.mask_top();
  return out;
}

FixedPoint FixedPoint::parse(int bits, std::string_view literal) {
  std::string_view s = literal;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mp::cpp_int num;
  mp::cpp_int den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = parse_integer(s.substr(0, slash), literal);
    den = parse_integer(s.substr(slash + 1), literal);
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(literal) + "'");
  } else {
    const auto dot = s.find('.');
    std::string_view whole = dot == std::string_view::npos ? s : s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw ConfigError("malformed number '" + std::string(literal) + "'");
    std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    num = parse_integer(digits, literal);
    den = mp::pow(mp::cpp_int(10), static_cast<unsigned>(frac.size()));
  }
  if (negative) num = -num;
  mp::cpp_int rem = num % den;
  if (rem < 0) rem += den;
  mp::cpp_int word = (rem << bits) / den;

  FixedPoint out(bits);
  const mp::cpp_int mask = (mp::cpp_int(1) << 64) - 1;
  for (int i = 0; i < out.limb_count(); ++i) {
    out.w_[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(word & mask);
    word >>= 64;
  }
  out.mask_top();
  return out;
}

double FixedPoint::to_double() const {
  // The top 64 bits of the word carry more than a double can hold.
  const int n = limb_count();
  const int excess = n * 64 - bits_;
  std::uint64_t top = w_[static_cast<std::size_t>(n - 1)] << excess;
  if (excess > 0 && n > 1) top |= w_[static_cast<std::size_t>(n - 2)] >> (64 - excess);
  return std::ldexp(static_cast<double>(top), -64);
}

bool FixedPoint::bit(int index) const {
  const int pos = bits_ - 1 - index;
  if (pos < 0 || index < 0) return false;
  return (w_[static_cast<std::size_t>(pos / 64)] >> (pos % 64)) & 1u;
}

void FixedPoint::set_bit(int index, bool value) {
  const int pos = bits_ - 1 - index;
  if (pos < 0 || index < 0) throw Error("bit index out of range");
  const std::uint64_t m = std::uint64_t{1} << (pos % 64);
  auto& limb = w_[static_cast<std::size_t>(pos / 64)];
  limb = value ? (limb | m) : (limb & ~m);
}

int FixedPoint::leading_zeros() const {
  const int n = limb_count();
  const int excess = n * 64 - bits_;
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t limb = w_[static_cast<std::size_t>(i)];
    if (limb != 0) return (n - 1 - i) * 64 + std::countl_zero(limb) - excess;
  }
  return bits_;
}

bool FixedPoint::is_zero() const {
  for (int i = 0; i < limb_count(); ++i) {
    if (w_[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

FixedPoint& FixedPoint::operator+=(const FixedPoint& o) {
  unsigned __int128 carry = 0;
  for (int i = 0; i < limb_count(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    carry += static_cast<unsigned __int128>(w_[idx]) + o.w_[idx];
    w_[idx] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  mask_top();
  return *this;
}

FixedPoint& FixedPoint::operator-=(const FixedPoint& o) { return *this += -o; }

FixedPoint FixedPoint::operator-() const {
  FixedPoint out(*this);
  std::uint64_t carry = 1;
  for (int i = 0; i < limb_count(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::uint64_t inv = ~w_[idx];
    out.w_[idx] = inv + carry;
    carry = (carry && out.w_[idx] == 0) ? 1 : 0;
  }
  out.mask_top();
  return out;
}

FixedPoint FixedPoint::operator*(const FixedPoint& o) const {
  FixedPoint out(bits_);
  const int n = limb_count();
  for (int i = 0; i < n; ++i) {
    const std::uint64_t a = w_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    unsigned __int128 carry = 0;
    for (int j = 0; i + j < n; ++j) {
      const auto k = static_cast<std::size_t>(i + j);
      carry += static_cast<unsigned __int128>(a) * o.w_[static_cast<std::size_t>(j)] + out.w_[k];
      out.w_[k] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
  }
  out.mask_top();
  return out;
}

FixedPoint FixedPoint::shifted_left(int s) const {
  FixedPoint out(bits_);
  if (s >= bits_) return out;
  const int n = limb_count();
  const int limb_shift = s / 64;
  const int bit_shift = s % 64;
  for (int i = n - 1; i >= limb_shift; --i) {
    std::uint64_t v = w_[static_cast<std::size_t>(i - limb_shift)] << bit_shift;
    if (bit_shift && i - limb_shift - 1 >= 0) {
      v |= w_[static_cast<std::size_t>(i - limb_shift - 1)] >> (64 - bit_shift);
    }
    out.w_[static_cast<std::size_t>(i)] = v;
  }
  out.mask_top();
  return out;
}

FixedPoint FixedPoint::operator^(const FixedPoint& o) const {
  FixedPoint out(bits_);
  for (int i = 0; i < limb_count(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out.w_[idx] = w_[idx] ^ o.w_[idx];
  }
  return out;
}

bool operator<(const FixedPoint& a, const FixedPoint& b) {
  for (int i = a.limb_count() - 1; i >= 0; --i) {
    const auto idx = static_cast<std::size_t>(i);
    if (a.w_[idx] != b.w_[idx]) return a.w_[idx] < b.w_[idx];
  }
  return false;
}

std::string FixedPoint::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int i = limb_count() - 1; i >= 0; --i) {
    const std::uint64_t limb = w_[static_cast<std::size_t>(i)];
    for (int nib = 15; nib >= 0; --nib) out += kDigits[(limb >> (4 * nib)) & 0xf];
  }
  return out;
}

double arc_distance(const FixedPoint& x, const FixedPoint& y) {
  FixedPoint diff = x - y;
  if (diff.bit(0)) diff = -diff;
  return diff.to_double();
}

}  // namespace semisens
