#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace revprime {

using i128 = __int128_t;

namespace detail {

inline i128 iabs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = iabs128(a);
  b = iabs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t to_i64(i128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error(std::string(what) + ": 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

// Exact rational over int64.  Invariant: den > 0 and gcd(|num|, den) = 1.
// Intermediate products run through __int128; anything that would not fit
// back into 64 bits after reduction throws instead of silently wrapping.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit integer embedding
  Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rat make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rat r;
    r.num = detail::to_i64(n, "Rat");
    r.den = detail::to_i64(d, "Rat");
    return r;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  Rat operator+(const Rat& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
  }
  Rat operator*(const Rat& o) const { return make(i128(num) * o.num, i128(den) * o.den); }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw std::domain_error("Rat: division by zero");
    return make(i128(num) * o.den, i128(den) * o.num);
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return i128(num) * o.den < i128(o.num) * den; }
  bool operator<=(const Rat& o) const { return i128(num) * o.den <= i128(o.num) * den; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  Rat abs() const { return num < 0 ? -*this : *this; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// A frequency mod 1: value num/den in [0, 1), den > 0, gcd(num, den) = 1.
// Multiplication by integer powers of the base is exact (modular arithmetic
// on the numerator), which is what keeps angles like g^i * alpha meaningful
// long after double precision would have drowned: fold to [0,1) first, then
// convert to double once at the very end.
struct Freq {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static constexpr std::int64_t kDyadicDen = std::int64_t(1) << 62;

  Freq() = default;

  static Freq of(std::int64_t n, std::int64_t d) {
    if (d <= 0) throw std::domain_error("Freq: denominator must be positive");
    n %= d;
    if (n < 0) n += d;
    std::int64_t g = std::int64_t(detail::gcd128(n, d));
    Freq f;
    f.num = g > 1 ? n / g : n;
    f.den = g > 1 ? d / g : d;
    return f;
  }

  // Nearest point of the 2^-62 grid; quantization error <= 2^-63, which even
  // after a g^N <= 1e8 blow-up stays near 1e-11, far below every tolerance
  // used in the checkers.
  static Freq from_double(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    auto n = static_cast<std::int64_t>(std::llround(f * static_cast<double>(kDyadicDen)));
    if (n >= kDyadicDen) n -= kDyadicDen;
    return of(n, kDyadicDen);
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return num == 0; }

  // value * m mod 1, exact for any int64 m >= 0.
  Freq scaled(std::int64_t m) const {
    if (m < 0) throw std::domain_error("Freq::scaled: negative factor");
    i128 n = i128(num) * (m % den) % den;
    return of(detail::to_i64(n, "Freq::scaled"), den);
  }

  // value * base^e mod 1, exact via modular exponentiation.
  Freq scaled_pow(std::int64_t base, std::int64_t e) const {
    if (base < 0 || e < 0) throw std::domain_error("Freq::scaled_pow: negative argument");
    i128 acc = 1;
    i128 b = base % den;
    std::int64_t k = e;
    while (k > 0) {
      if (k & 1) acc = acc * b % den;
      b = b * b % den;
      k >>= 1;
    }
    i128 n = i128(num) * acc % den;
    return of(detail::to_i64(n, "Freq::scaled_pow"), den);
  }

  Freq operator+(const Freq& o) const {
    i128 g = detail::gcd128(den, o.den);
    i128 l = i128(den) / g * o.den;
    if (l > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("Freq: common denominator overflow");
    i128 n = i128(num) * (l / den) + i128(o.num) * (l / o.den);
    n %= l;
    return of(detail::to_i64(n, "Freq+"), detail::to_i64(l, "Freq+"));
  }

  Freq operator-() const { return of(num == 0 ? 0 : den - num, den); }
  Freq operator-(const Freq& o) const { return *this + (-o); }

  bool operator==(const Freq& o) const { return num == o.num && den == o.den; }

  // Distance to the nearest integer, ||x||, exact as a rational.
  Rat unit_dist() const { return Rat(std::min(num, den - num), den); }
  double unit_dist_double() const {
    return static_cast<double>(std::min(num, den - num)) / static_cast<double>(den);
  }
};

}  // namespace revprime
