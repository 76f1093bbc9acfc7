#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "revprime/config.hpp"
#include "revprime/rational.hpp"

namespace revprime {

// Base-g digit vector, least significant digit first (digits[i] multiplies g^i).
struct DigitString {
  std::int64_t base = 10;
  std::vector<int> digits;  // most significant entry is nonzero for nonempty strings
};

inline void require_base(std::int64_t g) {
  if (g < 2) throw std::domain_error("base must be >= 2");
}

inline DigitString to_digits(std::int64_t n, std::int64_t g) {
  require_base(g);
  if (n < 1) throw std::domain_error("to_digits: n must be positive");
  DigitString d;
  d.base = g;
  while (n > 0) {
    d.digits.push_back(static_cast<int>(n % g));
    n /= g;
  }
  return d;
}

inline std::int64_t from_digits(const DigitString& d) {
  std::int64_t v = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (*it < 0 || *it >= d.base) throw std::domain_error("from_digits: digit out of range");
    v = v * d.base + *it;
  }
  return v;
}

// The digital reverse: base-g digits of n written back to front.  Defined for
// every positive n; it is an involution exactly on inputs whose lowest digit
// is nonzero (trailing zeros are dropped by the reversal).
inline std::int64_t digit_reverse(std::int64_t n, std::int64_t g) {
  require_base(g);
  if (n < 1) throw std::domain_error("digit_reverse: n must be positive");
  std::int64_t r = 0;
  while (n > 0) {
    r = r * g + n % g;
    n /= g;
  }
  return r;
}

// The window of integers with exactly `length` base-`base` digits and nonzero
// lowest digit.  Digit reversal maps the window onto itself.
struct Window {
  std::int64_t base = 10;
  int length = 1;

  Window() = default;
  Window(std::int64_t g, int n) : base(g), length(n) {
    require_base(g);
    if (n < 1) throw std::domain_error("Window: length must be >= 1");
    // reject g^N that does not fit an int64 before anyone exponentiates
    std::int64_t v = 1;
    for (int i = 0; i < n; ++i) {
      if (v > std::numeric_limits<std::int64_t>::max() / g)
        throw std::overflow_error("Window: g^N exceeds 64 bits");
      v *= g;
    }
  }

  std::int64_t pow_base(int e) const {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v *= base;
    return v;
  }
  std::int64_t low() const { return pow_base(length - 1); }
  std::int64_t high() const { return pow_base(length); }  // exclusive
  bool contains(std::int64_t n) const { return n >= low() && n < high() && n % base != 0; }

  // |window| = (g-1)^2 g^(N-2) for N >= 2, g-1 for N = 1.
  std::int64_t size() const {
    if (length == 1) return base - 1;
    return (base - 1) * (base - 1) * pow_base(length - 2);
  }
};

template <class Fn>
inline void for_each_member(const Window& w, Fn&& fn) {
  require_within_cap(w.high(), "window enumeration");
  for (std::int64_t n = w.low(); n < w.high(); ++n)
    if (n % w.base != 0) fn(n);
}

inline std::vector<std::int64_t> members(const Window& w) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(w.size()));
  for_each_member(w, [&](std::int64_t n) { out.push_back(n); });
  return out;
}

// For n in the window, reverse(n) = g^(N-1) * n mod g^2 - 1, so the reverse is
// known mod any divisor m of g^2 - 1 without computing it.
inline std::int64_t reverse_mod(std::int64_t n, const Window& w, std::int64_t m) {
  if (m < 1 || (w.base * w.base - 1) % m != 0)
    throw std::domain_error("reverse_mod: modulus must divide g^2 - 1");
  if (!w.contains(n)) throw std::domain_error("reverse_mod: n not in window");
  i128 acc = n % m;
  i128 b = w.base % m;
  int e = w.length - 1;
  while (e > 0) {
    if (e & 1) acc = acc * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace revprime
