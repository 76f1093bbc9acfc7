#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "revprime/boundcheck.hpp"

namespace revprime {

// C_g = (2/pi) log cot(pi/2g) + 1/(g sin(pi/2g)) + 1, the per-digit growth
// constant of the discrete L1 bound.  Evaluated in long double (64-bit
// mantissa on x86-64): the threshold test below separates values ~1e-7 apart,
// so ~1e-18 evaluation noise leaves eleven orders of margin.
inline long double c_g(std::int64_t g) {
  if (g < 2) throw std::domain_error("c_g: base must be >= 2");
  const long double pi = std::numbers::pi_v<long double>;
  const long double x = pi / (2.0L * static_cast<long double>(g));
  return (2.0L / pi) * std::log(1.0L / std::tan(x)) +
         1.0L / (static_cast<long double>(g) * std::sin(x)) + 1.0L;
}

// Same quantity with cot written as cos/sin; used as the cross-check route.
inline long double c_g_alt(std::int64_t g) {
  if (g < 2) throw std::domain_error("c_g_alt: base must be >= 2");
  const long double pi = std::numbers::pi_v<long double>;
  const long double x = pi / (2.0L * static_cast<long double>(g));
  return (2.0L / pi) * std::log(std::cos(x) / std::sin(x)) +
         1.0L / (static_cast<long double>(g) * std::sin(x)) + 1.0L;
}

// alpha_g = log C_g / log g; the exponent that has to drop below 1/5.
inline long double alpha_g(std::int64_t g) {
  return std::log(c_g(g)) / std::log(static_cast<long double>(g));
}

struct ConstantsRecord {
  std::int64_t g = 2;
  long double c = 0.0L;
  long double alpha = 0.0L;
  int eval_bits = std::numeric_limits<long double>::digits;
};

inline ConstantsRecord constants_record(std::int64_t g) {
  ConstantsRecord r;
  r.g = g;
  r.c = c_g(g);
  r.alpha = alpha_g(g);
  return r;
}

// Smallest g in [lo, hi] with alpha_g < bound.  alpha_g is decreasing for
// g >= 9 (checked separately by monotonicity_check), so the region above 9 is
// binary-searched; below 9 a short linear scan covers the non-monotone part.
inline std::optional<std::int64_t> threshold_scan(std::int64_t lo, std::int64_t hi,
                                                  double bound) {
  if (lo < 2) lo = 2;
  if (lo > hi) throw std::domain_error("threshold_scan: empty range");
  if (!(bound > 0.0 && bound < 1.0)) throw std::domain_error("threshold_scan: bound in (0,1)");
  const auto b = static_cast<long double>(bound);

  for (std::int64_t g = lo; g <= std::min<std::int64_t>(hi, 9); ++g)
    if (alpha_g(g) < b) return g;
  if (hi <= 9) return std::nullopt;

  std::int64_t left = std::max<std::int64_t>(lo, 10);
  if (alpha_g(hi) >= b) return std::nullopt;
  if (alpha_g(left) < b) return left;
  // invariant: alpha(left) >= bound > alpha(hi)
  std::int64_t right = hi;
  while (right - left > 1) {
    std::int64_t mid = left + (right - left) / 2;
    (alpha_g(mid) < b ? right : left) = mid;
  }
  return right;
}

// Asserts alpha_{g+1} < alpha_g for all g in [lo, hi); reports the minimal
// margin and the first violation if any.
inline BoundCheck monotonicity_check(std::int64_t lo, std::int64_t hi) {
  if (lo < 9) throw std::domain_error("monotonicity_check: lo must be >= 9");
  double min_margin = std::numeric_limits<double>::infinity();
  std::int64_t worst_g = lo;
  bool ok = true;
  std::int64_t first_bad = -1;
  long double prev = alpha_g(lo);
  for (std::int64_t g = lo; g + 1 <= hi; ++g) {
    long double next = alpha_g(g + 1);
    double margin = static_cast<double>(prev - next);
    if (margin < min_margin) {
      min_margin = margin;
      worst_g = g;
    }
    if (!(next < prev) && first_bad < 0) {
      ok = false;
      first_bad = g;
    }
    prev = next;
  }
  BoundCheck b;
  b.lemma_id = "alpha_monotone";
  b.params = {{"lo", static_cast<double>(lo)},
              {"hi", static_cast<double>(hi)},
              {"worst_g", static_cast<double>(worst_g)},
              {"first_violation", static_cast<double>(first_bad)}};
  b.lhs = 0.0;
  b.rhs = min_margin;
  b.slack = min_margin;
  b.mode = BoundCheck::Mode::exact;
  b.pass = ok;
  return b;
}

}  // namespace revprime
