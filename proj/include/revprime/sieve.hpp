#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "revprime/config.hpp"

namespace revprime {

// Segmented sieve of Eratosthenes over [lo, hi).  Small primes up to sqrt(hi)
// are sieved once, then crossed off segment by segment so memory stays at the
// segment size regardless of hi.
inline std::vector<std::int64_t> sieve_primes(std::int64_t lo, std::int64_t hi) {
  if (lo < 2) lo = 2;
  if (hi <= lo) return {};
  require_within_cap(hi, "sieve_primes");

  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::int64_t> base;
  for (std::int64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::int64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<std::int64_t> primes;
  if (hi > 2)
    primes.reserve(static_cast<std::size_t>(
        1.2 * (hi - lo) / std::max(1.0, std::log(static_cast<double>(hi))) + 16));

  constexpr std::int64_t kSegment = 1 << 18;
  std::vector<char> seg(kSegment);
  for (std::int64_t start = lo; start < hi; start += kSegment) {
    std::int64_t end = std::min(hi, start + kSegment);
    std::fill(seg.begin(), seg.begin() + (end - start), 1);
    for (std::int64_t p : base) {
      if (p * p >= end) break;
      std::int64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::int64_t j = first; j < end; j += p) seg[j - start] = 0;
    }
    for (std::int64_t n = start; n < end; ++n)
      if (seg[n - start]) primes.push_back(n);
  }
  return primes;
}

// Prime indicator over [0, n), as bytes.
inline std::vector<char> prime_indicator(std::int64_t n) {
  require_within_cap(n, "prime_indicator");
  std::vector<char> is(n, 0);
  for (std::int64_t p : sieve_primes(2, n)) is[p] = 1;
  return is;
}

// pi(hi - 1): number of primes strictly below hi.
inline std::int64_t count_primes_below(std::int64_t hi) {
  return static_cast<std::int64_t>(sieve_primes(2, hi).size());
}

}  // namespace revprime
