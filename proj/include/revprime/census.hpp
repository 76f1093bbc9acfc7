#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "revprime/digits.hpp"
#include "revprime/parallel.hpp"
#include "revprime/rational.hpp"
#include "revprime/sieve.hpp"

namespace revprime {

// Arithmetic-progression query, residue normalized into [0, q).
struct Query {
  std::int64_t a = 0;
  std::int64_t q = 1;

  Query() = default;
  Query(std::int64_t a_, std::int64_t q_) {
    if (q_ < 1) throw std::domain_error("Query: modulus must be >= 1");
    q = q_;
    a = a_ % q_;
    if (a < 0) a += q_;
  }
};

// gcd(q, g^N) via the stabilizing walk d_{k+1} = gcd(q, d_k * g); the value
// freezes after at most log2(q) steps, so g^N itself is never formed.
inline std::int64_t gcd_base_pow(std::int64_t q, std::int64_t g, std::int64_t n) {
  std::int64_t d = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t nd = std::gcd(q, d * g);  // d <= q and desk bases are small: no overflow
    if (nd == d) break;
    d = nd;
  }
  return d;
}

// Smallest N0 >= 1 with gcd(q, g^N0) = gcd(q, g^N).
inline std::int64_t n0(std::int64_t g, std::int64_t q, std::int64_t n) {
  require_base(g);
  if (q < 1 || n < 1) throw std::domain_error("n0: q and N must be >= 1");
  std::int64_t target = gcd_base_pow(q, g, n);
  std::int64_t d = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    d = std::gcd(q, d * g);
    if (d == target) return k;
  }
  return n;
}

// gcd(q, (g^2-1) g^N) using that g^2-1 and g are coprime.
inline std::int64_t gcd_capture(std::int64_t q, std::int64_t g, std::int64_t n) {
  return std::gcd(q, g * g - 1) * gcd_base_pow(q, g, n);
}

// Tally of reversed primes in the window by residue class mod q:
// out[a] = #{ p prime in window : reverse(p) = a mod q }.
// Disjoint subranges are sieved and tallied independently and merged by
// integer addition, so the result does not depend on the thread count.
inline std::vector<std::int64_t> reversed_prime_tally(const Window& w, std::int64_t q,
                                                      int threads = 0) {
  if (q < 1) throw std::domain_error("reversed_prime_tally: modulus must be >= 1");
  require_within_cap(w.high(), "reversed_prime_tally");

  struct Tally {
    std::vector<std::int64_t> v;
    Tally& operator+=(const Tally& o) {
      if (v.empty()) v.assign(o.v.size(), 0);
      for (std::size_t i = 0; i < o.v.size(); ++i) v[i] += o.v[i];
      return *this;
    }
  };

  const std::int64_t lo = w.low(), hi = w.high();
  const std::int64_t span = hi - lo;
  const std::int64_t chunk = std::max<std::int64_t>(1 << 20, (span + 63) / 64);
  Tally total = chunked_sum<Tally>(span, chunk, threads, [&](std::int64_t a, std::int64_t b) {
    Tally t;
    t.v.assign(static_cast<std::size_t>(q), 0);
    for (std::int64_t p : sieve_primes(lo + a, lo + b)) {
      if (p % w.base == 0) continue;  // only p = g itself can trip this
      ++t.v[digit_reverse(p, w.base) % q];
    }
    return t;
  });
  if (total.v.empty()) total.v.assign(static_cast<std::size_t>(q), 0);
  return total.v;
}

inline std::int64_t reversed_prime_count(const Window& w, const Query& query) {
  return reversed_prime_tally(w, query.q)[query.a];
}

// The structured part of the census: gcd(q,(g^2-1)g^N)/q times the count of
// window primes whose reverse lies in the residue class mod that gcd.  Exact
// rational; the congruence mod anything beyond the gcd is the "random" part.
inline Rat main_term(const Window& w, const Query& query) {
  std::int64_t d = gcd_capture(query.q, w.base, w.length);
  std::int64_t count = reversed_prime_tally(w, d)[query.a % d];
  return Rat(d, query.q) * Rat(count);
}

// Density of reversed primes in the class a mod q relative to all primes:
// zero in the two degenerate cases, otherwise the product of the lowest-digit
// factor and the gcd(q, g^2-1) Euler factor.
inline Rat rho(std::int64_t g, const Query& query) {
  require_base(g);
  std::int64_t a = query.a, q = query.q;
  std::int64_t aq = std::gcd(a, q);  // gcd(0, q) = q
  if (std::gcd(aq, g * g - 1) > 1) return Rat(0);
  if (aq % g == 0) return Rat(0);
  std::int64_t qg = std::gcd(q, g);
  Rat r = (a % qg == 0) ? Rat(g - qg, g) : Rat(1);
  std::int64_t m = std::gcd(q, g * g - 1);
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r = r * Rat(p, p - 1);
  }
  if (m > 1) r = r * Rat(m, m - 1);
  return r;
}

// rho/q * g^N / log g^N: the expected census for large N.
inline double predict(const Window& w, const Query& query) {
  double density = rho(w.base, query).to_double() / static_cast<double>(query.q);
  double gn = std::pow(static_cast<double>(w.base), static_cast<double>(w.length));
  return density * gn / (w.length * std::log(static_cast<double>(w.base)));
}

struct CensusRecord {
  Window window;
  Query query;
  std::int64_t count = 0;
  Rat main;        // exact
  Rat remainder;   // count - main, exact
  Rat density;     // rho_g(a, q)
  double prediction = 0.0;
  std::int64_t n0_value = 1;
};

inline CensusRecord census(const Window& w, const Query& query) {
  CensusRecord r;
  r.window = w;
  r.query = query;
  r.count = reversed_prime_count(w, query);
  r.main = main_term(w, query);
  r.remainder = Rat(r.count) - r.main;
  r.density = rho(w.base, query);
  r.prediction = predict(w, query);
  r.n0_value = n0(w.base, query.q, w.length);
  return r;
}

// All residues of one modulus in a single sieve pass.
inline std::vector<CensusRecord> census_all(const Window& w, std::int64_t q) {
  std::int64_t d = gcd_capture(q, w.base, w.length);
  std::vector<std::int64_t> tally_q = reversed_prime_tally(w, q);
  std::vector<std::int64_t> tally_d(d, 0);
  for (std::int64_t a = 0; a < q; ++a) tally_d[a % d] += tally_q[a];

  std::vector<CensusRecord> out;
  out.reserve(q);
  for (std::int64_t a = 0; a < q; ++a) {
    CensusRecord r;
    r.window = w;
    r.query = Query(a, q);
    r.count = tally_q[a];
    r.main = Rat(d, q) * Rat(tally_d[a % d]);
    r.remainder = Rat(r.count) - r.main;
    r.density = rho(w.base, r.query);
    r.prediction = predict(w, r.query);
    r.n0_value = n0(w.base, q, w.length);
    out.push_back(r);
  }
  return out;
}

}  // namespace revprime
