#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "revprime/boundcheck.hpp"
#include "revprime/census.hpp"
#include "revprime/constants.hpp"
#include "revprime/expsum.hpp"
#include "revprime/parallel.hpp"
#include "revprime/rational.hpp"

namespace revprime {

// One dissection point: h/g^N = b/r + eta with (b,r) reduced, r <= Q and
// |eta| < 1/(rQ), eta exact.  Major means max(r, g^N |eta|) <= P.
struct FareyPoint {
  std::int64_t h = 0;
  std::int64_t b = 0;
  std::int64_t r = 1;
  Rat eta;
  bool major = false;
};

struct ArcPartition {
  Window window;
  std::int64_t P = 1;
  std::int64_t Q = 1;
  std::vector<FareyPoint> points;   // one per h, index == h
  std::int64_t major_count = 0;
  std::int64_t multi_candidate = 0; // h values where both Farey neighbours were admissible
  bool strict_parameters = false;   // 4 g^8 <= P <= Q
};

// Full Farey set F(Q) = {(b, r) : 1 <= r <= Q, 0 <= b <= r, gcd(b, r) = 1},
// ascending, by the mediant recurrence.
inline std::vector<std::pair<std::int64_t, std::int64_t>> farey(std::int64_t Q) {
  if (Q < 1) throw std::domain_error("farey: Q must be >= 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t a = 0, b = 1, c = 1, d = Q;
  out.emplace_back(a, b);
  while (c <= Q) {
    std::int64_t k = (Q + b) / d;
    std::int64_t c2 = k * c - a, d2 = k * d - b;
    a = c;
    b = d;
    c = c2;
    d = d2;
    out.emplace_back(a, b);
    if (a == 1 && b == 1) break;
  }
  return out;
}

namespace detail {

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// The two neighbours of p/q in F(Q) (equal when p/q itself has denominator
// <= Q), via continued-fraction convergents and the final semiconvergent.
// The returned pair is ascending and consecutive in F(Q) and brackets p/q.
inline std::pair<Frac, Frac> farey_neighbors(std::int64_t p, std::int64_t q, std::int64_t Q) {
  std::int64_t g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (q <= Q) return {{p, q}, {p, q}};

  std::int64_t num = p, den = q;
  std::int64_t h2 = 0, k2 = 1;  // convergent j-2
  std::int64_t h1 = 1, k1 = 0;  // convergent j-1
  for (;;) {
    std::int64_t a = num / den;
    std::int64_t h0 = a * h1 + h2;
    std::int64_t k0 = a * k1 + k2;
    if (k0 > Q) {
      // h1/k1 is the deepest convergent with denominator <= Q; the opposite
      // neighbour is the largest admissible semiconvergent toward h0/k0
      std::int64_t t = (Q - k2) / k1;
      Frac conv{h1, k1};
      Frac semi{t * h1 + h2, t * k1 + k2};
      if (i128(conv.num) * semi.den < i128(semi.num) * conv.den) return {conv, semi};
      return {semi, conv};
    }
    h2 = h1;
    k2 = k1;
    h1 = h0;
    k1 = k0;
    std::int64_t rem = num % den;
    num = den;
    den = rem;
    if (den == 0)  // q <= Q was handled on entry, so the CF cannot terminate here
      throw std::logic_error("farey_neighbors: unreachable");
  }
}

}  // namespace detail

// Classical Farey dissection of the h/g^N grid: each h is assigned the
// neighbour on whose side of the neighbours' mediant it falls (ties to the
// left).  The resulting (b, r, eta) always satisfies |eta| < 1/(rQ); when the
// other neighbour would also satisfy its eta bound the point is counted in
// multi_candidate (the assignment stays canonical and injective).
inline ArcPartition dissect(const Window& w, std::int64_t P, std::int64_t Q) {
  if (P < 1 || Q < 1) throw std::domain_error("dissect: need P, Q >= 1");
  const std::int64_t gn = w.high();
  require_within_cap(gn, "dissect");
  if (gn > (std::int64_t(1) << 22))
    throw std::length_error("dissect: point list too large to hold in memory");

  ArcPartition part;
  part.window = w;
  part.P = P;
  part.Q = Q;
  double g8 = 4.0 * std::pow(static_cast<double>(w.base), 8.0);
  part.strict_parameters = static_cast<double>(P) >= g8 && P <= Q;
  part.points.resize(static_cast<std::size_t>(gn));

  for (std::int64_t h = 0; h < gn; ++h) {
    auto [lo, hi] = detail::farey_neighbors(h, gn, Q);
    std::int64_t b, r;
    if (lo.num == hi.num && lo.den == hi.den) {
      b = lo.num;
      r = lo.den;
    } else {
      // mediant comparison: h/gn vs (lo+hi across)/(dens)
      i128 lhs = i128(h) * (lo.den + hi.den);
      i128 rhs = i128(lo.num + hi.num) * gn;
      if (lhs <= rhs) {
        b = lo.num;
        r = lo.den;
      } else {
        b = hi.num;
        r = hi.den;
      }
      // count h for which both neighbours meet their own eta bound
      // |h/gn - b/r| < 1/(rQ)  <=>  |h r - b gn| Q < gn
      i128 dlo = detail::iabs128(i128(h) * lo.den - i128(lo.num) * gn);
      i128 dhi = detail::iabs128(i128(h) * hi.den - i128(hi.num) * gn);
      if (dlo * Q < gn && dhi * Q < gn) ++part.multi_candidate;
    }
    FareyPoint pt;
    pt.h = h;
    pt.b = b;
    pt.r = r;
    pt.eta = Rat::make(i128(h) * r - i128(b) * gn, i128(gn) * r);
    // self-test: the canonical assignment must satisfy the dissection bound
    if (!(detail::iabs128(pt.eta.num) * r * Q < i128(pt.eta.den)))
      throw std::logic_error("dissect: |eta| < 1/(rQ) violated (internal error)");
    // major iff r <= P and g^N |eta| <= P, decided in exact arithmetic
    bool major = r <= P && detail::iabs128(i128(pt.eta.num) * gn) <= i128(P) * pt.eta.den;
    pt.major = major;
    if (major) ++part.major_count;
    part.points[static_cast<std::size_t>(h)] = pt;
  }
  return part;
}

// k values in [0, q) that survive in the remainder sum: q does not divide
// (g^2-1) g^N k.  Exact integer arithmetic.
inline std::vector<std::int64_t> remainder_k_values(const Window& w, std::int64_t q) {
  std::vector<std::int64_t> ks;
  i128 factor = i128(w.base) * w.base - 1;
  i128 gn_mod = 1;
  for (int i = 0; i < w.length; ++i) gn_mod = gn_mod * (w.base % q) % q;
  i128 base_mod = factor % q * gn_mod % q;
  for (std::int64_t k = 1; k < q; ++k)
    if (base_mod * k % q != 0) ks.push_back(k);
  return ks;
}

// F_N(-h/g^N, k/q) for the spectral sum, through the edge x edge x Phi
// factorization, with all angles reduced mod 1 in integer arithmetic.
// pow_gn[i] = g^i mod g^N, pow_q[i] = g^i mod q.
inline cplx F_grid_point(std::int64_t g, int length, std::int64_t gn, std::int64_t h,
                         std::int64_t q, std::int64_t k, const std::vector<std::int64_t>& pow_gn,
                         const std::vector<std::int64_t>& pow_q) {
  auto angle = [&](int i_alpha, int i_beta) {
    // (-h g^{i_alpha} mod g^N)/g^N + (k g^{i_beta} mod q)/q, folded to [0,1)
    std::int64_t na = (gn - static_cast<std::int64_t>(i128(h) * pow_gn[i_alpha] % gn)) % gn;
    std::int64_t nb = static_cast<std::int64_t>(i128(k) * pow_q[i_beta] % q);
    double x = static_cast<double>(na) / static_cast<double>(gn) +
               static_cast<double>(nb) / static_cast<double>(q);
    return x >= 1.0 ? x - 1.0 : x;
  };
  auto edge = [&](double x) {
    cplx rot = e_of(x);
    cplx term = rot;
    cplx sum = 0.0;
    for (std::int64_t n = 1; n < g; ++n) {
      sum += term;
      term *= rot;
    }
    return sum;
  };
  cplx prod = edge(angle(0, length - 1)) * edge(angle(length - 1, 0));
  for (int i = 1; i <= length - 2 && prod != 0.0; ++i) prod *= phi_eval(g, angle(i, length - 1 - i));
  return prod;
}

// The inner sums T(k) = sum_h S_N(h/g^N) F_N(-h/g^N, k/q) for the surviving k.
struct RemainderKSums {
  Window window;
  std::int64_t q = 1;
  std::vector<std::int64_t> k_values;
  std::vector<cplx> t;  // indexed like k_values
};

inline RemainderKSums remainder_ksums(const Window& w, std::int64_t q, int threads = 0) {
  if (q < 1) throw std::domain_error("remainder_ksums: modulus must be >= 1");
  const std::int64_t gn = w.high();
  require_within_cap(gn, "remainder_ksums");
  RemainderKSums out;
  out.window = w;
  out.q = q;
  out.k_values = remainder_k_values(w, q);
  if (out.k_values.empty()) return out;

  std::vector<cplx> spec = S_spectrum(w.base, w.length);
  std::vector<std::int64_t> pow_gn(w.length), pow_q(w.length);
  for (int i = 0; i < w.length; ++i) {
    pow_gn[i] = i == 0 ? 1 % gn : pow_gn[i - 1] * w.base % gn;
    pow_q[i] = i == 0 ? 1 % q : pow_q[i - 1] * w.base % q;
  }

  for (std::int64_t k : out.k_values) {
    cplx t = chunked_sum<cplx>(gn, 4096, threads, [&](std::int64_t lo, std::int64_t hi) {
      cplx acc = 0.0;
      for (std::int64_t h = lo; h < hi; ++h)
        acc += spec[static_cast<std::size_t>(h)] *
               F_grid_point(w.base, w.length, gn, h, q, k, pow_gn, pow_q);
      return acc;
    });
    out.t.push_back(t);
  }
  return out;
}

// R_N(a, q) from precomputed k-sums: (1/(q g^N)) sum_k e(-ka/q) T(k).  The
// imaginary part must vanish (the census is real); anything past 1e-6 means a
// broken evaluation, not roundoff.
inline double remainder_from_ksums(const RemainderKSums& ks, std::int64_t a) {
  const std::int64_t gn = ks.window.high();
  a %= ks.q;
  if (a < 0) a += ks.q;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < ks.k_values.size(); ++i) {
    double x = -static_cast<double>(ks.k_values[i] * a % ks.q) / static_cast<double>(ks.q);
    sum += e_of(x) * ks.t[i];
  }
  sum /= static_cast<double>(ks.q) * static_cast<double>(gn);
  if (std::abs(sum.imag()) >= 1e-6)
    throw std::runtime_error("remainder: nonvanishing imaginary part");
  return sum.real();
}

inline double remainder_spectral(const Window& w, const Query& query, int threads = 0) {
  return remainder_from_ksums(remainder_ksums(w, query.q, threads), query.a);
}

// Major/minor split of the remainder in absolute value, plus the arc-count
// ratio against P^3 and the minor-arc envelope ratio.
struct ArcReport {
  double r_major = 0.0;
  double r_minor = 0.0;
  std::int64_t major_count = 0;
  std::int64_t minor_count = 0;
  double remainder = 0.0;       // signed spectral remainder for the query
  bool triangle_ok = false;     // |remainder| <= r_major + r_minor + 1e-6
  double major_p3_ratio = 0.0;  // #major / P^3
  double major_bound_ratio = 0.0;  // r_major / (g^N P^3), the measurable part of its envelope
  double minor_envelope_ratio = 0.0;
};

inline ArcReport arc_split_report(const ArcPartition& part, const Query& query, int threads = 0) {
  const Window& w = part.window;
  const std::int64_t gn = w.high();
  RemainderKSums ks = remainder_ksums(w, query.q, threads);

  double major_sum = 0.0, minor_sum = 0.0;
  if (!ks.k_values.empty()) {
    std::vector<cplx> spec = S_spectrum(w.base, w.length);
    std::vector<std::int64_t> pow_gn(w.length), pow_q(w.length);
    for (int i = 0; i < w.length; ++i) {
      pow_gn[i] = i == 0 ? 1 % gn : pow_gn[i - 1] * w.base % gn;
      pow_q[i] = i == 0 ? 1 % query.q : pow_q[i - 1] * w.base % query.q;
    }
    for (std::int64_t k : ks.k_values) {
      struct Two {
        double a = 0.0, b = 0.0;
        Two& operator+=(const Two& o) {
          a += o.a;
          b += o.b;
          return *this;
        }
      };
      Two split = chunked_sum<Two>(gn, 4096, threads, [&](std::int64_t lo, std::int64_t hi) {
        Two acc;
        for (std::int64_t h = lo; h < hi; ++h) {
          double v = std::abs(spec[static_cast<std::size_t>(h)]) *
                     std::abs(F_grid_point(w.base, w.length, gn, h, query.q, k, pow_gn, pow_q));
          if (part.points[static_cast<std::size_t>(h)].major)
            acc.a += v;
          else
            acc.b += v;
        }
        return acc;
      });
      major_sum += split.a;
      minor_sum += split.b;
    }
  }
  const double norm = static_cast<double>(query.q) * static_cast<double>(gn);

  ArcReport rep;
  rep.r_major = major_sum / norm;
  rep.r_minor = minor_sum / norm;
  rep.major_count = part.major_count;
  rep.minor_count = gn - part.major_count;
  rep.remainder = remainder_from_ksums(ks, query.a);
  rep.triangle_ok = std::abs(rep.remainder) <= rep.r_major + rep.r_minor + 1e-6;
  rep.major_p3_ratio =
      static_cast<double>(part.major_count) / std::pow(static_cast<double>(part.P), 3.0);
  rep.major_bound_ratio =
      rep.r_major /
      (static_cast<double>(gn) * std::pow(static_cast<double>(part.P), 3.0));
  // minor-arc envelope g^N (P^{2a-1/2} + g^{(a-1/5)N} + g^{aN} Q^{-1/2}) N^6
  {
    const double ag = static_cast<double>(alpha_g(w.base));
    const double gN = static_cast<double>(gn);
    const double n6 = std::pow(static_cast<double>(w.length), 6.0);
    const double env = gN *
                       (std::pow(static_cast<double>(part.P), 2.0 * ag - 0.5) +
                        std::pow(gN, ag - 0.2) + std::pow(gN, ag) / std::sqrt(static_cast<double>(part.Q))) *
                       n6;
    rep.minor_envelope_ratio = rep.r_minor / env;
  }
  return rep;
}

// Ratio rows |S_N(b/r + eta)| / envelope over a deterministic sample of
// dissection points.  envelope1 = (g^N r^-1/2 + g^{4N/5} + g^{N/2} r^1/2) N^4;
// envelope2 swaps r for r|eta| (only defined off the fraction itself).
inline std::vector<BoundCheck> sn_ratio_report(const Window& w, const ArcPartition& part,
                                               int max_rows, std::uint64_t seed) {
  const std::int64_t gn = w.high();
  require_within_cap(gn, "sn_ratio_report");
  std::vector<std::int64_t> primes = sieve_primes(2, gn);
  Rng rng(seed);

  std::vector<std::int64_t> picks;
  picks.push_back(0);  // the trivial row |S_N(0)| = pi(g^N - 1) is always present
  for (int i = 1; i < max_rows; ++i) picks.push_back(rng.uniform_int(0, gn - 1));
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

  const double n4 = std::pow(static_cast<double>(w.length), 4.0);
  const double gN = static_cast<double>(gn);
  const double g45 = std::pow(gN, 0.8);
  const double g12 = std::sqrt(gN);

  std::vector<BoundCheck> out;
  for (std::int64_t h : picks) {
    const FareyPoint& pt = part.points[static_cast<std::size_t>(h)];
    Freq f = Freq::of(h, gn);
    cplx s = 0.0;
    for (std::int64_t p : primes) s += e_of(f.scaled(p).to_double());
    double mag = std::abs(s);
    double r = static_cast<double>(pt.r);
    double env1 = (gN / std::sqrt(r) + g45 + g12 * std::sqrt(r)) * n4;
    out.push_back(BoundCheck::ratio("sn_pure",
                                    {{"h", static_cast<double>(h)},
                                     {"r", r},
                                     {"eta", pt.eta.to_double()}},
                                    mag, env1));
    if (!pt.eta.is_zero()) {
      double re = r * std::abs(pt.eta.to_double());
      double env2 = (g12 / std::sqrt(re) + g45 + gN * std::sqrt(re)) * n4;
      out.push_back(BoundCheck::ratio("sn_eta",
                                      {{"h", static_cast<double>(h)},
                                       {"r", r},
                                       {"eta", pt.eta.to_double()}},
                                      mag, env2));
    }
  }
  return out;
}

}  // namespace revprime
