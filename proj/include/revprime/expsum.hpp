#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "revprime/boundcheck.hpp"
#include "revprime/config.hpp"
#include "revprime/digits.hpp"
#include "revprime/fft.hpp"
#include "revprime/rational.hpp"
#include "revprime/sieve.hpp"

namespace revprime {

using cplx = std::complex<double>;

inline cplx e_of(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  return {std::cos(two_pi * x), std::sin(two_pi * x)};
}

inline double unit_dist(double x) {
  double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

// phi(alpha) = sum_{0 <= n < g} e(alpha n), by direct summation.
inline cplx phi(std::int64_t g, double alpha) {
  require_base(g);
  cplx sum = 0.0;
  for (std::int64_t n = 0; n < g; ++n) sum += e_of(alpha * static_cast<double>(n));
  return sum;
}

// Closed form phi(alpha) = e((g-1)alpha/2) sin(pi g alpha) / sin(pi alpha).
// Refuses the removable singularity at integer alpha; callers that may hit it
// use phi / phi_eval instead.
inline cplx phi_closed(std::int64_t g, double alpha) {
  require_base(g);
  if (alpha == std::floor(alpha))
    throw std::domain_error("phi_closed: integer alpha (removable singularity)");
  const double pi = std::numbers::pi;
  double s = std::sin(pi * alpha);
  if (s == 0.0) throw std::domain_error("phi_closed: integer alpha (removable singularity)");
  double ratio = std::sin(pi * static_cast<double>(g) * alpha) / s;
  return e_of(0.5 * static_cast<double>(g - 1) * alpha) * ratio;
}

// Evaluation path used by the products: closed form away from integers,
// direct summation inside the ||alpha|| < 1e-6 cutoff.
inline cplx phi_eval(std::int64_t g, double alpha) {
  if (unit_dist(alpha) < 1e-6) return phi(g, alpha);
  return phi_closed(g, alpha);
}

inline double phi_abs(std::int64_t g, double alpha) {
  if (unit_dist(alpha) < 1e-6) return std::abs(phi(g, alpha));
  const double pi = std::numbers::pi;
  return std::abs(std::sin(pi * static_cast<double>(g) * alpha) / std::sin(pi * alpha));
}

// d/dalpha phi = 2 pi i sum_{0 <= n < g} n e(alpha n).
inline cplx phi_deriv(std::int64_t g, double alpha) {
  require_base(g);
  cplx sum = 0.0;
  for (std::int64_t n = 1; n < g; ++n)
    sum += static_cast<double>(n) * e_of(alpha * static_cast<double>(n));
  const double two_pi = 2.0 * std::numbers::pi;
  return cplx(0.0, two_pi) * sum;
}

// Partial digit sum over u <= n < g, closed geometric form (u real in [0, g]).
// The frequency comes in as an exact rational so the endpoint angles g*alpha
// and n0*alpha are reduced mod 1 before they ever touch a double; for large
// bases the naive products would smear the angle by ~g*eps, which matters
// exactly when the geometric sum is near its extremal configuration.
inline cplx digit_partial_sum(std::int64_t g, double u, const Freq& alpha) {
  require_base(g);
  auto n0 = static_cast<std::int64_t>(std::ceil(u));
  if (n0 < 0) n0 = 0;
  if (n0 >= g) return 0.0;
  cplx den = e_of(alpha.to_double()) - 1.0;
  if (std::abs(den) < 1e-9) {  // alpha at (or hugging) an integer: all terms are ~1
    cplx sum = 0.0;
    for (std::int64_t n = n0; n < g; ++n) sum += e_of(alpha.scaled(n).to_double());
    return sum;
  }
  return (e_of(alpha.scaled(g).to_double()) - e_of(alpha.scaled(n0).to_double())) / den;
}

inline cplx digit_partial_sum(std::int64_t g, double u, double alpha) {
  return digit_partial_sum(g, u, Freq::from_double(alpha));
}

// Argument bundle for the bilinear sums.  Frequencies are exact rationals mod 1
// so that alpha g^i keeps full precision for any i; from_double embeds plain
// doubles on a 2^-62 grid.
struct ExpSumArgs {
  std::int64_t g = 10;
  int length = 3;  // N
  Freq alpha;
  Freq beta;

  ExpSumArgs() = default;
  ExpSumArgs(std::int64_t g_, int n_, Freq a_, Freq b_) : g(g_), length(n_), alpha(a_), beta(b_) {
    require_base(g_);
  }
  ExpSumArgs(std::int64_t g_, int n_, double a_, double b_)
      : ExpSumArgs(g_, n_, Freq::from_double(a_), Freq::from_double(b_)) {}
};

// Phi_N(alpha, beta) = prod_{i=1}^{N-2} phi(alpha g^i + beta g^{N-i-1}).
inline cplx Phi(const ExpSumArgs& args) {
  if (args.length < 3) throw std::domain_error("Phi: N must be >= 3");
  cplx prod = 1.0;
  for (int i = 1; i <= args.length - 2; ++i) {
    Freq angle = args.alpha.scaled_pow(args.g, i) + args.beta.scaled_pow(args.g, args.length - i - 1);
    prod *= phi_eval(args.g, angle.to_double());
  }
  return prod;
}

inline double Phi_abs(const ExpSumArgs& args) { return std::abs(Phi(args)); }

// d/dalpha Phi_N = sum_i g^i phi'(x_i) prod_{j != i} phi(x_j), assembled with
// prefix/suffix products so zero factors need no special casing.
inline cplx Phi_deriv_alpha(const ExpSumArgs& args) {
  const int m = args.length - 2;
  if (m < 1) throw std::domain_error("Phi_deriv_alpha: N must be >= 3");
  std::vector<cplx> val(m), dval(m);
  for (int i = 1; i <= m; ++i) {
    Freq angle = args.alpha.scaled_pow(args.g, i) + args.beta.scaled_pow(args.g, args.length - i - 1);
    double x = angle.to_double();
    val[i - 1] = phi_eval(args.g, x);
    dval[i - 1] = phi_deriv(args.g, x);
  }
  std::vector<cplx> prefix(m + 1, 1.0), suffix(m + 1, 1.0);
  for (int i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * val[i];
  for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * val[i];
  cplx sum = 0.0;
  double gpow = static_cast<double>(args.g);
  for (int i = 0; i < m; ++i) {
    sum += gpow * dval[i] * prefix[i] * suffix[i + 1];
    gpow *= static_cast<double>(args.g);
  }
  return sum;
}

// F_N(alpha, beta) = sum over the window of e(alpha n + beta reverse(n)),
// summed member by member.  The test oracle for the factored path.
inline cplx F_direct(const ExpSumArgs& args) {
  Window w(args.g, args.length);
  require_within_cap(w.high(), "F_direct");
  cplx sum = 0.0;
  for_each_member(w, [&](std::int64_t n) {
    Freq angle = args.alpha.scaled(n) + args.beta.scaled(digit_reverse(n, args.g));
    sum += e_of(angle.to_double());
  });
  return sum;
}

// Exact factorization of F_N for N >= 3: the two edge digits give short
// geometric sums (n_0, n_{N-1} nonzero), the middle digits give Phi_N.
inline cplx F_factored(const ExpSumArgs& args) {
  if (args.length < 3) throw std::domain_error("F_factored: N must be >= 3");
  Freq low_angle = args.alpha + args.beta.scaled_pow(args.g, args.length - 1);
  Freq high_angle = args.alpha.scaled_pow(args.g, args.length - 1) + args.beta;
  auto edge = [&](const Freq& f) {
    cplx s = 0.0;
    for (std::int64_t n = 1; n < args.g; ++n) s += e_of(f.scaled(n).to_double());
    return s;
  };
  return edge(low_angle) * edge(high_angle) * Phi(args);
}

// S_N(alpha) = sum over primes 1 <= p < g^N of e(alpha p), exact frequency.
inline cplx S(std::int64_t g, int length, const Freq& alpha) {
  Window w(g, length);
  require_within_cap(w.high(), "S");
  cplx sum = 0.0;
  for (std::int64_t p : sieve_primes(2, w.high())) sum += e_of(alpha.scaled(p).to_double());
  return sum;
}

inline cplx S(std::int64_t g, int length, double alpha) {
  return S(g, length, Freq::from_double(alpha));
}

// All of S_N(h / g^N) for h in [0, g^N) at once: the DFT of the prime
// indicator with kernel e(+ h p / g^N).  Memory guard is stricter than the
// enumeration cap because the spectrum holds 16 bytes per grid point.
inline std::vector<cplx> S_spectrum(std::int64_t g, int length) {
  Window w(g, length);
  const std::int64_t n = w.high();
  require_within_cap(n, "S_spectrum");
  if (n > (std::int64_t(1) << 24))
    throw std::length_error("S_spectrum: grid too large to hold in memory");
  std::vector<cplx> data(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  for (std::int64_t p : sieve_primes(2, n)) data[static_cast<std::size_t>(p)] = 1.0;
  PowRadixDft plan(n, g, +1);
  return plan.transform(data);
}

// Checks the split Phi_N(a,b) = Phi_M(a, g^{N-M} b) * Phi_{N-M+2}(g^{M-2} a, b)
// at one point; both sides are evaluated through independent argument paths.
inline BoundCheck break_half_check(std::int64_t g, int n, int m, const Freq& alpha,
                                   const Freq& beta) {
  if (!(3 <= m && m <= n - 1)) throw std::domain_error("break_half_check: need 3 <= M <= N-1");
  cplx whole = Phi(ExpSumArgs(g, n, alpha, beta));
  cplx left = Phi(ExpSumArgs(g, m, alpha, beta.scaled_pow(g, n - m)));
  cplx right = Phi(ExpSumArgs(g, n - m + 2, alpha.scaled_pow(g, m - 2), beta));
  cplx split = left * right;
  double diff = std::abs(whole - split);
  double scale = std::max(std::abs(whole), std::abs(split));
  // admissible deviation: 1e-9 relative with a tiny absolute floor
  return BoundCheck::exact("break_half",
                           {{"g", static_cast<double>(g)},
                            {"N", static_cast<double>(n)},
                            {"M", static_cast<double>(m)},
                            {"alpha", alpha.to_double()},
                            {"beta", beta.to_double()}},
                           diff, 1e-9 * scale, 1e-12);
}

}  // namespace revprime
